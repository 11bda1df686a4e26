#pragma once

// Construction of D(a,b;q) = [a_1]!...[a_r]! / ([b_1]!...[b_s]!) by two
// independent routes: a product of cyclotomic powers, and literal q-factorial
// division. The ratio route never touches cyclotomic polynomials, so agreement
// of the two is a genuine cross-check.

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrious/landau.hpp"
#include "qrious/polycore.hpp"

namespace qrious {

class NegativeExponent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class BuildMethod { cyclotomic, ratio };

/// Multiplies factors smallest-degree first (ties by position), which keeps
/// intermediate products balanced for the Karatsuba split.
inline Poly multiply_all(std::vector<Poly> factors) {
  if (factors.empty()) return Poly::constant(1);
  using Item = std::pair<std::size_t, std::size_t>;  // (size, slot)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t i = 0; i < factors.size(); ++i) heap.emplace(factors[i].size(), i);
  while (heap.size() > 1) {
    const auto [s1, i] = heap.top();
    heap.pop();
    const auto [s2, j] = heap.top();
    heap.pop();
    factors[i] = poly_mul(factors[i], factors[j]);
    factors[j] = Poly{};
    heap.emplace(factors[i].size(), i);
  }
  return std::move(factors[heap.top().second]);
}

/// prod_{d >= 2} Phi_d^{e_d}; factors are taken in increasing d.
inline Poly build_cyclotomic(const FactorialPair& p) {
  const auto exps = exponent_vector(p);
  std::vector<Poly> factors;
  factors.reserve(exps.size());
  for (const auto& [d, e] : exps) {
    if (e < 0)
      throw NegativeExponent("build_cyclotomic: Phi_" + std::to_string(d) + " has exponent " + std::to_string(e) +
                             " in " + to_string(p));
    factors.push_back(poly_pow(cyclotomic(static_cast<std::uint64_t>(d)), static_cast<std::uint64_t>(e)));
  }
  return multiply_all(std::move(factors));
}

/// Numerator q-factorials multiplied out, then divided exactly by every q-number
/// [j] of every denominator factorial. Throws NonExactDivision when D is not in Z[q].
inline Poly build_ratio(const FactorialPair& p) {
  std::vector<Poly> num;
  num.reserve(p.numerator().size());
  for (Entry a : p.numerator()) num.push_back(q_factorial(static_cast<std::size_t>(a)));
  Poly acc = multiply_all(std::move(num));
  for (Entry b : p.denominator())
    for (Entry j = b; j >= 2; --j) acc = div_q_number_exact(acc, static_cast<std::size_t>(j));
  return acc;
}

inline Poly build(const FactorialPair& p, BuildMethod method = BuildMethod::cyclotomic) {
  return method == BuildMethod::cyclotomic ? build_cyclotomic(p) : build_ratio(p);
}

/// The dilation (a n, b n), whose D is D_n(a,b;q).
inline FactorialPair scale(const FactorialPair& p, Entry n) {
  if (n < 1) throw DomainViolation("scale: n must be >= 1");
  std::vector<Entry> a = p.numerator(), b = p.denominator();
  for (Entry& x : a) x *= n;
  for (Entry& x : b) x *= n;
  return {std::move(a), std::move(b)};
}

}  // namespace qrious
