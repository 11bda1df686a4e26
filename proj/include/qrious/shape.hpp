#pragma once

// Coefficient-profile checks: positivity, palindromy, unimodality, parity
// unimodality and unimodality of (1+q)P. Every failed check reports the least
// exponent at which its defining inequality breaks.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrious/polycore.hpp"

namespace qrious {

class RouteDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ShapeInvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Verdict {
  bool holds = true;
  std::optional<std::size_t> first_violation;

  static Verdict pass() { return {}; }
  static Verdict fail(std::size_t at) { return {false, at}; }
  explicit operator bool() const noexcept { return holds; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

namespace detail {

// Weakly rises to a peak, then weakly falls. On failure, reports the index just
// before the first rise that follows a fall (the bottom of the first dip).
template <class Seq>
Verdict unimodal_sequence(const Seq& c) {
  bool falling = false;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const int cmp = ::cmp(c[i], c[i - 1]);
    if (cmp < 0)
      falling = true;
    else if (cmp > 0 && falling)
      return Verdict::fail(i - 1);
  }
  return Verdict::pass();
}

inline std::vector<mpz_class> stride(const Poly& p, std::size_t start) {
  std::vector<mpz_class> out;
  for (std::size_t i = start; i < p.size(); i += 2) out.push_back(p[i]);
  return out;
}

}  // namespace detail

inline Verdict check_positive(const Poly& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (sgn(p[i]) < 0) return Verdict::fail(i);
  return Verdict::pass();
}

inline Verdict check_palindromic(const Poly& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    if (p[i] != p[n - 1 - i]) return Verdict::fail(i);
  return Verdict::pass();
}

inline Verdict check_unimodal(const Poly& p) { return detail::unimodal_sequence(p.coeffs()); }

/// Even-indexed and odd-indexed coefficient subsequences are each unimodal.
inline Verdict check_parity_unimodal(const Poly& p) {
  const Verdict even = detail::unimodal_sequence(detail::stride(p, 0));
  const Verdict odd = detail::unimodal_sequence(detail::stride(p, 1));
  std::optional<std::size_t> at;
  if (!even) at = 2 * *even.first_violation;
  if (!odd) {
    const std::size_t o = 2 * *odd.first_violation + 1;
    at = at ? std::min(*at, o) : o;
  }
  return at ? Verdict::fail(*at) : Verdict::pass();
}

/// Interleaving criterion for palindromic P of degree K: (1+q)P is unimodal
/// iff c_i >= c_{i-2} for 1 <= i <= M (with c_{-1} = 0), where M = K/2 for
/// even K and M = (K+1)/2 for odd K. Equivalently the chains
///   c_0 <= c_2 <= ... <= c_{2 floor(M/2)}   and   0 <= c_1 <= c_3 <= ... <= c_{2 ceil(M/2) - 1}.
/// Precondition: p is palindromic.
inline bool interleaving_condition(const Poly& p) {
  if (p.is_zero()) return true;
  const auto k = static_cast<std::size_t>(p.degree());
  const std::size_t m = (k % 2 == 0) ? k / 2 : (k + 1) / 2;
  for (std::size_t i = 1; i <= m; ++i) {
    const mpz_class& prev = (i >= 2) ? p[i - 2] : p[k + 1];  // p[k+1] is zero, standing in for c_{-1}
    if (p[i] < prev) return false;
  }
  return true;
}

/// Unimodality of (1+q)P. For palindromic P the interleaving criterion is
/// evaluated as a second route; a mismatch throws RouteDisagreement.
inline Verdict check_one_plus_q_unimodal(const Poly& p) {
  const Poly q = mul_q_number(p, 2);
  const Verdict v = check_unimodal(q);
  if (check_palindromic(p) && interleaving_condition(p) != v.holds)
    throw RouteDisagreement("(1+q)P unimodality: multiplication and interleaving routes disagree for " + to_string(p));
  return v;
}

struct ShapeReport {
  Verdict palindromic;
  Verdict positive;
  Verdict unimodal;
  Verdict parity_unimodal;
  Verdict one_plus_q_unimodal;
};

inline ShapeReport analyze(const Poly& p) {
  ShapeReport r{check_palindromic(p), check_positive(p), check_unimodal(p), check_parity_unimodal(p),
                check_one_plus_q_unimodal(p)};
  // Unimodality passes to every subsequence.
  if (r.unimodal.holds && !r.parity_unimodal.holds)
    throw ShapeInvariantViolation("unimodal polynomial reported as not parity unimodal");
  // For palindromic P with c_0 >= 0, the interleaving chains force c_i >= 0.
  if (r.palindromic.holds && sgn(p[0]) >= 0 && r.one_plus_q_unimodal.holds && !r.positive.holds)
    throw ShapeInvariantViolation("(1+q)P unimodal but P not positive");
  return r;
}

}  // namespace qrious
