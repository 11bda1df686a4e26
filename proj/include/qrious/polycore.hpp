#pragma once

// Dense univariate polynomials over the integers with GMP coefficients,
// together with the q-number building blocks used everywhere else:
// [n], [n]!, Gaussian binomials and cyclotomic polynomials.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qrious {

class NonExactDivision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense polynomial, coefficient of q^i at index i. The zero polynomial has
/// no coefficients; otherwise the leading coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Poly constant(long v) { return Poly{v}; }
  /// c * q^k
  static Poly monomial(std::size_t k, long c = 1) {
    std::vector<mpz_class> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(c_.size()) - 1; }
  std::size_t size() const noexcept { return c_.size(); }
  const std::vector<mpz_class>& coeffs() const noexcept { return c_; }

  /// Coefficient of q^i; zero beyond the degree.
  const mpz_class& operator[](std::size_t i) const noexcept {
    static const mpz_class zero{0};
    return i < c_.size() ? c_[i] : zero;
  }

  /// Value at q = 1.
  mpz_class at_one() const {
    mpz_class s = 0;
    for (const auto& x : c_) s += x;
    return s;
  }

  /// q^k * p
  Poly shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<mpz_class> v(k + c_.size());
    std::copy(c_.begin(), c_.end(), v.begin() + static_cast<std::ptrdiff_t>(k));
    return Poly(std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<mpz_class> c_;
};

inline std::string to_string(const Poly& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += p[i].get_str();
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Multiplication

/// Operand length (in terms) below which schoolbook convolution is used.
inline std::size_t karatsuba_threshold = 64;

namespace detail {

using CoeffSpan = std::span<const mpz_class>;

inline void schoolbook_acc(CoeffSpan a, CoeffSpan b, std::span<mpz_class> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    const mpz_srcptr ai = a[i].get_mpz_t();
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
  }
}

inline std::vector<mpz_class> add_spans(CoeffSpan a, CoeffSpan b) {
  std::vector<mpz_class> s(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) s[i] += b[i];
  return s;
}

// out[0 .. a.size()+b.size()-1) += a*b
inline void karatsuba_acc(CoeffSpan a, CoeffSpan b, std::span<mpz_class> out) {
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t n = a.size(), m = b.size();
  if (m == 0) return;
  if (m < karatsuba_threshold) {
    schoolbook_acc(a, b, out);
    return;
  }
  if (2 * m <= n) {
    // Unbalanced: slice the long operand into blocks of the short one's length.
    for (std::size_t off = 0; off < n; off += m) {
      const std::size_t len = std::min(m, n - off);
      karatsuba_acc(a.subspan(off, len), b, out.subspan(off));
    }
    return;
  }
  const std::size_t h = (n + 1) / 2;  // m >= h here
  CoeffSpan a0 = a.first(h), a1 = a.subspan(h);
  CoeffSpan b0 = b.first(h), b1 = b.subspan(h);

  std::vector<mpz_class> z0(2 * h - 1), z2(b1.empty() ? 0 : a1.size() + b1.size() - 1);
  karatsuba_acc(a0, b0, z0);
  if (!b1.empty()) karatsuba_acc(a1, b1, z2);

  const auto sa = add_spans(a0, a1);
  const auto sb = add_spans(b0, b1);
  std::vector<mpz_class> z1(sa.size() + sb.size() - 1);
  karatsuba_acc(sa, sb, z1);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z1.size() && h + i < out.size(); ++i) out[h + i] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] += z2[i];
}

}  // namespace detail

inline Poly poly_mul(const Poly& p, const Poly& r) {
  if (p.is_zero() || r.is_zero()) return {};
  std::vector<mpz_class> out(p.size() + r.size() - 1);
  detail::karatsuba_acc(p.coeffs(), r.coeffs(), out);
  return Poly(std::move(out));
}

inline Poly operator*(const Poly& p, const Poly& r) { return poly_mul(p, r); }

/// Reference convolution with no splitting; kept for cross-checking poly_mul.
inline Poly poly_mul_schoolbook(const Poly& p, const Poly& r) {
  if (p.is_zero() || r.is_zero()) return {};
  std::vector<mpz_class> out(p.size() + r.size() - 1);
  detail::schoolbook_acc(p.coeffs(), r.coeffs(), out);
  return Poly(std::move(out));
}

inline Poly poly_pow(Poly base, std::uint64_t e) {
  Poly acc = Poly::constant(1);
  while (e) {
    if (e & 1) acc = poly_mul(acc, base);
    e >>= 1;
    if (e) base = poly_mul(base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Division

/// Returns s with p = r*s, throwing NonExactDivision otherwise.
inline Poly poly_exact_div(const Poly& p, const Poly& r) {
  if (r.is_zero()) throw std::invalid_argument("poly_exact_div: division by the zero polynomial");
  if (p.is_zero()) return {};
  if (p.degree() < r.degree()) throw NonExactDivision("poly_exact_div: divisor degree exceeds dividend degree");

  std::vector<mpz_class> rem(p.coeffs());
  const auto& rc = r.coeffs();
  const std::size_t dr = rc.size() - 1;
  const mpz_class& lead = rc.back();
  std::vector<mpz_class> quot(rem.size() - dr);
  mpz_class t;
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpz_class& top = rem[k + dr];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
      throw NonExactDivision("poly_exact_div: non-integer quotient coefficient at q^" + std::to_string(k));
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    for (std::size_t j = 0; j < dr; ++j) mpz_submul(rem[k + j].get_mpz_t(), t.get_mpz_t(), rc[j].get_mpz_t());
    top = 0;
    quot[k] = t;
  }
  for (std::size_t i = 0; i < dr; ++i)
    if (sgn(rem[i]) != 0) throw NonExactDivision("poly_exact_div: nonzero remainder at q^" + std::to_string(i));
  return Poly(std::move(quot));
}

// ---------------------------------------------------------------------------
// q-numbers

/// [n] = 1 + q + ... + q^{n-1}; [0] = 0.
inline Poly q_number(std::size_t n) { return Poly(std::vector<mpz_class>(n, mpz_class(1))); }

/// p * [j] in linear time (sliding window over p's coefficients).
inline Poly mul_q_number(const Poly& p, std::size_t j) {
  if (j == 0 || p.is_zero()) return {};
  const auto& c = p.coeffs();
  std::vector<mpz_class> out(c.size() + j - 1);
  mpz_class window = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < c.size()) window += c[i];
    if (i >= j) window -= c[i - j];
    out[i] = window;
  }
  return Poly(std::move(out));
}

/// p / [j] in linear time; throws NonExactDivision when [j] does not divide p.
inline Poly div_q_number_exact(const Poly& p, std::size_t j) {
  if (j == 0) throw std::invalid_argument("div_q_number_exact: [0] = 0");
  if (p.is_zero()) return {};
  const auto& c = p.coeffs();
  if (c.size() < j) throw NonExactDivision("div_q_number_exact: degree too small for [" + std::to_string(j) + "]");
  // s_i = c_i - (s_{i-1} + ... + s_{i-j+1})
  const std::size_t qs = c.size() - (j - 1);
  std::vector<mpz_class> s(qs);
  mpz_class window = 0;  // sum of the last j-1 quotient coefficients
  for (std::size_t i = 0; i < qs; ++i) {
    s[i] = c[i] - window;
    window += s[i];
    if (i + 1 >= j) window -= s[i + 1 - j];
  }
  // The remaining coefficients of p must match the top of s*[j].
  for (std::size_t i = qs; i < c.size(); ++i) {
    if (c[i] != window)
      throw NonExactDivision("div_q_number_exact: [" + std::to_string(j) + "] leaves a remainder at q^" + std::to_string(i));
    if (i + 1 >= j) window -= s[i + 1 - j];
  }
  return Poly(std::move(s));
}

/// [n]! = [1][2]...[n]; [0]! = 1.
inline Poly q_factorial(std::size_t n) {
  Poly p = Poly::constant(1);
  for (std::size_t j = 2; j <= n; ++j) p = mul_q_number(p, j);
  return p;
}

/// [m+n]! / ([m]! [n]!), the generating function of partitions in an m x n box.
inline Poly gauss_binomial(std::size_t m, std::size_t n) {
  return poly_exact_div(q_factorial(m + n), poly_mul(q_factorial(m), q_factorial(n)));
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

namespace detail {

struct CyclotomicCache {
  std::shared_mutex mu;
  std::map<std::uint64_t, Poly> table;  // node-based: references stay valid
};

inline CyclotomicCache& cyclotomic_cache() {
  static CyclotomicCache cache;
  return cache;
}

}  // namespace detail

/// Phi_d, obtained as (q^d - 1) / prod_{e | d, e < d} Phi_e. Memoized; entries
/// are never modified once inserted, so returned references stay valid.
inline const Poly& cyclotomic(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("cyclotomic: d must be positive");
  auto& cache = detail::cyclotomic_cache();
  {
    std::shared_lock lock(cache.mu);
    if (auto it = cache.table.find(d); it != cache.table.end()) return it->second;
  }
  Poly value;
  if (d == 1) {
    value = Poly{-1, 1};
  } else {
    Poly divisor = Poly::constant(1);
    for (std::uint64_t e = 1; e < d; ++e)
      if (d % e == 0) divisor = poly_mul(divisor, cyclotomic(e));
    Poly qd = Poly::monomial(d) - Poly::constant(1);
    value = poly_exact_div(qd, divisor);
  }
  std::unique_lock lock(cache.mu);
  // A concurrent builder may have inserted the same (identical) value first.
  return cache.table.try_emplace(d, std::move(value)).first->second;
}

// ---------------------------------------------------------------------------
// Serialization: JSON array of decimal strings, ascending exponent.

inline nlohmann::json to_json(const Poly& p) {
  auto arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
  return arr;
}

inline Poly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
  std::vector<mpz_class> v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_string()) {
      mpz_class x;
      if (x.set_str(e.get<std::string>(), 10) != 0)
        throw std::invalid_argument("bad decimal coefficient: " + e.get<std::string>());
      v.push_back(std::move(x));
    } else if (e.is_number_integer()) {
      v.emplace_back(e.get<long>());
    } else {
      throw std::invalid_argument("polynomial coefficients must be decimal strings");
    }
  }
  return Poly(std::move(v));
}

/// Bit length of the largest |coefficient|.
inline std::size_t max_coeff_bits(const Poly& p) {
  std::size_t bits = 0;
  for (const auto& c : p.coeffs())
    if (sgn(c) != 0) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return bits;
}

}  // namespace qrious
