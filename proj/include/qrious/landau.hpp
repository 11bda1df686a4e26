#pragma once

// The pair (a, b) of a q-factorial ratio and its structural predicates:
// Landau's floor-sum criterion with witnesses, balancing, gcd reduction,
// height, weight gap, degree and the cyclotomic exponent vector.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrious {

using Entry = std::int64_t;

class DomainViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NegativeGap : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerator tuple a and denominator tuple b, each kept sorted in
/// non-increasing order so equality is multiset equality.
class FactorialPair {
 public:
  FactorialPair() = default;
  FactorialPair(std::vector<Entry> a, std::vector<Entry> b) : a_(std::move(a)), b_(std::move(b)) {
    for (Entry x : a_)
      if (x <= 0) throw DomainViolation("factorial pair entries must be positive");
    for (Entry x : b_)
      if (x <= 0) throw DomainViolation("factorial pair entries must be positive");
    std::sort(a_.begin(), a_.end(), std::greater<>());
    std::sort(b_.begin(), b_.end(), std::greater<>());
  }

  /// Drops zero entries first ([0]! = 1); negative entries still throw.
  static FactorialPair dropping_zeros(std::vector<Entry> a, std::vector<Entry> b) {
    std::erase(a, 0);
    std::erase(b, 0);
    return {std::move(a), std::move(b)};
  }

  const std::vector<Entry>& numerator() const noexcept { return a_; }
  const std::vector<Entry>& denominator() const noexcept { return b_; }

  Entry max_entry() const noexcept {
    Entry m = 0;
    if (!a_.empty()) m = std::max(m, a_.front());
    if (!b_.empty()) m = std::max(m, b_.front());
    return m;
  }

  friend bool operator==(const FactorialPair&, const FactorialPair&) = default;
  friend auto operator<=>(const FactorialPair&, const FactorialPair&) = default;

 private:
  std::vector<Entry> a_;
  std::vector<Entry> b_;
};

namespace detail {

inline std::vector<Entry> parse_entry_list(std::string_view s, std::string_view whole) {
  std::vector<Entry> out;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && is_space(s[i])) ++i;
  };
  skip();
  if (i == s.size()) return out;
  while (true) {
    skip();
    Entry v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + i)
      throw ParseError("malformed pair '" + std::string(whole) + "': expected an integer");
    if (v <= 0) throw ParseError("malformed pair '" + std::string(whole) + "': entries must be positive");
    out.push_back(v);
    i = static_cast<std::size_t>(ptr - s.data());
    skip();
    if (i == s.size()) break;
    if (s[i] != ',') throw ParseError("malformed pair '" + std::string(whole) + "': expected ','");
    ++i;
  }
  return out;
}

}  // namespace detail

/// Parses "a1,a2,.../b1,b2,..." (whitespace allowed; either side may be empty).
inline FactorialPair parse_pair(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || text.find('/', slash + 1) != std::string_view::npos)
    throw ParseError("malformed pair '" + std::string(text) + "': expected exactly one '/'");
  return {detail::parse_entry_list(text.substr(0, slash), text),
          detail::parse_entry_list(text.substr(slash + 1), text)};
}

inline std::string to_string(const FactorialPair& p) {
  std::string out;
  auto put = [&out](const std::vector<Entry>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(v[i]);
    }
  };
  put(p.numerator());
  out += '/';
  put(p.denominator());
  return out;
}

/// |a| - |b|
inline Entry weight_gap(const FactorialPair& p) {
  const auto& a = p.numerator();
  const auto& b = p.denominator();
  return std::accumulate(a.begin(), a.end(), Entry{0}) - std::accumulate(b.begin(), b.end(), Entry{0});
}

/// s - r
inline Entry height(const FactorialPair& p) {
  return static_cast<Entry>(p.denominator().size()) - static_cast<Entry>(p.numerator().size());
}

/// sum C(a_i,2) - sum C(b_j,2); the degree of D(a,b;q) whenever it is a polynomial.
inline Entry degree(const FactorialPair& p) {
  Entry k = 0;
  for (Entry x : p.numerator()) k += x * (x - 1) / 2;
  for (Entry x : p.denominator()) k -= x * (x - 1) / 2;
  return k;
}

/// Appends weight_gap copies of 1 to b. D is unchanged since [1]! = 1.
inline FactorialPair balance(const FactorialPair& p) {
  const Entry gap = weight_gap(p);
  if (gap < 0) throw NegativeGap("balance: |a| < |b| (gap " + std::to_string(gap) + ")");
  std::vector<Entry> b = p.denominator();
  b.insert(b.end(), static_cast<std::size_t>(gap), Entry{1});
  return {p.numerator(), std::move(b)};
}

inline Entry pair_gcd(const FactorialPair& p) {
  Entry g = 0;
  for (Entry x : p.numerator()) g = std::gcd(g, x);
  for (Entry x : p.denominator()) g = std::gcd(g, x);
  return g;
}

/// Divides every entry by the gcd of all entries.
inline FactorialPair reduce(const FactorialPair& p) {
  const Entry g = pair_gcd(p);
  if (g <= 1) return p;
  std::vector<Entry> a = p.numerator(), b = p.denominator();
  for (Entry& x : a) x /= g;
  for (Entry& x : b) x /= g;
  return {std::move(a), std::move(b)};
}

/// Nonzero exponents e_d = sum floor(a_i/d) - sum floor(b_j/d), d >= 2, so that
/// D(a,b;q) = prod_d Phi_d^{e_d}.
inline std::map<Entry, Entry> exponent_vector(const FactorialPair& p) {
  std::map<Entry, Entry> out;
  const Entry top = p.max_entry();
  for (Entry d = 2; d <= top; ++d) {
    Entry e = 0;
    for (Entry x : p.numerator()) e += x / d;
    for (Entry x : p.denominator()) e -= x / d;
    if (e != 0) out.emplace(d, e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Landau's criterion

/// Nonnegative rational num/den in lowest terms.
struct Fraction {
  Entry num = 0;
  Entry den = 1;

  static Fraction reduced(Entry num, Entry den) {
    const Entry g = std::gcd(num, den);
    return g > 1 ? Fraction{num / g, den / g} : Fraction{num, den};
  }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& x, const Fraction& y) {
    return static_cast<__int128>(x.num) * y.den <=> static_cast<__int128>(y.num) * x.den;
  }
};

inline std::string to_string(const Fraction& f) {
  return f.den == 1 ? std::to_string(f.num) : std::to_string(f.num) + "/" + std::to_string(f.den);
}

/// sum floor(a_i x) - sum floor(b_j x) evaluated exactly.
inline Entry floor_sum(const FactorialPair& p, const Fraction& x) {
  auto fl = [&x](Entry v) {
    const __int128 t = static_cast<__int128>(v) * x.num;
    return static_cast<Entry>(t / x.den);  // x >= 0, so truncation is floor
  };
  Entry s = 0;
  for (Entry v : p.numerator()) s += fl(v);
  for (Entry v : p.denominator()) s -= fl(v);
  return s;
}

struct LandauVerdict {
  bool holds = true;
  std::optional<Fraction> witness;  // present iff !holds
  Entry value = 0;                  // floor-sum at the witness (minimum found when holds)
};

/// Decides sum floor(a_i x) - sum floor(b_j x) >= 0 for all x >= 0.
///
/// Unbalanced pairs with |a| < |b| fail at x = 1. Otherwise the balanced
/// extension is 1-periodic and agrees with the original on [0,1), so it is
/// enough to evaluate at every breakpoint t/v in [0,1), scanned in increasing
/// order; the first negative value is the witness.
inline LandauVerdict check_landau(const FactorialPair& p) {
  const Entry gap = weight_gap(p);
  if (gap < 0) return {false, Fraction{1, 1}, floor_sum(p, Fraction{1, 1})};

  const FactorialPair bal = balance(p);
  std::vector<Entry> moduli = bal.numerator();
  moduli.insert(moduli.end(), bal.denominator().begin(), bal.denominator().end());
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());

  std::vector<Fraction> points;
  for (Entry v : moduli)
    for (Entry t = 0; t < v; ++t) points.push_back(t == 0 ? Fraction{0, 1} : Fraction::reduced(t, v));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  LandauVerdict verdict;
  for (const Fraction& x : points) {
    const Entry v = floor_sum(bal, x);
    if (v < 0) return {false, x, floor_sum(p, x)};
    verdict.value = std::min(verdict.value, v);
  }
  return verdict;
}

}  // namespace qrious
