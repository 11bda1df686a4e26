#pragma once

// Exact identity checks: Pascal's rule for Gaussian binomials, the three-term
// recursion for B(m,n;q), and the q-Dixon summation.

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "qrious/dfact.hpp"
#include "qrious/families.hpp"
#include "qrious/polycore.hpp"

namespace qrious {

/// qbin(N, j) = [N]! / ([j]! [N-j]!); zero outside 0 <= j <= N.
inline Poly qbin(Entry top, Entry j) {
  if (top < 0 || j < 0 || j > top) return {};
  return gauss_binomial(static_cast<std::size_t>(j), static_cast<std::size_t>(top - j));
}

/// qbin(m+n, m) = qbin(m+n-1, m-1) + q^m qbin(m+n-1, m)
inline bool check_pascal(Entry m, Entry n) {
  if (m < 1 || n < 1) throw DomainViolation("check_pascal: m, n >= 1");
  const Poly lhs = qbin(m + n, m);
  const Poly rhs = qbin(m + n - 1, m - 1) + qbin(m + n - 1, m).shifted(static_cast<std::size_t>(m));
  return lhs == rhs;
}

/// B(m,n;q) with the boundary values B(m,0) = qbin(2m,m) and B(m,m) = 1.
inline Poly b_polynomial(Entry m, Entry n) {
  if (n == 0) return qbin(2 * m, m);
  if (n == m) return Poly::constant(1);
  return build_ratio(b_pair(m, n));
}

/// B(m,n) = q^{2m-2n} B(m-1,n-1) + (1 + q^m + q^{m-n} + q^{2m+n-1}) B(m-1,n)
inline bool check_b_recursion(Entry m, Entry n) {
  if (n < 1 || n >= m) throw DomainViolation("check_b_recursion: requires 1 <= n < m");
  const auto um = static_cast<std::size_t>(m), un = static_cast<std::size_t>(n);
  const Poly mult = Poly::constant(1) + Poly::monomial(um) + Poly::monomial(um - un) + Poly::monomial(2 * um + un - 1);
  const Poly rhs = b_polynomial(m - 1, n - 1).shifted(2 * um - 2 * un) + poly_mul(mult, b_polynomial(m - 1, n));
  return b_polynomial(m, n) == rhs;
}

/// sum_k (-1)^k q^{k(3k-1)/2} qbin(2l,l+k) qbin(2m,m+k) qbin(2n,n+k)
inline Poly qdixon_rhs(Entry l, Entry m, Entry n) {
  if (l < 0 || m < 0 || n < 0) throw DomainViolation("qdixon_rhs: parameters must be nonnegative");
  const Entry r = std::min({l, m, n});
  Poly sum;
  for (Entry k = -r; k <= r; ++k) {
    const Entry e = k * (3 * k - 1) / 2;
    if (e < 0) throw std::logic_error("qdixon_rhs: negative exponent");  // k(3k-1)/2 >= 0 for integer k
    Poly term = poly_mul(poly_mul(qbin(2 * l, l + k), qbin(2 * m, m + k)), qbin(2 * n, n + k)).shifted(static_cast<std::size_t>(e));
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

inline bool check_qdixon(Entry l, Entry m, Entry n) { return qdixon_rhs(l, m, n) == build_ratio(dixon_pair(l, m, n)); }

}  // namespace qrious
