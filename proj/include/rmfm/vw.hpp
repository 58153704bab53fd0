#pragma once

#include <cstdint>
#include <vector>

#include "rmfm/arith.hpp"

// Constructive factorizations of tuples with square (triangular array) or
// equal (rectangular array) products, following the inductive proofs.

namespace rmfm::vw {

using u64 = arith::u64;

// Upper-triangular array b_{rs}, 1 <= r <= s <= l, stored row-major.
// b_star(r) = (b_{1r}...b_{rr})(b_{rr}...b_{rl}) reconstructs nu_r.
struct TriangularArray {
  int size = 0;
  std::vector<u64> entries;  // row r, cols r..l

  u64& at(int r, int s);
  u64 at(int r, int s) const;
  u64 b_star(int r) const;
};

// j x k array of positive integers with row products m_r and column
// products n_s.
struct RectArray {
  int rows = 0;
  int cols = 0;
  std::vector<u64> entries;

  u64& at(int r, int s) { return entries[static_cast<std::size_t>(r) * cols + s]; }
  u64 at(int r, int s) const { return entries[static_cast<std::size_t>(r) * cols + s]; }
  u64 row_product(int r) const;
  u64 col_product(int s) const;
};

// Given nu_1..nu_l with square product, returns a triangular array with
// b_rr^2 = sq(nu_r) and b_star(r) = nu_r. Deterministic: residual kernel
// mass is moved to the lexicographically smallest pair (u, v) with
// gcd(kernel_u, kernel_v) > 1, using the full gcd each step.
TriangularArray triangular_factorize(const std::vector<u64>& nu);

// Given m_1..m_j and n_1..n_k with equal products, returns a j x k array
// whose row products are m and column products are n. Per prime, exponent
// demands are allocated by the northwest-corner transportation rule.
RectArray rectangular_factorize(const std::vector<u64>& m, const std::vector<u64>& n);

}  // namespace rmfm::vw
