#include "rmfm/vw.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rmfm::vw {

namespace {

std::size_t tri_index(int r, int s, int l) {
  // row r occupies cols r..l; offset of row r is sum of previous row lengths.
  std::size_t off = 0;
  for (int i = 1; i < r; ++i) off += static_cast<std::size_t>(l - i + 1);
  return off + static_cast<std::size_t>(s - r);
}

u64 isqrt_exact(u64 v) {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

u64& TriangularArray::at(int r, int s) { return entries[tri_index(r, s, size)]; }
u64 TriangularArray::at(int r, int s) const { return entries[tri_index(r, s, size)]; }

u64 TriangularArray::b_star(int r) const {
  u64 prod = 1;
  for (int i = 1; i <= r; ++i) prod = arith::checked_mul_u64(prod, at(i, r));
  for (int s = r; s <= size; ++s) prod = arith::checked_mul_u64(prod, at(r, s));
  // b_rr appears in both row and column, as the definition requires.
  return prod;
}

u64 RectArray::row_product(int r) const {
  u64 prod = 1;
  for (int s = 0; s < cols; ++s) prod = arith::checked_mul_u64(prod, at(r, s));
  return prod;
}

u64 RectArray::col_product(int s) const {
  u64 prod = 1;
  for (int r = 0; r < rows; ++r) prod = arith::checked_mul_u64(prod, at(r, s));
  return prod;
}

TriangularArray triangular_factorize(const std::vector<u64>& nu) {
  const int l = static_cast<int>(nu.size());
  if (l == 0) throw std::invalid_argument("triangular_factorize: empty input");

  std::vector<u64> kernel(nu.size());
  TriangularArray b;
  b.size = l;
  b.entries.assign(static_cast<std::size_t>(l) * (l + 1) / 2, 1);
  for (int r = 1; r <= l; ++r) {
    auto f = arith::factorize_trial(nu[static_cast<std::size_t>(r - 1)]);
    kernel[static_cast<std::size_t>(r - 1)] = arith::squarefree_kernel(f);
    b.at(r, r) = isqrt_exact(arith::sq(f));
  }

  // The kernel product must itself be a square for the loop to terminate.
  {
    u64 running = 1;
    for (u64 k : kernel) running = arith::kernel_combine(running, k);
    if (running != 1)
      throw std::invalid_argument("triangular_factorize: product is not a square (kernel " +
                                  std::to_string(running) + ")");
  }

  // Move common kernel mass into off-diagonal cells until all residuals are 1.
  while (true) {
    bool moved = false;
    for (int u = 1; u <= l && !moved; ++u) {
      if (kernel[static_cast<std::size_t>(u - 1)] == 1) continue;
      for (int v = u + 1; v <= l && !moved; ++v) {
        u64 c = std::gcd(kernel[static_cast<std::size_t>(u - 1)],
                         kernel[static_cast<std::size_t>(v - 1)]);
        if (c > 1) {
          kernel[static_cast<std::size_t>(u - 1)] /= c;
          kernel[static_cast<std::size_t>(v - 1)] /= c;
          b.at(u, v) = arith::checked_mul_u64(b.at(u, v), c);
          moved = true;
        }
      }
    }
    if (!moved) break;
  }
  return b;
}

RectArray rectangular_factorize(const std::vector<u64>& m, const std::vector<u64>& n) {
  const int j = static_cast<int>(m.size());
  const int k = static_cast<int>(n.size());
  if (j == 0 || k == 0) throw std::invalid_argument("rectangular_factorize: empty side");

  // Per-prime exponent demands.
  std::map<u64, std::pair<std::vector<int>, std::vector<int>>> demands;
  for (int r = 0; r < j; ++r)
    for (auto [p, e] : arith::factorize_trial(m[static_cast<std::size_t>(r)])) {
      auto& d = demands[p];
      d.first.resize(static_cast<std::size_t>(j), 0);
      d.second.resize(static_cast<std::size_t>(k), 0);
      d.first[static_cast<std::size_t>(r)] = e;
    }
  for (int s = 0; s < k; ++s)
    for (auto [p, e] : arith::factorize_trial(n[static_cast<std::size_t>(s)])) {
      auto& d = demands[p];
      d.first.resize(static_cast<std::size_t>(j), 0);
      d.second.resize(static_cast<std::size_t>(k), 0);
      d.second[static_cast<std::size_t>(s)] = e;
    }
  for (auto& [p, d] : demands) {
    int row_total = std::accumulate(d.first.begin(), d.first.end(), 0);
    int col_total = std::accumulate(d.second.begin(), d.second.end(), 0);
    if (row_total != col_total)
      throw std::invalid_argument("rectangular_factorize: unequal products at prime " +
                                  std::to_string(p));
  }

  RectArray a;
  a.rows = j;
  a.cols = k;
  a.entries.assign(static_cast<std::size_t>(j) * k, 1);
  for (auto& [p, d] : demands) {
    auto row = d.first;
    auto col = d.second;
    int r = 0, s = 0;
    while (r < j && s < k) {
      int t = std::min(row[static_cast<std::size_t>(r)], col[static_cast<std::size_t>(s)]);
      if (t > 0) {
        u64 pw = 1;
        for (int i = 0; i < t; ++i) pw = arith::checked_mul_u64(pw, p);
        a.at(r, s) = arith::checked_mul_u64(a.at(r, s), pw);
        row[static_cast<std::size_t>(r)] -= t;
        col[static_cast<std::size_t>(s)] -= t;
      }
      if (row[static_cast<std::size_t>(r)] == 0) ++r;
      if (s < k && col[static_cast<std::size_t>(s)] == 0) ++s;
    }
  }
  return a;
}

}  // namespace rmfm::vw
