#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmfm/arith.hpp"
#include "rmfm/rng.hpp"

// Exact counting of the Diophantine systems whose cardinalities equal
// expected moments: the square system m_1..m_j n_1..n_k = square and the
// product system m_1..m_j = n_1..n_k (each optionally with balanced sums),
// diagonal counts, the two-copy variance systems, and short-interval
// square-product counts. Counts use overflow-checked wide integers and
// fail loudly rather than wrap.

namespace rmfm::dcount {

using u64 = arith::u64;
using u128 = arith::u128;

inline constexpr u64 kDefaultBudget = 100'000'000;  // weighted tuples per side

enum class SystemKind { SquareProduct, EqualProduct };

const char* system_name(SystemKind k);

struct SolutionCount {
  SystemKind kind = SystemKind::EqualProduct;
  int j = 0;
  int k = 0;
  u64 limit = 0;
  bool sum_constrained = true;
  u128 total = 0;
  u128 diagonal = 0;
  u128 offdiagonal = 0;
};

struct VarianceCount {
  SystemKind kind = SystemKind::EqualProduct;
  int j = 0;
  int k = 0;
  u64 limit = 0;
  u128 value = 0;
};

// D_{j,k}(N): multiset matches {m} = {n}; zero for j != k.
u128 count_diagonal(int j, int k, u64 limit, u64 budget = kDefaultBudget);

// N^square or N^bullet via a meet-in-the-middle join: each side enumerates
// sorted tuples with multinomial arrangement weights, bucketed by
// (sum if constrained, product | squarefree kernel of product).
SolutionCount count_system(SystemKind kind, int j, int k, u64 limit, bool sum_constrained,
                           u64 budget = kDefaultBudget);

// The two-copy variance count: pairs of sum-balanced solutions whose halves
// each violate the single-copy multiplicative condition while the joint
// product satisfies it.
VarianceCount count_variance_system(SystemKind kind, int j, int k, u64 limit,
                                    u64 budget = kDefaultBudget);

struct Interval {
  u64 lo = 1;  // inclusive
  u64 hi = 1;  // inclusive
};

// Tuples nu_r in I_r with square product; with the flag set (even l only)
// the first and second halves must also have equal sums.
u128 count_short_interval_square(const std::vector<Interval>& intervals, bool with_sum_constraint,
                                 u64 budget = kDefaultBudget);

struct IdentityReport {
  SystemKind kind = SystemKind::EqualProduct;
  int j = 0;
  int k = 0;
  u64 limit = 0;
  u128 exact_count = 0;
  double mc_scaled_mean = 0.0;  // N^{(j+k)/2} * MC mean (real part)
  double mc_scaled_se = 0.0;
  double z_re = 0.0;
  double z_im = 0.0;
};

// Compares N^{(j+k)/2} E m^{(j,k)} (Monte Carlo over seeded samples;
// Rademacher for the square system, Steinhaus for the product system)
// against the exact solution count.
IdentityReport expectation_identity_check(SystemKind kind, int j, int k, u64 limit,
                                          int num_samples, std::uint64_t seed);

}  // namespace rmfm::dcount
