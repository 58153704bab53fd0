#include "rmfm/dcount.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "rmfm/poly.hpp"
#include "rmfm/rmf.hpp"
#include "rmfm/stats.hpp"

namespace rmfm::dcount {

const char* system_name(SystemKind k) {
  return k == SystemKind::SquareProduct ? "square-product" : "equal-product";
}

namespace {

struct BucketKey {
  u64 sum = 0;  // 0 when the sum constraint is off
  u64 key = 0;
  bool operator==(const BucketKey&) const = default;
};

struct BucketKeyHash {
  std::size_t operator()(const BucketKey& b) const {
    return std::hash<u64>{}(rng::mix64(b.sum) ^ b.key);
  }
};

using BucketMap = std::unordered_map<BucketKey, u128, BucketKeyHash>;

// Enumerates nondecreasing tuples of [1, limit] with multinomial arrangement
// weights and feeds (sum, product-or-kernel, weight) to the sink.
template <typename Sink>
void enumerate_side(int len, u64 limit, SystemKind kind, const arith::FactorSieve& sieve,
                    u64 budget, Sink&& sink) {
  std::vector<u64> tuple(static_cast<std::size_t>(len));
  u64 visited = 0;

  // weight = len! / prod(run lengths!)
  auto arrangements = [&]() {
    u128 w = 1;
    for (int i = 2; i <= len; ++i) w = arith::checked_mul_u128(w, static_cast<u128>(i));
    int run = 1;
    for (int i = 1; i < len; ++i) {
      if (tuple[static_cast<std::size_t>(i)] == tuple[static_cast<std::size_t>(i - 1)]) {
        ++run;
        w /= static_cast<u128>(run);
      } else {
        run = 1;
      }
    }
    return w;
  };

  std::function<void(int, u64, u64, u64)> rec = [&](int pos, u64 min_val, u64 sum, u64 key) {
    if (pos == len) {
      if (++visited > budget) throw std::length_error("dcount: enumeration budget exceeded");
      sink(sum, key, arrangements());
      return;
    }
    for (u64 v = min_val; v <= limit; ++v) {
      tuple[static_cast<std::size_t>(pos)] = v;
      u64 next_key = (kind == SystemKind::EqualProduct)
                         ? arith::checked_mul_u64(key, v)
                         : arith::kernel_combine(key, arith::squarefree_kernel(v, sieve));
      rec(pos + 1, v, arith::checked_add_u64(sum, v), next_key);
    }
  };
  rec(0, 1, 0, 1);
}

}  // namespace

u128 count_diagonal(int j, int k, u64 limit, u64 budget) {
  if (j < 1 || k < 1 || limit < 1) throw std::invalid_argument("count_diagonal: bad arguments");
  if (j != k) return 0;
  // sum over multisets of (arrangement count)^2
  u128 total = 0;
  arith::FactorSieve sieve(limit);
  enumerate_side(k, limit, SystemKind::EqualProduct, sieve, budget,
                 [&](u64, u64, u128 w) {
                   total = arith::checked_add_u128(total, arith::checked_mul_u128(w, w));
                 });
  return total;
}

SolutionCount count_system(SystemKind kind, int j, int k, u64 limit, bool sum_constrained,
                           u64 budget) {
  if (j < 1 || k < 1 || limit < 1) throw std::invalid_argument("count_system: bad arguments");
  arith::FactorSieve sieve(limit);

  BucketMap m_side;
  enumerate_side(j, limit, kind, sieve, budget, [&](u64 sum, u64 key, u128 w) {
    BucketKey bk{sum_constrained ? sum : 0, key};
    m_side[bk] = arith::checked_add_u128(m_side[bk], w);
  });

  u128 total = 0;
  enumerate_side(k, limit, kind, sieve, budget, [&](u64 sum, u64 key, u128 w) {
    BucketKey bk{sum_constrained ? sum : 0, key};
    auto it = m_side.find(bk);
    if (it != m_side.end())
      total = arith::checked_add_u128(total, arith::checked_mul_u128(it->second, w));
  });

  SolutionCount sc;
  sc.kind = kind;
  sc.j = j;
  sc.k = k;
  sc.limit = limit;
  sc.sum_constrained = sum_constrained;
  sc.total = total;
  sc.diagonal = count_diagonal(j, k, limit, budget);
  if (sc.total < sc.diagonal)
    throw std::logic_error("count_system: total below diagonal, counting bug");
  sc.offdiagonal = sc.total - sc.diagonal;
  return sc;
}

namespace {

// Enumerates ordered (m, n) in [1,limit]^j x [1,limit]^k with equal sums,
// reporting the multiplicative key of the pair: the product ratio as a
// reduced fraction for EqualProduct, the squarefree kernel of the joint
// product for SquareProduct.
template <typename Sink>
void enumerate_balanced_pairs(SystemKind kind, int j, int k, u64 limit,
                              const arith::FactorSieve& sieve, u64 budget, Sink&& sink) {
  std::vector<u64> m(static_cast<std::size_t>(j)), n(static_cast<std::size_t>(k));
  u64 visited = 0;
  std::function<void(int, u64, u64)> rec_n = [&](int pos, u64 sum_left, u64 prod) {
    if (pos == k) {
      if (sum_left != 0) return;
      if (++visited > budget) throw std::length_error("dcount: enumeration budget exceeded");
      u64 mprod = 1;
      for (u64 v : m) mprod = arith::checked_mul_u64(mprod, v);
      sink(mprod, prod);
      return;
    }
    u64 hi = std::min(limit, sum_left);  // remaining entries are >= 1 each
    for (u64 v = 1; v <= hi; ++v) {
      if (sum_left < v + static_cast<u64>(k - pos - 1)) break;
      n[static_cast<std::size_t>(pos)] = v;
      rec_n(pos + 1, sum_left - v, arith::checked_mul_u64(prod, v));
    }
  };
  std::function<void(int, u64)> rec_m = [&](int pos, u64 sum) {
    if (pos == j) {
      rec_n(0, sum, 1);
      return;
    }
    for (u64 v = 1; v <= limit; ++v) {
      m[static_cast<std::size_t>(pos)] = v;
      rec_m(pos + 1, sum + v);
    }
  };
  (void)sieve;
  rec_m(0, 0);
}

}  // namespace

VarianceCount count_variance_system(SystemKind kind, int j, int k, u64 limit, u64 budget) {
  if (j < 1 || k < 1 || limit < 1)
    throw std::invalid_argument("count_variance_system: bad arguments");
  arith::FactorSieve sieve(limit);

  VarianceCount vc;
  vc.kind = kind;
  vc.j = j;
  vc.k = k;
  vc.limit = limit;

  if (kind == SystemKind::EqualProduct) {
    // Bucket sum-balanced (m, n) by the reduced ratio prod(m)/prod(n); a
    // valid pair of copies needs ratio r in one and 1/r in the other, r != 1.
    std::unordered_map<u64, std::unordered_map<u64, u128>> buckets;  // p -> q -> count
    enumerate_balanced_pairs(kind, j, k, limit, sieve, budget, [&](u64 mp, u64 np) {
      u64 g = std::gcd(mp, np);
      buckets[mp / g][np / g] += 1;
    });
    u128 total = 0;
    for (auto& [p, inner] : buckets) {
      for (auto& [q, c] : inner) {
        if (p == q) continue;
        auto itp = buckets.find(q);
        if (itp == buckets.end()) continue;
        auto itq = itp->second.find(p);
        if (itq == itp->second.end()) continue;
        total = arith::checked_add_u128(total, arith::checked_mul_u128(c, itq->second));
      }
    }
    vc.value = total;
  } else {
    // Bucket by the squarefree kernel of prod(m) prod(n); the joint product
    // is square iff the two kernels agree, and kernel 1 means the half is
    // itself square (excluded).
    std::unordered_map<u64, u128> buckets;
    enumerate_balanced_pairs(kind, j, k, limit, sieve, budget, [&](u64 mp, u64 np) {
      u64 kern = arith::kernel_combine(arith::squarefree_kernel(arith::factorize_trial(mp)),
                                       arith::squarefree_kernel(arith::factorize_trial(np)));
      buckets[kern] += 1;
    });
    u128 total = 0;
    for (auto& [g, c] : buckets) {
      if (g == 1) continue;
      total = arith::checked_add_u128(total, arith::checked_mul_u128(c, c));
    }
    vc.value = total;
  }
  return vc;
}

u128 count_short_interval_square(const std::vector<Interval>& intervals, bool with_sum_constraint,
                                 u64 budget) {
  const int l = static_cast<int>(intervals.size());
  if (l == 0) throw std::invalid_argument("count_short_interval_square: no intervals");
  if (with_sum_constraint && l % 2 != 0)
    throw std::invalid_argument("count_short_interval_square: sum constraint needs even l");

  u64 max_hi = 0;
  u128 space = 1;
  for (const auto& iv : intervals) {
    if (iv.lo < 1 || iv.hi < iv.lo)
      throw std::invalid_argument("count_short_interval_square: bad interval");
    max_hi = std::max(max_hi, iv.hi);
    space = arith::checked_mul_u128(space, static_cast<u128>(iv.hi - iv.lo + 2));
  }
  if (space > budget) throw std::length_error("count_short_interval_square: budget exceeded");
  arith::FactorSieve sieve(max_hi);

  u128 total = 0;
  std::function<void(int, u64, std::int64_t)> rec = [&](int pos, u64 kern,
                                                        std::int64_t half_sum) {
    if (pos == l) {
      if (kern == 1 && (!with_sum_constraint || half_sum == 0)) ++total;
      return;
    }
    const auto& iv = intervals[static_cast<std::size_t>(pos)];
    for (u64 v = iv.lo; v <= iv.hi; ++v) {
      std::int64_t signed_v = (with_sum_constraint && pos >= l / 2)
                                  ? -static_cast<std::int64_t>(v)
                                  : static_cast<std::int64_t>(v);
      rec(pos + 1, arith::kernel_combine(kern, arith::squarefree_kernel(v, sieve)),
          half_sum + signed_v);
    }
  };
  rec(0, 1, 0);
  return total;
}

IdentityReport expectation_identity_check(SystemKind kind, int j, int k, u64 limit,
                                          int num_samples, std::uint64_t seed) {
  IdentityReport rep;
  rep.kind = kind;
  rep.j = j;
  rep.k = k;
  rep.limit = limit;
  rep.exact_count = count_system(kind, j, k, limit, /*sum_constrained=*/true).total;

  rmf::RmfKind rk =
      kind == SystemKind::SquareProduct ? rmf::RmfKind::Rademacher : rmf::RmfKind::Steinhaus;
  stats::McEstimate est = stats::mc_moments(rk, limit, j, k, num_samples, seed);

  double scale = std::pow(static_cast<double>(limit), 0.5 * (j + k));
  rep.mc_scaled_mean = scale * est.mean.real();
  rep.mc_scaled_se = scale * est.se_re;
  double target = static_cast<double>(rep.exact_count);
  // Deviations below rounding noise count as zero even when the sample
  // standard error is degenerate (e.g. m^{(1,1)} = 1 for every sample).
  double noise_floor = 1e-9 * std::max(1.0, std::abs(target));
  auto zscore = [&](double diff, double se) {
    if (std::abs(diff) <= noise_floor) return 0.0;
    return se > 0 ? diff / se : std::numeric_limits<double>::infinity();
  };
  rep.z_re = zscore(rep.mc_scaled_mean - target, scale * est.se_re);
  rep.z_im = zscore(scale * est.mean.imag(), scale * est.se_im);
  return rep;
}

}  // namespace rmfm::dcount
