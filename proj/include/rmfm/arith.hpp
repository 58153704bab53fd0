#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Integer-arithmetic substrate: smallest-prime-factor sieve, divisor
// functions, square parts and squarefree kernels, Liouville and Legendre.
// Everything is pure after sieve construction; a FactorSieve is immutable
// and can be shared freely across threads.

namespace rmfm::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 checked_mul_u64(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("u64 multiply overflow");
  return r;
}

inline u64 checked_add_u64(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("u64 add overflow");
  return r;
}

inline u128 checked_mul_u128(u128 a, u128 b) {
  if (a != 0 && b > ~u128{0} / a) throw std::overflow_error("u128 multiply overflow");
  return a * b;
}

inline u128 checked_add_u128(u128 a, u128 b) {
  u128 r = a + b;
  if (r < a) throw std::overflow_error("u128 add overflow");
  return r;
}

std::string to_string_u128(u128 v);

// (prime, exponent) pairs with strictly increasing primes; the product of
// p^e reconstructs the factored integer. factorize(1) is the empty list.
using Factorization = std::vector<std::pair<u64, int>>;

class FactorSieve {
 public:
  explicit FactorSieve(u64 limit);

  u64 limit() const { return limit_; }
  // Smallest prime factor; spf(1) == 1 by convention.
  u64 spf(u64 n) const { return spf_[n]; }
  bool is_prime(u64 n) const { return n >= 2 && spf_[n] == n; }

  Factorization factorize(u64 n) const;

 private:
  u64 limit_;
  std::vector<std::uint32_t> spf_;
};

// Trial-division factorization for values outside any sieve range.
Factorization factorize_trial(u64 n);

// Largest square divisor of n, and n / sq(n) (which is squarefree).
u64 sq(const Factorization& f);
u64 squarefree_kernel(const Factorization& f);
u64 sq(u64 n, const FactorSieve& sieve);
u64 squarefree_kernel(u64 n, const FactorSieve& sieve);

// Squarefree kernel of a product x*y given kernels of the factors.
// kernel(xy) = (kx/g)*(ky/g) with g = gcd(kx, ky).
u64 kernel_combine(u64 kx, u64 ky);

// l-fold divisor function tau_l(n) = prod C(e_p + l - 1, l - 1),
// the number of ordered l-tuples with product n. Overflow throws.
u128 tau(const Factorization& f, int l);
u128 tau(u64 n, int l, const FactorSieve& sieve);

// liouville(n) = (-1)^Omega(n), Omega counted with multiplicity.
int liouville(u64 n, const FactorSieve& sieve);

// Legendre symbol (n/p) via Euler's criterion; p must be an odd prime.
int legendre(u64 n, u64 p);

struct DivisorSumReport {
  u64 limit = 0;
  int l = 0;
  u128 lhs = 0;    // sum_{n<=N} tau_l(n)
  double rhs = 0;  // N (2 log N)^(l-1)
  bool holds = false;
};

// Checks sum_{n<=N} tau_l(n) <= N (2 log N)^(l-1) for N >= 3.
DivisorSumReport divisor_sum_check(u64 limit, int l, const FactorSieve& sieve);

// Pointwise divisor inequalities over the stated ranges:
//   tau_j(n) tau_k(n) <= tau_{jk}(n)            for n <= limit, j,k <= max_l
//   tau_k(nm) <= tau_k(n) tau_k(m)              for all nm <= limit
//   tau_l(n)^2 <= tau_{l^2}(n)                  for n <= limit, l <= max_l
//   tau_l(n^2) <= tau_l(n)^2                    for n <= limit, l <= max_l
// Returns true iff every instance holds.
bool divisor_inequalities_check(u64 limit, int max_l, const FactorSieve& sieve);

}  // namespace rmfm::arith
