#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rmfm/arith.hpp"
#include "rmfm/rng.hpp"

using namespace rmfm;
using arith::u128;
using arith::u64;

namespace {
// Independent oracle: tau_l(n) by direct enumeration of ordered tuples.
u64 tau_oracle(u64 n, int l) {
  if (l == 1) return 1;
  u64 total = 0;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) total += tau_oracle(n / d, l - 1);
  return total;
}

// Trial-division smallest prime factor.
u64 spf_oracle(u64 n) {
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}
}  // namespace

TEST_CASE("sieve basics") {
  CHECK_THROWS_AS(arith::FactorSieve(0), std::invalid_argument);
  arith::FactorSieve one(1);
  CHECK(one.spf(1) == 1);

  arith::FactorSieve s(10);
  CHECK(s.spf(9) == 3);
  CHECK(s.spf(10) == 2);
  CHECK(s.spf(7) == 7);
  for (u64 n = 2; n <= 10; ++n) CHECK(s.spf(n) == spf_oracle(n));
}

TEST_CASE("factorize") {
  arith::FactorSieve s(100);
  CHECK(s.factorize(1).empty());
  CHECK(s.factorize(12) == arith::Factorization{{2, 2}, {3, 1}});
  CHECK(s.factorize(7) == arith::Factorization{{7, 1}});
  CHECK_THROWS_AS(s.factorize(101), std::out_of_range);
  CHECK_THROWS_AS(s.factorize(0), std::out_of_range);

  for (u64 n = 1; n <= 100; ++n) {
    u64 prod = 1;
    u64 last_p = 0;
    for (auto [p, e] : s.factorize(n)) {
      CHECK(p > last_p);
      last_p = p;
      CHECK(e >= 1);
      for (int i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("square part and kernel") {
  arith::FactorSieve s(100000);
  CHECK(arith::sq(u64{1}, s) == 1);
  CHECK(arith::squarefree_kernel(u64{1}, s) == 1);
  CHECK(arith::sq(u64{12}, s) == 4);
  CHECK(arith::squarefree_kernel(u64{12}, s) == 3);
  CHECK(arith::sq(u64{8}, s) == 4);
  CHECK(arith::squarefree_kernel(u64{8}, s) == 2);

  for (u64 n = 1; n <= 100000; ++n) {
    u64 q = arith::sq(n, s);
    u64 g = arith::squarefree_kernel(n, s);
    CHECK(q * g == n);
    // kernel squarefree and q a perfect square
    auto r = static_cast<u64>(std::round(std::sqrt(static_cast<double>(q))));
    CHECK(r * r == q);
    for (auto [p, e] : s.factorize(g)) {
      (void)p;
      CHECK(e == 1);
    }
  }
}

TEST_CASE("sq of s^2 g for squarefree g") {
  arith::FactorSieve s(200000);
  rng::SeedSpec seed{42, 0};
  for (int t = 0; t < 500; ++t) {
    u64 base = 1 + rng::next_u64(seed, 2 * static_cast<u64>(t)) % 20;
    u64 g = 1 + rng::next_u64(seed, 2 * static_cast<u64>(t) + 1) % 100;
    if (arith::squarefree_kernel(g, s) != g) continue;  // keep squarefree g only
    u64 n = base * base * g;
    if (n > s.limit()) continue;
    CHECK(arith::sq(n, s) == base * base);
  }
}

TEST_CASE("multiplicativity of tau and sq on coprime pairs") {
  arith::FactorSieve s(100000);
  rng::SeedSpec seed{7, 0};
  int done = 0;
  for (u64 c = 0; done < 300; ++c) {
    u64 m = 1 + rng::next_u64(seed, 2 * c) % 300;
    u64 n = 1 + rng::next_u64(seed, 2 * c + 1) % 300;
    if (std::gcd(m, n) != 1 || m * n > s.limit()) continue;
    ++done;
    for (int l = 1; l <= 4; ++l)
      CHECK(arith::tau(m * n, l, s) == arith::tau(m, l, s) * arith::tau(n, l, s));
    CHECK(arith::sq(m * n, s) == arith::sq(m, s) * arith::sq(n, s));
  }
}

TEST_CASE("tau values") {
  arith::FactorSieve s(1000);
  for (int l = 1; l <= 6; ++l) CHECK(arith::tau(u64{1}, l, s) == 1);
  CHECK(arith::tau(u64{6}, 2, s) == 4);
  CHECK(arith::tau(u64{4}, 3, s) == 6);
  CHECK_THROWS_AS(arith::tau(u64{6}, 0, s), std::invalid_argument);

  for (u64 n = 1; n <= 60; ++n)
    for (int l = 1; l <= 4; ++l)
      CHECK(arith::tau(n, l, s) == static_cast<u128>(tau_oracle(n, l)));
}

TEST_CASE("liouville and legendre") {
  arith::FactorSieve s(100);
  CHECK(arith::liouville(1, s) == 1);
  CHECK(arith::liouville(12, s) == -1);  // Omega(12) = 3
  CHECK(arith::legendre(2, 5) == -1);
  CHECK(arith::legendre(4, 5) == 1);
  CHECK(arith::legendre(10, 5) == 0);
  CHECK_THROWS_AS(arith::legendre(2, 9), std::invalid_argument);
  CHECK_THROWS_AS(arith::legendre(2, 2), std::invalid_argument);

  // Euler criterion cross-check by enumerating squares mod p.
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    for (u64 n = 1; n < p; ++n) {
      bool is_sq = false;
      for (u64 x = 1; x < p; ++x)
        if (x * x % p == n) is_sq = true;
      CHECK(arith::legendre(n, p) == (is_sq ? 1 : -1));
    }
  }
}

TEST_CASE("divisor sum bound") {
  arith::FactorSieve s(200);
  auto r1 = arith::divisor_sum_check(3, 1, s);
  CHECK(r1.lhs == 3);
  CHECK(r1.holds);

  auto r2 = arith::divisor_sum_check(100, 2, s);
  CHECK(r2.lhs == 482);  // direct summation oracle
  CHECK(r2.holds);

  CHECK_THROWS_AS(arith::divisor_sum_check(2, 1, s), std::invalid_argument);
}

TEST_CASE("divisor inequalities small") {
  arith::FactorSieve s(10000);
  // Worked instance of tau_j tau_k <= tau_{jk}: tau_2(6)^2 = 16 <= tau_4(6).
  CHECK(arith::tau(u64{6}, 2, s) * arith::tau(u64{6}, 2, s) == 16);
  CHECK(arith::tau(u64{6}, 4, s) >= 16);
  CHECK(arith::divisor_inequalities_check(10000, 6, s));
}

TEST_CASE("overflow detection") {
  CHECK_THROWS_AS(arith::checked_mul_u64(~u64{0}, 2), std::overflow_error);
  CHECK_THROWS_AS(arith::checked_add_u128(~u128{0}, 1), std::overflow_error);
  // tau with huge l on a highly composite number must refuse, not wrap.
  arith::Factorization f{{2, 63}, {3, 40}, {5, 27}, {7, 22}};
  CHECK_THROWS_AS(arith::tau(f, 1000000), std::overflow_error);
}

TEST_CASE("u128 printing") {
  CHECK(arith::to_string_u128(0) == "0");
  CHECK(arith::to_string_u128(12345) == "12345");
  u128 big = static_cast<u128>(~u64{0}) + 1;  // 2^64
  CHECK(arith::to_string_u128(big) == "18446744073709551616");
}
