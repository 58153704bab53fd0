#include "rmfm/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rmfm::arith {

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

FactorSieve::FactorSieve(u64 limit) : limit_(limit) {
  if (limit == 0) throw std::invalid_argument("FactorSieve: limit must be >= 1");
  spf_.assign(limit + 1, 0);
  spf_[1] = 1;
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      for (u64 j = i; j <= limit; j += i)
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

Factorization FactorSieve::factorize(u64 n) const {
  if (n < 1 || n > limit_) throw std::out_of_range("factorize: n outside sieve range");
  Factorization f;
  while (n > 1) {
    u64 p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  return f;
}

Factorization factorize_trial(u64 n) {
  if (n < 1) throw std::invalid_argument("factorize_trial: n must be >= 1");
  Factorization f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

u64 sq(const Factorization& f) {
  u64 r = 1;
  for (auto [p, e] : f)
    for (int i = 0; i < e / 2; ++i) r = checked_mul_u64(r, checked_mul_u64(p, p));
  return r;
}

u64 squarefree_kernel(const Factorization& f) {
  u64 r = 1;
  for (auto [p, e] : f)
    if (e % 2 == 1) r = checked_mul_u64(r, p);
  return r;
}

u64 sq(u64 n, const FactorSieve& sieve) { return sq(sieve.factorize(n)); }

u64 squarefree_kernel(u64 n, const FactorSieve& sieve) {
  return squarefree_kernel(sieve.factorize(n));
}

u64 kernel_combine(u64 kx, u64 ky) {
  u64 g = std::gcd(kx, ky);
  return checked_mul_u64(kx / g, ky / g);
}

namespace {

// C(e + l - 1, l - 1) in u128 with overflow detection.
u128 binom_shifted(int e, int l) {
  u128 num = 1;
  for (int i = 1; i <= e; ++i) {
    num = checked_mul_u128(num, static_cast<u128>(l - 1 + i));
    num /= static_cast<u128>(i);  // exact: prefix products of binomials
  }
  return num;
}

}  // namespace

u128 tau(const Factorization& f, int l) {
  if (l < 1) throw std::invalid_argument("tau: l must be >= 1");
  u128 r = 1;
  for (auto [p, e] : f) {
    (void)p;
    r = checked_mul_u128(r, binom_shifted(e, l));
  }
  return r;
}

u128 tau(u64 n, int l, const FactorSieve& sieve) { return tau(sieve.factorize(n), l); }

int liouville(u64 n, const FactorSieve& sieve) {
  if (n < 1 || n > sieve.limit()) throw std::out_of_range("liouville: n outside sieve range");
  int omega = 0;
  while (n > 1) {
    n /= sieve.spf(n);
    ++omega;
  }
  return (omega % 2 == 0) ? 1 : -1;
}

namespace {

u64 pow_mod(u64 b, u64 e, u64 m) {
  u128 r = 1, x = b % m;
  while (e > 0) {
    if (e & 1) r = (r * x) % m;
    x = (x * x) % m;
    e >>= 1;
  }
  return static_cast<u64>(r);
}

}  // namespace

int legendre(u64 n, u64 p) {
  bool prime = p >= 2;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) {
      prime = false;
      break;
    }
  if (p < 3 || p % 2 == 0 || !prime)
    throw std::invalid_argument("legendre: modulus must be an odd prime");
  u64 r = n % p;
  if (r == 0) return 0;
  u64 e = pow_mod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

DivisorSumReport divisor_sum_check(u64 limit, int l, const FactorSieve& sieve) {
  if (limit < 3) throw std::invalid_argument("divisor_sum_check: N must be >= 3");
  if (limit > sieve.limit()) throw std::out_of_range("divisor_sum_check: N beyond sieve");
  DivisorSumReport rep;
  rep.limit = limit;
  rep.l = l;
  u128 lhs = 0;
  for (u64 n = 1; n <= limit; ++n) lhs = checked_add_u128(lhs, tau(n, l, sieve));
  rep.lhs = lhs;
  rep.rhs = static_cast<double>(limit) * std::pow(2.0 * std::log(static_cast<double>(limit)), l - 1);
  // exact lhs <= ceil(rhs * (1 + 1e-12)) so float rounding cannot produce
  // a false negative
  double bound = std::ceil(rep.rhs * (1.0 + 1e-12));
  rep.holds = static_cast<double>(rep.lhs) <= bound;
  return rep;
}

bool divisor_inequalities_check(u64 limit, int max_l, const FactorSieve& sieve) {
  if (limit > sieve.limit()) throw std::out_of_range("divisor_inequalities_check: N beyond sieve");
  // tau_j(n) tau_k(n) <= tau_{jk}(n), covering tau_l(n)^2 <= tau_{l^2}(n) at j=k=l.
  for (u64 n = 1; n <= limit; ++n) {
    auto f = sieve.factorize(n);
    for (int j = 1; j <= max_l; ++j) {
      u128 tj = tau(f, j);
      for (int k = j; k <= max_l; ++k) {
        u128 tk = (k == j) ? tj : tau(f, k);
        if (checked_mul_u128(tj, tk) > tau(f, j * k)) return false;
      }
    }
  }
  // tau_l(n^2) <= tau_l(n)^2: square the exponent vector.
  for (u64 n = 1; n <= limit; ++n) {
    auto f = sieve.factorize(n);
    auto f2 = f;
    for (auto& pe : f2) pe.second *= 2;
    for (int l = 1; l <= max_l; ++l) {
      u128 t = tau(f, l);
      if (tau(f2, l) > checked_mul_u128(t, t)) return false;
    }
  }
  // tau_k(nm) <= tau_k(n) tau_k(m) for all pairs with nm <= limit.
  for (u64 n = 1; n <= limit; ++n) {
    auto fn = sieve.factorize(n);
    for (u64 m = 1; m * n <= limit; ++m) {
      auto fm = sieve.factorize(m);
      auto fnm = sieve.factorize(n * m);
      for (int k = 1; k <= max_l; ++k) {
        if (tau(fnm, k) > checked_mul_u128(tau(fn, k), tau(fm, k))) return false;
      }
    }
  }
  return true;
}

}  // namespace rmfm::arith
