#include "rmfm/rmf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rmfm::rmf {

const char* kind_name(RmfKind k) {
  return k == RmfKind::Rademacher ? "rademacher" : "steinhaus";
}

RmfKind kind_from_name(const std::string& name) {
  if (name == "rademacher") return RmfKind::Rademacher;
  if (name == "steinhaus") return RmfKind::Steinhaus;
  throw std::invalid_argument("unknown RMF kind: " + name);
}

RmfSample sample_rmf(RmfKind kind, std::uint64_t n, const rng::SeedSpec& seed,
                     const arith::FactorSieve& sieve) {
  if (n < 1) throw std::invalid_argument("sample_rmf: N must be >= 1");
  if (n > sieve.limit()) throw std::out_of_range("sample_rmf: N beyond sieve");

  RmfSample s;
  s.kind = kind;
  s.limit = n;
  s.seed = seed;
  s.values.resize(static_cast<Eigen::Index>(n));
  s.values(0) = Complex(1.0, 0.0);
  if (kind == RmfKind::Rademacher) {
    s.sign_values.assign(n + 1, 0);
    s.sign_values[1] = 1;
  }

  // Counter for the prime stream is the prime's position in [2, N]; the
  // draw at a prime does not depend on N.
  std::uint64_t prime_index = 0;
  for (std::uint64_t m = 2; m <= n; ++m) {
    if (sieve.is_prime(m)) ++prime_index;
    Complex v;
    if (sieve.is_prime(m)) {
      if (kind == RmfKind::Rademacher) {
        bool plus = (rng::next_u64(seed, prime_index) & 1ULL) != 0;
        v = Complex(plus ? 1.0 : -1.0, 0.0);
        s.sign_values[m] = plus ? 1 : -1;
      } else {
        double u = rng::next_unit(seed, prime_index);
        v = std::polar(1.0, 2.0 * std::numbers::pi * u);
      }
    } else {
      std::uint64_t p = sieve.spf(m);
      v = s.value(p) * s.value(m / p);
      if (kind == RmfKind::Rademacher)
        s.sign_values[m] = static_cast<std::int8_t>(s.sign_values[p] * s.sign_values[m / p]);
    }
    s.values(static_cast<Eigen::Index>(m - 1)) = v;
  }
  return s;
}

bool verify_multiplicativity(const RmfSample& sample, int trials) {
  if (trials < 1) throw std::invalid_argument("verify_multiplicativity: trials >= 1");
  const std::uint64_t n = sample.limit;
  if (n < 2) return true;  // vacuous
  rng::SeedSpec pair_seed{sample.seed.master_seed ^ 0xa5a5a5a5a5a5a5a5ULL, sample.seed.trial};
  for (int t = 0; t < trials; ++t) {
    std::uint64_t a = 1 + rng::next_u64(pair_seed, 2 * static_cast<std::uint64_t>(t)) % n;
    std::uint64_t bmax = n / a;
    std::uint64_t b = 1 + rng::next_u64(pair_seed, 2 * static_cast<std::uint64_t>(t) + 1) % bmax;
    Complex lhs = sample.value(a * b);
    Complex rhs = sample.value(a) * sample.value(b);
    if (sample.kind == RmfKind::Rademacher) {
      if (sample.sign_values[a * b] != sample.sign_values[a] * sample.sign_values[b]) return false;
    } else if (std::abs(lhs - rhs) > 1e-12) {
      return false;
    }
  }
  return true;
}

std::vector<int> fekete_coeffs(std::uint64_t p) {
  std::vector<int> out;
  out.reserve(p > 0 ? p - 1 : 0);
  for (std::uint64_t m = 1; m < p; ++m) out.push_back(arith::legendre(m, p));
  return out;
}

std::vector<int> liouville_coeffs(std::uint64_t n, const arith::FactorSieve& sieve) {
  std::vector<int> out;
  out.reserve(n);
  for (std::uint64_t m = 1; m <= n; ++m) out.push_back(arith::liouville(m, sieve));
  return out;
}

}  // namespace rmfm::rmf
