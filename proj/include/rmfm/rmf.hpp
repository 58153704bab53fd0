#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "rmfm/arith.hpp"
#include "rmfm/rng.hpp"

// Sampling of Rademacher and Steinhaus random multiplicative functions and
// the deterministic multiplicative comparison sequences (Fekete, Liouville).

namespace rmfm::rmf {

using Complex = std::complex<double>;

enum class RmfKind { Rademacher, Steinhaus };

const char* kind_name(RmfKind k);
RmfKind kind_from_name(const std::string& name);

// One realization of X(1..N). Values are completely multiplicative by
// construction: X(n) = X(spf(n)) * X(n / spf(n)), so |X(n)| = 1 and
// X(mn) = X(m) X(n) whenever mn <= N. Immutable after construction.
struct RmfSample {
  RmfKind kind = RmfKind::Rademacher;
  std::uint64_t limit = 0;
  rng::SeedSpec seed;
  // values(n-1) = X(n); X(1) = 1.
  Eigen::VectorXcd values;
  // Rademacher only: exact +-1 table for integer-exact moment paths.
  std::vector<std::int8_t> sign_values;

  Complex value(std::uint64_t n) const { return values(static_cast<Eigen::Index>(n - 1)); }
};

// Draws X(p) independently at each prime (counter = prime index) and fills
// composites in one O(N) pass over the sieve.
RmfSample sample_rmf(RmfKind kind, std::uint64_t n, const rng::SeedSpec& seed,
                     const arith::FactorSieve& sieve);

// Spot-checks X(mn) = X(m) X(n) on `trials` random pairs with mn <= N
// (exact for Rademacher, 1e-12 tolerance for Steinhaus).
bool verify_multiplicativity(const RmfSample& sample, int trials);

// Legendre-symbol coefficients (n/p) for n = 1..p-1; the 1/sqrt(p-1)
// normalization is applied downstream.
std::vector<int> fekete_coeffs(std::uint64_t p);

// liouville(n) for n = 1..N.
std::vector<int> liouville_coeffs(std::uint64_t n, const arith::FactorSieve& sieve);

}  // namespace rmfm::rmf
