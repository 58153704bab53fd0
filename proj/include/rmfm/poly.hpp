#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "rmfm/rmf.hpp"

// Evaluation of P_N(theta) = N^{-1/2} sum_{n<=N} X(n) e(n theta) on uniform
// grids, unit-circle moments m_N^{(j,k)} by two independent exact routes
// (Parseval convolution and grid quadrature), and certified sup-norms.

namespace rmfm::poly {

using Complex = std::complex<double>;

enum class CoeffOrigin { RandomSample, Fekete, Liouville };

// Normalized coefficients a_n (n = 1..N stored at index n-1). For random
// samples and Liouville the normalization is 1/sqrt(N); Fekete keeps its
// own 1/sqrt(p-1).
struct CoeffVector {
  std::uint64_t limit = 0;
  CoeffOrigin origin = CoeffOrigin::RandomSample;
  Eigen::VectorXcd coeffs;
};

CoeffVector coeffs_from_sample(const rmf::RmfSample& sample);
CoeffVector coeffs_from_signs(const std::vector<int>& signs, CoeffOrigin origin);

// Values of sum_n a_n e(n t / M) at t = 0..M-1 via a zero-padded DFT.
// Requires M >= N+1 so no two frequencies alias.
Eigen::VectorXcd eval_grid(const CoeffVector& coeffs, std::size_t grid_size);

// Coefficients of (sum_{n<=N} x_n z^n)^j at frequencies j..jN (index 0 of
// the result is frequency j). Integer path is exact with overflow checks.
std::vector<std::int64_t> power_coeffs(const std::vector<int>& signs, int j);
Eigen::VectorXcd power_coeffs(const Eigen::VectorXcd& values, int j);

enum class MomentMethod { ConvolutionExact, GridExact, MonteCarlo };

struct MomentResult {
  int j = 0;
  int k = 0;
  std::uint64_t limit = 0;
  Complex value;
  MomentMethod method = MomentMethod::ConvolutionExact;
  double error_bound = 0.0;
};

std::string method_name(MomentMethod m);

// m_N^{(j,k)} via Parseval: N^{-(j+k)/2} sum_t c_t^{(j)} conj(c_t^{(k)}).
// Rademacher inputs use the exact integer convolution when it fits the
// wide-integer budget; otherwise (and for Steinhaus) floating convolution
// with an accumulated-error estimate.
MomentResult moment_exact(const rmf::RmfSample& sample, int j, int k,
                          std::size_t memory_cap = std::size_t{1} << 26);

// m_N^{(j,k)} as the uniform M-point average of P^j conj(P)^k; exact for
// M > (j+k) N since every nonzero frequency of the integrand has magnitude
// below M.
MomentResult moment_grid(const rmf::RmfSample& sample, int j, int k, std::size_t grid_size);
MomentResult moment_grid(const CoeffVector& coeffs, int j, int k, std::size_t grid_size);

// Smallest power of two exceeding max(4N, (j+k)N + 1).
std::size_t default_grid_size(std::uint64_t n, int j, int k);

struct SupNormBound {
  double grid_max = 0.0;
  double certified_upper = 0.0;
  std::size_t grid_size = 0;
};

// Bernstein bracket: the true sup lies in [grid_max, grid_max/(1 - pi N/M)].
SupNormBound sup_norm_certified(const CoeffVector& coeffs, std::size_t grid_size);

// Grid average of |sum_{M0 < n <= M0+L} X(n) e(n theta)|^p (unnormalized
// coefficients); exact when p is an even integer and M > p (M0 + L).
double short_interval_lp(const rmf::RmfSample& sample, std::uint64_t m0, std::uint64_t len,
                         double p, std::size_t grid_size);

}  // namespace rmfm::poly
