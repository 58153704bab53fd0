#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rmfm/poly.hpp"
#include "rmfm/rmf.hpp"

// Monte Carlo and distributional machinery across seeded independent
// samples. Trials are independent tasks keyed by (master seed, trial
// index); per-trial values are stored in trial order and reduced
// sequentially, so estimates are bitwise reproducible at any thread count.

namespace rmfm::stats {

using Complex = std::complex<double>;

struct McEstimate {
  std::string statistic;
  Complex mean;
  double variance = 0.0;  // total: var_re + var_im
  double var_re = 0.0;
  double var_im = 0.0;
  double standard_error = 0.0;  // sqrt(variance / n)
  double se_re = 0.0;
  double se_im = 0.0;
  // Estimated variance of the sample variance of the real part,
  // Var(s^2) = mu4/n - sigma^4 (n-3)/(n(n-1)), floored at the universal
  // kurtosis-1 minimum 2 sigma^4/(n(n-1)).
  double var_of_variance_re = 0.0;
  int num_samples = 0;
  std::uint64_t master_seed = 0;
};

// Number of worker threads used by parallel trial loops (never changes the
// numerical result). 0 = hardware concurrency.
void set_num_threads(int n);
int num_threads();

// Runs fn(trial) for trial = 0..n-1 on the worker pool.
void parallel_for(int n, const std::function<void(int)>& fn);

McEstimate reduce_estimates(const std::string& name, const std::vector<Complex>& values,
                            std::uint64_t master_seed);

// Mean/variance of m_N^{(j,k)} across `trials` independent samples,
// computed per trial by the exact grid quadrature.
McEstimate mc_moments(rmf::RmfKind kind, std::uint64_t n, int j, int k, int trials,
                      std::uint64_t master_seed);

struct EmpiricalMeasure {
  std::size_t grid_size = 0;
  int q = 0;
  // counts(i, j): grid points whose real part falls in x-cell i and
  // imaginary part in y-cell j; cells are Gaussian-quantile rectangles.
  std::vector<std::uint64_t> counts;  // q*q, row-major
};

struct CltReport {
  EmpiricalMeasure measure;
  double sup_discrepancy = 0.0;
};

// Value-distribution test: compares the empirical measure of
// P_N(t/M) over a q x q partition of the plane at quantiles of the standard
// complex Gaussian (density e^{-x^2-y^2}/pi) against the cell mass 1/q^2.
CltReport clt_empirical(const poly::CoeffVector& coeffs, std::size_t grid_size, int q);

struct SupNormSummary {
  std::vector<poly::SupNormBound> bounds;
  double window_lower = 0.0;
  double window_upper = 0.0;
  double fraction_inside = 0.0;
  double median_certified = 0.0;
  double sqrt_log_n = 0.0;  // report-only comparison point
};

// Certified sup-norms over `trials` samples; the window is
// [(log N / loglog N)^{1/6}, exp(3 sqrt(log N loglog N))].
SupNormSummary supnorm_ensemble(rmf::RmfKind kind, std::uint64_t n, int trials,
                                std::uint64_t master_seed, std::size_t grid_size = 0);

struct LongtailReport {
  McEstimate moment;      // E m^{(k)}
  McEstimate point_mass;  // E |P_N(0)|^{2k}
  double ratio = 0.0;     // point_mass.mean / moment.mean
  double variance_ratio = 0.0;  // Var(m^{(k)}) / (E m^{(k)})^2
  bool inequality_holds = false;  // moment <= point_mass + 4 joint SE
};

LongtailReport longtail_compare(rmf::RmfKind kind, std::uint64_t n, int k, int trials,
                                std::uint64_t master_seed);

// Inverse CDF of a mean-zero Gaussian with variance 1/2 (CDF (1+erf(x))/2).
double gaussian_half_quantile(double p);

}  // namespace rmfm::stats
