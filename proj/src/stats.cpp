#include "rmfm/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace rmfm::stats {

namespace {
int g_threads = 0;

double kahan_sum(const std::vector<double>& xs) {
  double acc = 0.0, comp = 0.0;
  for (double x : xs) {
    double y = x - comp;
    double s = acc + y;
    comp = (s - acc) - y;
    acc = s;
  }
  return acc;
}
}  // namespace

void set_num_threads(int n) { g_threads = n; }

int num_threads() {
  if (g_threads > 0) return g_threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(num_threads(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

McEstimate reduce_estimates(const std::string& name, const std::vector<Complex>& values,
                            std::uint64_t master_seed) {
  const int n = static_cast<int>(values.size());
  if (n < 1) throw std::invalid_argument("reduce_estimates: no values");
  McEstimate e;
  e.statistic = name;
  e.num_samples = n;
  e.master_seed = master_seed;

  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  double mean_re = kahan_sum(re) / n;
  double mean_im = kahan_sum(im) / n;
  e.mean = Complex(mean_re, mean_im);
  if (n >= 2) {
    std::vector<double> dre(values.size()), dim(values.size()), d4(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      dre[i] = (re[i] - mean_re) * (re[i] - mean_re);
      dim[i] = (im[i] - mean_im) * (im[i] - mean_im);
      d4[i] = dre[i] * dre[i];
    }
    e.var_re = kahan_sum(dre) / (n - 1);
    e.var_im = kahan_sum(dim) / (n - 1);
    e.variance = e.var_re + e.var_im;
    e.se_re = std::sqrt(e.var_re / n);
    e.se_im = std::sqrt(e.var_im / n);
    e.standard_error = std::sqrt(e.variance / n);
    // Var(s^2) = mu4/n - sigma^4 (n-3)/(n(n-1)). Kurtosis is >= 1 for every
    // distribution, so Var(s^2) >= 2 sigma^4/(n(n-1)); flooring there keeps
    // the estimate sane when the plug-in difference cancels to rounding
    // noise (two-point distributions at kurtosis 1).
    double mu4 = kahan_sum(d4) / n;
    double s4 = e.var_re * e.var_re;
    double floor = 2.0 * s4 / (n * (n - 1.0));
    e.var_of_variance_re = std::max(floor, mu4 / n - s4 * (n - 3.0) / (n * (n - 1.0)));
  }
  return e;
}

McEstimate mc_moments(rmf::RmfKind kind, std::uint64_t n, int j, int k, int trials,
                      std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("mc_moments: trials >= 1");
  arith::FactorSieve sieve(n);
  std::size_t grid = poly::default_grid_size(n, j, k);
  std::vector<Complex> values(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](int t) {
    auto sample =
        rmf::sample_rmf(kind, n, rng::SeedSpec{master_seed, static_cast<std::uint64_t>(t)}, sieve);
    values[static_cast<std::size_t>(t)] = poly::moment_grid(sample, j, k, grid).value;
  });
  std::string name = "m^(" + std::to_string(j) + "," + std::to_string(k) + ")@N=" +
                     std::to_string(n) + "," + rmf::kind_name(kind);
  return reduce_estimates(name, values, master_seed);
}

double gaussian_half_quantile(double p) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("quantile: p in (0,1) required");
  // Bisection on the monotone CDF (1 + erf(x)) / 2; 200 steps is far below
  // double resolution on [-10, 10].
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if ((1.0 + std::erf(mid)) / 2.0 < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

CltReport clt_empirical(const poly::CoeffVector& coeffs, std::size_t grid_size, int q) {
  if (q < 3) throw std::invalid_argument("clt_empirical: q >= 3");
  Eigen::VectorXcd values = poly::eval_grid(coeffs, grid_size);

  // Interior cell edges at quantiles i/q; outer edges are infinite.
  std::vector<double> edges(static_cast<std::size_t>(q - 1));
  for (int i = 1; i < q; ++i)
    edges[static_cast<std::size_t>(i - 1)] = gaussian_half_quantile(static_cast<double>(i) / q);

  auto cell = [&](double x) {
    return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
  };

  CltReport rep;
  rep.measure.grid_size = grid_size;
  rep.measure.q = q;
  rep.measure.counts.assign(static_cast<std::size_t>(q) * q, 0);
  for (Eigen::Index t = 0; t < values.size(); ++t) {
    int cx = cell(values(t).real());
    int cy = cell(values(t).imag());
    ++rep.measure.counts[static_cast<std::size_t>(cx) * q + cy];
  }
  double mass = 1.0 / (static_cast<double>(q) * q);
  double sup = 0.0;
  for (auto c : rep.measure.counts) {
    double frac = static_cast<double>(c) / static_cast<double>(grid_size);
    sup = std::max(sup, std::abs(frac - mass));
  }
  rep.sup_discrepancy = sup;
  return rep;
}

SupNormSummary supnorm_ensemble(rmf::RmfKind kind, std::uint64_t n, int trials,
                                std::uint64_t master_seed, std::size_t grid_size) {
  if (grid_size == 0) grid_size = poly::default_grid_size(n, 1, 1);
  arith::FactorSieve sieve(n);
  SupNormSummary s;
  s.bounds.resize(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](int t) {
    auto sample =
        rmf::sample_rmf(kind, n, rng::SeedSpec{master_seed, static_cast<std::uint64_t>(t)}, sieve);
    s.bounds[static_cast<std::size_t>(t)] =
        poly::sup_norm_certified(poly::coeffs_from_sample(sample), grid_size);
  });

  double logn = std::log(static_cast<double>(n));
  double loglogn = std::log(logn);
  s.window_lower = std::pow(logn / loglogn, 1.0 / 6.0);
  s.window_upper = std::exp(3.0 * std::sqrt(logn * loglogn));
  s.sqrt_log_n = std::sqrt(logn);

  int inside = 0;
  std::vector<double> certified;
  certified.reserve(s.bounds.size());
  for (const auto& b : s.bounds) {
    // The whole bracket [grid_max, certified_upper] must sit in the window.
    if (b.grid_max >= s.window_lower && b.certified_upper <= s.window_upper) ++inside;
    certified.push_back(b.certified_upper);
  }
  s.fraction_inside = trials > 0 ? static_cast<double>(inside) / trials : 0.0;
  std::sort(certified.begin(), certified.end());
  if (!certified.empty()) s.median_certified = certified[certified.size() / 2];
  return s;
}

LongtailReport longtail_compare(rmf::RmfKind kind, std::uint64_t n, int k, int trials,
                                std::uint64_t master_seed) {
  arith::FactorSieve sieve(n);
  std::size_t grid = poly::default_grid_size(n, k, k);
  std::vector<Complex> moments(static_cast<std::size_t>(trials));
  std::vector<Complex> point(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](int t) {
    auto sample =
        rmf::sample_rmf(kind, n, rng::SeedSpec{master_seed, static_cast<std::uint64_t>(t)}, sieve);
    moments[static_cast<std::size_t>(t)] = poly::moment_grid(sample, k, k, grid).value;
    // P_N(0) = N^{-1/2} sum X(n)
    Complex p0 = sample.values.sum() / std::sqrt(static_cast<double>(n));
    point[static_cast<std::size_t>(t)] = std::pow(std::norm(p0), k);
  });
  LongtailReport rep;
  rep.moment = reduce_estimates("E m^(" + std::to_string(k) + ")", moments, master_seed);
  rep.point_mass = reduce_estimates("E |P(0)|^2k", point, master_seed);
  double joint_se = std::hypot(rep.moment.se_re, rep.point_mass.se_re);
  rep.inequality_holds =
      rep.moment.mean.real() <= rep.point_mass.mean.real() + 4.0 * joint_se;
  rep.ratio = rep.point_mass.mean.real() / rep.moment.mean.real();
  rep.variance_ratio = rep.moment.var_re / (rep.moment.mean.real() * rep.moment.mean.real());
  return rep;
}

}  // namespace rmfm::stats
