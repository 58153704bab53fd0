#include "rmfm/poly.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rmfm/arith.hpp"

namespace rmfm::poly {

std::string method_name(MomentMethod m) {
  switch (m) {
    case MomentMethod::ConvolutionExact: return "convolution-exact";
    case MomentMethod::GridExact: return "grid-exact";
    case MomentMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

CoeffVector coeffs_from_sample(const rmf::RmfSample& sample) {
  CoeffVector c;
  c.limit = sample.limit;
  c.origin = CoeffOrigin::RandomSample;
  c.coeffs = sample.values / std::sqrt(static_cast<double>(sample.limit));
  return c;
}

CoeffVector coeffs_from_signs(const std::vector<int>& signs, CoeffOrigin origin) {
  CoeffVector c;
  c.limit = signs.size();
  c.origin = origin;
  c.coeffs.resize(static_cast<Eigen::Index>(signs.size()));
  // Fekete's own normalization is 1/sqrt(p-1) = 1/sqrt(#coeffs), so the
  // same rule applies to both origins.
  double norm = 1.0 / std::sqrt(static_cast<double>(signs.size()));
  for (std::size_t i = 0; i < signs.size(); ++i)
    c.coeffs(static_cast<Eigen::Index>(i)) = Complex(signs[i] * norm, 0.0);
  return c;
}

namespace {

// values[t] = sum_n a[n] e(+ n t / M) for a zero-padded spectrum a.
Eigen::VectorXcd synth_grid(const Eigen::VectorXcd& spectrum_1based, std::size_t grid_size) {
  const auto n = static_cast<std::size_t>(spectrum_1based.size());
  if (grid_size < n + 1) throw std::invalid_argument("grid size must exceed polynomial degree");
  std::vector<Complex> padded(grid_size, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    padded[i + 1] = spectrum_1based(static_cast<Eigen::Index>(i));
  Eigen::FFT<double> fft;
  std::vector<Complex> out(grid_size);
  fft.inv(out, padded);  // (1/M) sum a[n] e(+nt/M)
  Eigen::VectorXcd values(static_cast<Eigen::Index>(grid_size));
  for (std::size_t t = 0; t < grid_size; ++t)
    values(static_cast<Eigen::Index>(t)) = out[t] * static_cast<double>(grid_size);
  return values;
}

Complex ipow(Complex z, int e) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

}  // namespace

Eigen::VectorXcd eval_grid(const CoeffVector& coeffs, std::size_t grid_size) {
  return synth_grid(coeffs.coeffs, grid_size);
}

std::vector<std::int64_t> power_coeffs(const std::vector<int>& signs, int j) {
  if (j < 1) throw std::invalid_argument("power_coeffs: j must be >= 1");
  const std::size_t n = signs.size();
  // cur holds frequencies i..i*N for the i-th power.
  std::vector<std::int64_t> cur(n);
  for (std::size_t t = 0; t < n; ++t) cur[t] = signs[t];
  for (int i = 2; i <= j; ++i) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(i) * n - (i - 1), 0);
    for (std::size_t a = 0; a < cur.size(); ++a) {
      if (cur[a] == 0) continue;
      for (std::size_t b = 0; b < n; ++b) {
        std::int64_t term;
        if (__builtin_mul_overflow(cur[a], static_cast<std::int64_t>(signs[b]), &term) ||
            __builtin_add_overflow(next[a + b], term, &next[a + b]))
          throw std::overflow_error("power_coeffs: integer overflow");
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Eigen::VectorXcd power_coeffs(const Eigen::VectorXcd& values, int j) {
  if (j < 1) throw std::invalid_argument("power_coeffs: j must be >= 1");
  const auto n = static_cast<std::size_t>(values.size());
  Eigen::VectorXcd cur = values;
  for (int i = 2; i <= j; ++i) {
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(i * n - (i - 1)));
    for (Eigen::Index a = 0; a < cur.size(); ++a)
      for (Eigen::Index b = 0; b < values.size(); ++b) next(a + b) += cur(a) * values(b);
    cur = std::move(next);
  }
  return cur;
}

MomentResult moment_exact(const rmf::RmfSample& sample, int j, int k, std::size_t memory_cap) {
  if (j < 0 || k < 0) throw std::invalid_argument("moment_exact: j, k must be >= 0");
  const std::uint64_t n = sample.limit;
  if (static_cast<std::size_t>(j + k) * n > memory_cap)
    throw std::length_error("moment_exact: (j+k) N exceeds the memory cap");

  MomentResult res;
  res.j = j;
  res.k = k;
  res.limit = n;
  res.method = MomentMethod::ConvolutionExact;

  if (j == 0 && k == 0) {
    res.value = Complex(1.0, 0.0);
    return res;
  }
  // P^j has frequencies j..jN, so against a conjugated 0-power (frequency 0
  // only) the integral vanishes.
  if (j == 0 || k == 0) {
    res.value = Complex(0.0, 0.0);
    return res;
  }

  const double scale = std::pow(static_cast<double>(n), -0.5 * (j + k));

  if (sample.kind == rmf::RmfKind::Rademacher) {
    std::vector<int> signs(sample.sign_values.begin() + 1, sample.sign_values.end());
    bool exact_ok = true;
    try {
      auto cj = power_coeffs(signs, j);
      auto ck = (k == j) ? cj : power_coeffs(signs, k);
      // Overlap of frequency ranges [j, jN] and [k, kN].
      std::int64_t lo = std::max(j, k);
      std::int64_t hi = std::min<std::int64_t>(j * n, static_cast<std::int64_t>(k) * n);
      arith::i64 acc = 0;
      for (std::int64_t t = lo; t <= hi; ++t) {
        std::int64_t term;
        if (__builtin_mul_overflow(cj[static_cast<std::size_t>(t - j)],
                                   ck[static_cast<std::size_t>(t - k)], &term) ||
            __builtin_add_overflow(acc, term, &acc))
          throw std::overflow_error("moment_exact: accumulator overflow");
      }
      res.value = Complex(static_cast<double>(acc) * scale, 0.0);
      res.error_bound = 0.0;
      return res;
    } catch (const std::overflow_error&) {
      exact_ok = false;
    }
    (void)exact_ok;  // fall through to the floating path
  }

  Eigen::VectorXcd cj = power_coeffs(sample.values, j);
  Eigen::VectorXcd ck = (k == j) ? cj : power_coeffs(sample.values, k);
  std::int64_t lo = std::max(j, k);
  std::int64_t hi = std::min<std::int64_t>(static_cast<std::int64_t>(j) * n,
                                           static_cast<std::int64_t>(k) * n);
  Complex acc(0.0, 0.0);
  double sum_sq = 0.0;
  for (std::int64_t t = lo; t <= hi; ++t) {
    Complex term = cj(static_cast<Eigen::Index>(t - j)) *
                   std::conj(ck(static_cast<Eigen::Index>(t - k)));
    acc += term;
    sum_sq += std::norm(cj(static_cast<Eigen::Index>(t - j)));
  }
  res.value = acc * scale;
  res.error_bound = 8.0 * (j + k) * static_cast<double>(hi - lo + 1) *
                    std::numeric_limits<double>::epsilon() * sum_sq * scale;
  return res;
}

std::size_t default_grid_size(std::uint64_t n, int j, int k) {
  std::uint64_t need = std::max<std::uint64_t>(4 * n, static_cast<std::uint64_t>(j + k) * n + 1);
  std::size_t m = 1;
  while (m <= need) m <<= 1;
  return m;
}

MomentResult moment_grid(const CoeffVector& coeffs, int j, int k, std::size_t grid_size) {
  if (j < 0 || k < 0) throw std::invalid_argument("moment_grid: j, k must be >= 0");
  if (grid_size <= static_cast<std::size_t>(j + k) * coeffs.limit)
    throw std::invalid_argument("moment_grid: grid must exceed (j+k) N or frequencies alias");
  Eigen::VectorXcd values = eval_grid(coeffs, grid_size);
  Complex acc(0.0, 0.0);
  Complex comp(0.0, 0.0);  // Kahan compensation
  for (Eigen::Index t = 0; t < values.size(); ++t) {
    Complex term = ipow(values(t), j) * ipow(std::conj(values(t)), k);
    Complex y = term - comp;
    Complex s = acc + y;
    comp = (s - acc) - y;
    acc = s;
  }
  MomentResult res;
  res.j = j;
  res.k = k;
  res.limit = coeffs.limit;
  res.method = MomentMethod::GridExact;
  res.value = acc / static_cast<double>(grid_size);
  res.error_bound = 16.0 * (j + k + 1) * std::numeric_limits<double>::epsilon() *
                    std::abs(res.value) * std::log2(static_cast<double>(grid_size) + 2);
  return res;
}

MomentResult moment_grid(const rmf::RmfSample& sample, int j, int k, std::size_t grid_size) {
  return moment_grid(coeffs_from_sample(sample), j, k, grid_size);
}

SupNormBound sup_norm_certified(const CoeffVector& coeffs, std::size_t grid_size) {
  const double n = static_cast<double>(coeffs.limit);
  if (static_cast<double>(grid_size) <= std::numbers::pi * n)
    throw std::invalid_argument("sup_norm_certified: grid must exceed pi N");
  Eigen::VectorXcd values = eval_grid(coeffs, grid_size);
  SupNormBound b;
  b.grid_size = grid_size;
  b.grid_max = values.cwiseAbs().maxCoeff();
  // Bernstein: |P'| <= 2 pi N sup|P|, and the grid spacing is 1/M, so
  // sup|P| <= grid_max / (1 - pi N / M).
  b.certified_upper = b.grid_max / (1.0 - std::numbers::pi * n / static_cast<double>(grid_size));
  return b;
}

double short_interval_lp(const rmf::RmfSample& sample, std::uint64_t m0, std::uint64_t len,
                         double p, std::size_t grid_size) {
  if (len < 1) throw std::invalid_argument("short_interval_lp: interval must be nonempty");
  if (m0 + len > sample.limit) throw std::out_of_range("short_interval_lp: interval beyond N");
  if (p <= 0) throw std::invalid_argument("short_interval_lp: p must be positive");
  // Shift the window to frequencies 1..L; |Q| is unchanged by the shift.
  Eigen::VectorXcd window(static_cast<Eigen::Index>(len));
  for (std::uint64_t i = 0; i < len; ++i)
    window(static_cast<Eigen::Index>(i)) = sample.value(m0 + 1 + i);
  Eigen::VectorXcd values = synth_grid(window, grid_size);
  double acc = 0.0;
  for (Eigen::Index t = 0; t < values.size(); ++t) acc += std::pow(std::abs(values(t)), p);
  return acc / static_cast<double>(grid_size);
}

}  // namespace rmfm::poly
