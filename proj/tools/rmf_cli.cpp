// Reproducible experiment runner for random-multiplicative-function
// polynomial moments, Diophantine solution counts, and the statistical
// verifications built on them.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "rmfm/arith.hpp"
#include "rmfm/config.hpp"
#include "rmfm/dcount.hpp"
#include "rmfm/poly.hpp"
#include "rmfm/records.hpp"
#include "rmfm/rmf.hpp"
#include "rmfm/rng.hpp"
#include "rmfm/stats.hpp"
#include "rmfm/vw.hpp"

namespace {

using rmfm::records::ResultRecord;
using rmfm::records::Status;

struct RunContext {
  rmfm::config::ExperimentConfig cfg;
  std::vector<ResultRecord> records;
  bool hard_failure = false;

  void add(ResultRecord r) {
    if (r.status == Status::Failed) hard_failure = true;
    records.push_back(std::move(r));
  }
};

std::string default_out_dir() {
  const char* env = std::getenv("RMF_OUT_DIR");
  return env ? env : "";
}

void write_records(const RunContext& ctx) {
  std::string path = ctx.cfg.out_path;
  if (!path.empty() && !default_out_dir().empty() && path.find('/') == std::string::npos)
    path = default_out_dir() + "/" + path;
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output path: " + path);
    out = &file;
  }
  if (ctx.cfg.format == "csv")
    rmfm::records::emit_csv(ctx.records, *out);
  else
    rmfm::records::emit_jsonl(ctx.records, *out);
}

std::map<std::string, std::string> base_params(const std::string& kind, std::uint64_t n) {
  return {{"kind", kind}, {"N", std::to_string(n)}};
}

void run_sample(RunContext& ctx, std::uint64_t trial, const std::string& table_format,
                const std::string& table_path) {
  auto kind = rmfm::rmf::kind_from_name(ctx.cfg.kind);
  for (std::uint64_t n : ctx.cfg.n_values) {
    rmfm::arith::FactorSieve sieve(n);
    auto s = rmfm::rmf::sample_rmf(kind, n, {ctx.cfg.master_seed, trial}, sieve);
    std::string path = table_path.empty()
                           ? ("sample_" + ctx.cfg.kind + "_N" + std::to_string(n) + "." +
                              (table_format == "binary" ? "bin" : "tsv"))
                           : table_path;
    if (!default_out_dir().empty() && path.find('/') == std::string::npos)
      path = default_out_dir() + "/" + path;
    if (table_format == "binary") {
      std::ofstream f(path, std::ios::binary);
      for (Eigen::Index i = 0; i < s.values.size(); ++i) {
        double re = s.values(i).real(), im = s.values(i).imag();
        f.write(reinterpret_cast<const char*>(&re), sizeof re);
        f.write(reinterpret_cast<const char*>(&im), sizeof im);
      }
    } else {
      std::ofstream f(path);
      f.precision(17);
      f << "n\tre\tim\n";
      for (Eigen::Index i = 0; i < s.values.size(); ++i)
        f << (i + 1) << '\t' << s.values(i).real() << '\t' << s.values(i).imag() << '\n';
    }
    auto params = base_params(ctx.cfg.kind, n);
    params["trial"] = std::to_string(trial);
    params["table"] = path;
    bool ok = rmfm::rmf::verify_multiplicativity(s, 256);
    ctx.add(rmfm::records::make_record("sample", params, {ok ? 1.0 : 0.0, 0.0},
                                       ok ? Status::Exact : Status::Failed,
                                       ctx.cfg.master_seed));
  }
}

void run_moments(RunContext& ctx, const std::string& method, std::uint64_t trial) {
  auto kind = rmfm::rmf::kind_from_name(ctx.cfg.kind);
  for (std::uint64_t n : ctx.cfg.n_values) {
    rmfm::arith::FactorSieve sieve(n);
    auto s = rmfm::rmf::sample_rmf(kind, n, {ctx.cfg.master_seed, trial}, sieve);
    for (auto [j, k] : ctx.cfg.jk_pairs) {
      auto params = base_params(ctx.cfg.kind, n);
      params["j"] = std::to_string(j);
      params["k"] = std::to_string(k);
      params["trial"] = std::to_string(trial);
      auto emit_one = [&](const rmfm::poly::MomentResult& r) {
        params["method"] = rmfm::poly::method_name(r.method);
        ctx.add(rmfm::records::make_record("moment", params, r.value, Status::Exact,
                                           ctx.cfg.master_seed, r.error_bound));
      };
      try {
        if (method == "exact" || method == "both")
          emit_one(rmfm::poly::moment_exact(s, j, k, ctx.cfg.memory_cap));
        if (method == "grid" || method == "both") {
          std::size_t m = ctx.cfg.grid_min ? ctx.cfg.grid_min
                                           : rmfm::poly::default_grid_size(n, j, k);
          emit_one(rmfm::poly::moment_grid(s, j, k, m));
        }
      } catch (const std::length_error& e) {
        params["reason"] = e.what();
        ctx.add(rmfm::records::make_record("moment", params, {0.0, 0.0}, Status::Refused,
                                           ctx.cfg.master_seed));
      }
    }
  }
}

void run_counts(RunContext& ctx, const std::string& system, bool constrained) {
  auto kind = system == "square" ? rmfm::dcount::SystemKind::SquareProduct
                                 : rmfm::dcount::SystemKind::EqualProduct;
  for (std::uint64_t n : ctx.cfg.n_values) {
    for (auto [j, k] : ctx.cfg.jk_pairs) {
      std::map<std::string, std::string> params{
          {"kind", rmfm::dcount::system_name(kind)}, {"j", std::to_string(j)},
          {"k", std::to_string(k)},                  {"N", std::to_string(n)},
          {"constrained", constrained ? "true" : "false"}};
      try {
        auto sc = rmfm::dcount::count_system(kind, j, k, n, constrained,
                                             ctx.cfg.enumeration_budget);
        params["total"] = rmfm::arith::to_string_u128(sc.total);
        params["diagonal"] = rmfm::arith::to_string_u128(sc.diagonal);
        params["offdiagonal"] = rmfm::arith::to_string_u128(sc.offdiagonal);
        ctx.add(rmfm::records::make_record("count", params,
                                           {static_cast<double>(sc.total), 0.0}, Status::Exact,
                                           ctx.cfg.master_seed));
      } catch (const std::length_error& e) {
        params["reason"] = e.what();
        ctx.add(rmfm::records::make_record("count", params, {0.0, 0.0}, Status::Refused,
                                           ctx.cfg.master_seed));
      }
    }
  }
}

void run_identity(RunContext& ctx, const std::string& system) {
  auto kind = system == "square" ? rmfm::dcount::SystemKind::SquareProduct
                                 : rmfm::dcount::SystemKind::EqualProduct;
  for (std::uint64_t n : ctx.cfg.n_values) {
    for (auto [j, k] : ctx.cfg.jk_pairs) {
      auto rep = rmfm::dcount::expectation_identity_check(kind, j, k, n, ctx.cfg.trials,
                                                          ctx.cfg.master_seed);
      std::map<std::string, std::string> params{
          {"kind", rmfm::dcount::system_name(kind)},
          {"j", std::to_string(j)},
          {"k", std::to_string(k)},
          {"N", std::to_string(n)},
          {"exact_count", rmfm::arith::to_string_u128(rep.exact_count)},
          {"z_re", std::to_string(rep.z_re)},
          {"trials", std::to_string(ctx.cfg.trials)}};
      bool pass = std::abs(rep.z_re) <= ctx.cfg.soft_tolerance &&
                  std::abs(rep.z_im) <= ctx.cfg.soft_tolerance;
      ctx.add(rmfm::records::make_record("identity", params,
                                         {rep.mc_scaled_mean, 0.0},
                                         pass ? Status::StatisticalPass : Status::Failed,
                                         ctx.cfg.master_seed, rep.mc_scaled_se));
    }
  }
}

void run_clt(RunContext& ctx, std::size_t grid, int q, double threshold) {
  auto kind = rmfm::rmf::kind_from_name(ctx.cfg.kind);
  for (std::uint64_t n : ctx.cfg.n_values) {
    rmfm::arith::FactorSieve sieve(n);
    auto s = rmfm::rmf::sample_rmf(kind, n, {ctx.cfg.master_seed, 0}, sieve);
    auto rep = rmfm::stats::clt_empirical(rmfm::poly::coeffs_from_sample(s), grid, q);
    auto params = base_params(ctx.cfg.kind, n);
    params["grid"] = std::to_string(grid);
    params["q"] = std::to_string(q);
    // Almost-sure limit: not falsifiable at finite N, so soft either way
    // unless it exceeds the configured threshold outright.
    Status st = rep.sup_discrepancy <= threshold ? Status::StatisticalSoft : Status::Failed;
    ctx.add(rmfm::records::make_record("clt_sup_discrepancy", params,
                                       {rep.sup_discrepancy, 0.0}, st, ctx.cfg.master_seed));
  }
}

void run_supnorm(RunContext& ctx) {
  auto kind = rmfm::rmf::kind_from_name(ctx.cfg.kind);
  for (std::uint64_t n : ctx.cfg.n_values) {
    auto s = rmfm::stats::supnorm_ensemble(kind, n, ctx.cfg.trials, ctx.cfg.master_seed,
                                           ctx.cfg.grid_min);
    auto params = base_params(ctx.cfg.kind, n);
    params["trials"] = std::to_string(ctx.cfg.trials);
    params["window_lower"] = std::to_string(s.window_lower);
    params["window_upper"] = std::to_string(s.window_upper);
    ctx.add(rmfm::records::make_record(
        "supnorm_fraction_inside", params, {s.fraction_inside, 0.0},
        s.fraction_inside == 1.0 ? Status::StatisticalSoft : Status::Failed,
        ctx.cfg.master_seed));
    params["sqrt_log_N"] = std::to_string(s.sqrt_log_n);
    ctx.add(rmfm::records::make_record("supnorm_median_certified", params,
                                       {s.median_certified, 0.0}, Status::ReportOnly,
                                       ctx.cfg.master_seed));
  }
}

void run_longtail(RunContext& ctx) {
  auto kind = rmfm::rmf::kind_from_name(ctx.cfg.kind);
  for (std::uint64_t n : ctx.cfg.n_values) {
    for (auto [j, k] : ctx.cfg.jk_pairs) {
      (void)j;
      auto rep = rmfm::stats::longtail_compare(kind, n, k, ctx.cfg.trials, ctx.cfg.master_seed);
      auto params = base_params(ctx.cfg.kind, n);
      params["k"] = std::to_string(k);
      params["trials"] = std::to_string(ctx.cfg.trials);
      params["E_moment"] = std::to_string(rep.moment.mean.real());
      params["E_point_mass"] = std::to_string(rep.point_mass.mean.real());
      params["variance_ratio"] = std::to_string(rep.variance_ratio);
      ctx.add(rmfm::records::make_record(
          "longtail_ratio", params, {rep.ratio, 0.0},
          rep.inequality_holds ? Status::StatisticalPass : Status::Failed,
          ctx.cfg.master_seed, rep.moment.se_re));
    }
  }
}

void run_validate(RunContext& ctx, int max_l) {
  std::uint64_t n = ctx.cfg.n_values.back();
  rmfm::arith::FactorSieve sieve(n);
  for (int l = 1; l <= max_l; ++l) {
    auto rep = rmfm::arith::divisor_sum_check(n, l, sieve);
    std::map<std::string, std::string> params{{"N", std::to_string(n)},
                                              {"l", std::to_string(l)},
                                              {"lhs", rmfm::arith::to_string_u128(rep.lhs)},
                                              {"rhs", std::to_string(rep.rhs)}};
    ctx.add(rmfm::records::make_record("divisor_sum_bound", params,
                                       {rep.holds ? 1.0 : 0.0, 0.0},
                                       rep.holds ? Status::Exact : Status::Failed,
                                       ctx.cfg.master_seed));
  }
  bool ineq = rmfm::arith::divisor_inequalities_check(n, max_l, sieve);
  ctx.add(rmfm::records::make_record("divisor_inequalities",
                                     {{"N", std::to_string(n)}, {"max_l", std::to_string(max_l)}},
                                     {ineq ? 1.0 : 0.0, 0.0},
                                     ineq ? Status::Exact : Status::Failed,
                                     ctx.cfg.master_seed));
}

std::vector<rmfm::arith::u64> parse_u64_list(const std::string& s) {
  std::vector<rmfm::arith::u64> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

int run_factorize(const std::string& triangular, const std::string& rectangular) {
  if (!triangular.empty()) {
    auto nu = parse_u64_list(triangular);
    auto b = rmfm::vw::triangular_factorize(nu);
    std::cout << "triangular array for (";
    for (std::size_t i = 0; i < nu.size(); ++i) std::cout << (i ? "," : "") << nu[i];
    std::cout << "):\n";
    for (int r = 1; r <= b.size; ++r) {
      for (int s = 1; s <= b.size; ++s) {
        if (s < r)
          std::cout << ". ";
        else
          std::cout << b.at(r, s) << ' ';
      }
      std::cout << '\n';
    }
  }
  if (!rectangular.empty()) {
    auto semi = rectangular.find(';');
    if (semi == std::string::npos) {
      std::cerr << "expected 'm1,m2;n1,n2'\n";
      return 2;
    }
    auto m = parse_u64_list(rectangular.substr(0, semi));
    auto n = parse_u64_list(rectangular.substr(semi + 1));
    auto a = rmfm::vw::rectangular_factorize(m, n);
    std::cout << "rectangular array for rows=(";
    for (std::size_t i = 0; i < m.size(); ++i) std::cout << (i ? "," : "") << m[i];
    std::cout << ") cols=(";
    for (std::size_t i = 0; i < n.size(); ++i) std::cout << (i ? "," : "") << n[i];
    std::cout << "):\n";
    for (int r = 0; r < a.rows; ++r) {
      for (int s = 0; s < a.cols; ++s) std::cout << a.at(r, s) << ' ';
      std::cout << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random multiplicative function polynomial experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path, format, kind, n_list, jk_list;
  std::uint64_t seed = 0;
  bool have_seed = false;
  int threads = -1, trials = 0;
  bool override_budget = false;

  app.add_option("--config", config_path, "experiment config file");
  app.add_option_function<std::uint64_t>(
         "--seed", [&](std::uint64_t v) { seed = v; have_seed = true; }, "master seed");
  app.add_option("--out", out_path, "output path for records");
  app.add_option("--format", format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_flag("--override-budget", override_budget, "lift the enumeration budget cap");
  app.add_option("--kind", kind, "rademacher|steinhaus")
      ->check(CLI::IsMember({"rademacher", "steinhaus"}));
  app.add_option("--N", n_list, "comma-separated N values");
  app.add_option("--jk", jk_list, "comma-separated j:k pairs");
  app.add_option("--trials", trials, "Monte Carlo trials");

  auto* c_sample = app.add_subcommand("sample", "draw a sample and export its value table");
  std::uint64_t trial = 0;
  std::string table_format = "text", table_path;
  c_sample->add_option("--trial", trial, "trial index");
  c_sample->add_option("--table-format", table_format, "text|binary")
      ->check(CLI::IsMember({"text", "binary"}));
  c_sample->add_option("--table-out", table_path, "value table path");

  auto* c_moments = app.add_subcommand("moments", "unit-circle moments of one sample");
  std::string method = "both";
  c_moments->add_option("--method", method, "exact|grid|both")
      ->check(CLI::IsMember({"exact", "grid", "both"}));
  c_moments->add_option("--trial", trial, "trial index");

  auto* c_counts = app.add_subcommand("counts", "exact Diophantine system counts");
  std::string system = "equal";
  bool constrained = true, unconstrained = false;
  c_counts->add_option("--system", system, "square|equal")
      ->check(CLI::IsMember({"square", "equal"}));
  c_counts->add_flag("--unconstrained", unconstrained, "drop the balanced-sum equation");

  auto* c_identity = app.add_subcommand("identity", "expectation-count identity check");
  c_identity->add_option("--system", system, "square|equal")
      ->check(CLI::IsMember({"square", "equal"}));

  auto* c_clt = app.add_subcommand("clt", "value-distribution test against the Gaussian");
  std::size_t clt_grid = std::size_t{1} << 17;
  int clt_q = 9;
  double clt_threshold = 0.02;
  c_clt->add_option("--grid", clt_grid, "evaluation grid size");
  c_clt->add_option("--q", clt_q, "quantile cells per axis");
  c_clt->add_option("--threshold", clt_threshold, "sup-discrepancy threshold");

  auto* c_supnorm = app.add_subcommand("supnorm", "certified sup-norm ensemble");
  auto* c_longtail = app.add_subcommand("longtail", "moments vs point mass at theta=0");
  auto* c_validate = app.add_subcommand("validate", "divisor-function validators");
  int max_l = 4;
  c_validate->add_option("--max-l", max_l, "largest divisor order");

  auto* c_factorize = app.add_subcommand("factorize", "factorization array demos");
  std::string triangular, rectangular;
  c_factorize->add_option("--triangular", triangular, "nu list, e.g. 2,8");
  c_factorize->add_option("--rectangular", rectangular, "m;n lists, e.g. 4,9;6,6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunContext ctx;
  try {
    if (!config_path.empty()) ctx.cfg = rmfm::config::load_config(config_path);
    if (have_seed) ctx.cfg.master_seed = seed;
    if (!out_path.empty()) ctx.cfg.out_path = out_path;
    if (!format.empty()) ctx.cfg.format = format;
    if (threads >= 0) ctx.cfg.threads = threads;
    if (!kind.empty()) ctx.cfg.kind = kind;
    if (trials > 0) ctx.cfg.trials = trials;
    if (!n_list.empty()) {
      ctx.cfg.n_values = parse_u64_list(n_list);
      if (!std::is_sorted(ctx.cfg.n_values.begin(), ctx.cfg.n_values.end()))
        throw std::invalid_argument("config: n_values must be ascending");
    }
    if (!jk_list.empty()) {
      ctx.cfg.jk_pairs.clear();
      std::stringstream ss(jk_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("config: jk pair must be j:k");
        ctx.cfg.jk_pairs.emplace_back(std::stoi(tok.substr(0, colon)),
                                      std::stoi(tok.substr(colon + 1)));
      }
    }
    if (override_budget) ctx.cfg.enumeration_budget = ~std::uint64_t{0};
    rmfm::stats::set_num_threads(ctx.cfg.threads);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*c_factorize) return run_factorize(triangular, rectangular);
    if (*c_sample) run_sample(ctx, trial, table_format, table_path);
    if (*c_moments) run_moments(ctx, method, trial);
    if (*c_counts) run_counts(ctx, system, constrained && !unconstrained);
    if (*c_identity) run_identity(ctx, system);
    if (*c_clt) run_clt(ctx, clt_grid, clt_q, clt_threshold);
    if (*c_supnorm) run_supnorm(ctx);
    if (*c_longtail) run_longtail(ctx);
    if (*c_validate) run_validate(ctx, max_l);
    write_records(ctx);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return ctx.hard_failure ? 1 : 0;
}
