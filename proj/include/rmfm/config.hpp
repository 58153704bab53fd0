#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Flat key-value experiment configuration. The file format is one
// `key = value` per line, `#` comments, comma-separated lists, and
// `j:k` pairs; it round-trips losslessly through parse/serialize.

namespace rmfm::config {

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::string kind = "rademacher";  // rademacher | steinhaus
  std::vector<std::uint64_t> n_values = {16};
  std::vector<std::pair<int, int>> jk_pairs = {{1, 1}};
  int trials = 100;
  std::size_t grid_min = 0;  // 0 = automatic power-of-two policy
  std::string out_path;
  std::string format = "jsonl";  // csv | jsonl
  std::uint64_t enumeration_budget = 100'000'000;
  std::size_t memory_cap = std::size_t{1} << 26;
  double soft_tolerance = 4.0;  // standard-error band for soft checks
  int threads = 0;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace rmfm::config
