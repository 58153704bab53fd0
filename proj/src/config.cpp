#include "rmfm/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rmfm::config {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

[[noreturn]] void bad_field(const std::string& key, const std::string& value) {
  throw std::invalid_argument("config: invalid value '" + value + "' for field '" + key + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "master_seed") {
        cfg.master_seed = std::stoull(value);
      } else if (key == "kind") {
        if (value != "rademacher" && value != "steinhaus") bad_field(key, value);
        cfg.kind = value;
      } else if (key == "n_values") {
        cfg.n_values.clear();
        for (const auto& tok : split(value, ',')) cfg.n_values.push_back(std::stoull(tok));
        if (!std::is_sorted(cfg.n_values.begin(), cfg.n_values.end()))
          throw std::invalid_argument("config: n_values must be ascending");
      } else if (key == "jk_pairs") {
        cfg.jk_pairs.clear();
        for (const auto& tok : split(value, ',')) {
          auto colon = tok.find(':');
          if (colon == std::string::npos) bad_field(key, value);
          cfg.jk_pairs.emplace_back(std::stoi(tok.substr(0, colon)),
                                    std::stoi(tok.substr(colon + 1)));
        }
      } else if (key == "trials") {
        cfg.trials = std::stoi(value);
        if (cfg.trials < 1) bad_field(key, value);
      } else if (key == "grid_min") {
        cfg.grid_min = std::stoull(value);
      } else if (key == "out_path") {
        cfg.out_path = value;
      } else if (key == "format") {
        if (value != "csv" && value != "jsonl") bad_field(key, value);
        cfg.format = value;
      } else if (key == "enumeration_budget") {
        cfg.enumeration_budget = std::stoull(value);
        if (cfg.enumeration_budget == 0) bad_field(key, value);
      } else if (key == "memory_cap") {
        cfg.memory_cap = std::stoull(value);
        if (cfg.memory_cap == 0) bad_field(key, value);
      } else if (key == "soft_tolerance") {
        cfg.soft_tolerance = std::stod(value);
        if (cfg.soft_tolerance <= 0) bad_field(key, value);
      } else if (key == "threads") {
        cfg.threads = std::stoi(value);
      } else {
        throw std::invalid_argument("config: unknown field '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      bad_field(key, value);
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "master_seed = " << cfg.master_seed << '\n';
  out << "kind = " << cfg.kind << '\n';
  out << "n_values = ";
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i)
    out << (i ? "," : "") << cfg.n_values[i];
  out << '\n';
  out << "jk_pairs = ";
  for (std::size_t i = 0; i < cfg.jk_pairs.size(); ++i)
    out << (i ? "," : "") << cfg.jk_pairs[i].first << ':' << cfg.jk_pairs[i].second;
  out << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "grid_min = " << cfg.grid_min << '\n';
  out << "out_path = " << cfg.out_path << '\n';
  out << "format = " << cfg.format << '\n';
  out << "enumeration_budget = " << cfg.enumeration_budget << '\n';
  out << "memory_cap = " << cfg.memory_cap << '\n';
  out << "soft_tolerance = " << cfg.soft_tolerance << '\n';
  out << "threads = " << cfg.threads << '\n';
  return out.str();
}

}  // namespace rmfm::config
