#include "rmfm/records.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rmfm::records {

const char* status_name(Status s) {
  switch (s) {
    case Status::Exact: return "exact";
    case Status::StatisticalPass: return "statistical-pass";
    case Status::StatisticalSoft: return "statistical-soft";
    case Status::ReportOnly: return "report-only";
    case Status::Refused: return "refused";
    case Status::Failed: return "failed";
  }
  return "unknown";
}

Status status_from_name(const std::string& name) {
  for (Status s : {Status::Exact, Status::StatisticalPass, Status::StatisticalSoft,
                   Status::ReportOnly, Status::Refused, Status::Failed})
    if (name == status_name(s)) return s;
  throw std::invalid_argument("unknown status: " + name);
}

ResultRecord make_record(std::string name, std::map<std::string, std::string> params,
                         std::complex<double> value, Status status, std::uint64_t seed,
                         std::optional<double> se) {
  ResultRecord r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.value_re = value.real();
  r.value_im = value.imag();
  r.stderr_value = se;
  r.status = status;
  r.seed = seed;
  r.timestamp = now_utc_iso8601();
  return r;
}

std::string now_utc_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string params_joined(const std::map<std::string, std::string>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + "=" + v;
  }
  return s;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void emit_csv(const std::vector<ResultRecord>& recs, std::ostream& out) {
  out << "name,params,value_re,value_im,stderr,status,seed,timestamp\n";
  out.precision(17);
  for (const auto& r : recs) {
    out << csv_escape(r.name) << ',' << csv_escape(params_joined(r.params)) << ',' << r.value_re
        << ',' << r.value_im << ',';
    if (r.stderr_value) out << *r.stderr_value;
    out << ',' << status_name(r.status) << ',' << r.seed << ',' << r.timestamp << '\n';
  }
}

void emit_jsonl(const std::vector<ResultRecord>& recs, std::ostream& out) {
  for (const auto& r : recs) {
    nlohmann::json j;
    j["name"] = r.name;
    j["params"] = r.params;
    j["value_re"] = r.value_re;
    j["value_im"] = r.value_im;
    if (r.stderr_value)
      j["stderr"] = *r.stderr_value;
    else
      j["stderr"] = nullptr;
    j["status"] = status_name(r.status);
    j["seed"] = r.seed;
    j["timestamp"] = r.timestamp;
    out << j.dump() << '\n';
  }
}

std::vector<ResultRecord> parse_jsonl(std::istream& in) {
  std::vector<ResultRecord> recs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    ResultRecord r;
    r.name = j.at("name").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.value_re = j.at("value_re").get<double>();
    r.value_im = j.at("value_im").get<double>();
    if (!j.at("stderr").is_null()) r.stderr_value = j.at("stderr").get<double>();
    r.status = status_from_name(j.at("status").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.timestamp = j.at("timestamp").get<std::string>();
    recs.push_back(std::move(r));
  }
  return recs;
}

}  // namespace rmfm::records
