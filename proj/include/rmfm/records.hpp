#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Machine-readable result records. CSV columns and JSON-lines field names
// are identical; complex values are always split into re/im; the timestamp
// is an isolated field so determinism is testable by excluding it.

namespace rmfm::records {

enum class Status { Exact, StatisticalPass, StatisticalSoft, ReportOnly, Refused, Failed };

const char* status_name(Status s);
Status status_from_name(const std::string& name);

struct ResultRecord {
  std::string name;
  std::map<std::string, std::string> params;
  double value_re = 0.0;
  double value_im = 0.0;
  std::optional<double> stderr_value;
  Status status = Status::ReportOnly;
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO-8601 UTC; empty allowed

  bool operator==(const ResultRecord&) const = default;
};

ResultRecord make_record(std::string name, std::map<std::string, std::string> params,
                         std::complex<double> value, Status status, std::uint64_t seed,
                         std::optional<double> se = std::nullopt);

void emit_csv(const std::vector<ResultRecord>& recs, std::ostream& out);
void emit_jsonl(const std::vector<ResultRecord>& recs, std::ostream& out);
std::vector<ResultRecord> parse_jsonl(std::istream& in);

std::string now_utc_iso8601();

}  // namespace rmfm::records
