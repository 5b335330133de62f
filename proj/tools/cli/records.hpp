#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ratelab/verifier.hpp"

namespace ratelab::cli {

using Record = nlohmann::ordered_json;

// Identity record: an equality (`relation` "eq") or one-sided inequality
// ("le") between two independently computed quantities.
Record identity_record(const std::string& name, const std::string& relation, double lhs,
                       double rhs, double tol);

Record check_record(const BoundCheck& check);

// Curve record; `pass_rule` is "slope-band" (|slope - predicted| <= band)
// or "tail-trend" (tail medians non-increasing with an overall drop).
Record curve_record(const std::string& model, const RateCurve& curve,
                    const std::string& pass_rule, double band);

// Re-derives a record's verdict from its own fields and throws ConfigError
// when the record is malformed or the stored verdict does not match.
void validate_record(const Record& record);

bool record_pass(const Record& record);

void write_jsonl(const std::string& path, const std::vector<Record>& records);
std::vector<Record> read_jsonl(const std::string& path);

struct CurveCsvRow {
  std::string model;
  int n = 0;
  double epsilon_n = 0;
  double tail_median = 0;
  double radius_q90_median = 0;
  double min_ess = 0;
};

void write_curve_csv(const std::string& path, const std::string& model, const RateCurve& curve);
std::vector<CurveCsvRow> read_curve_csv(const std::string& path);

// Shortest-width decimal that round-trips a double exactly.
std::string format_double(double v);

}  // namespace ratelab::cli
