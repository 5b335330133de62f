#include "cli/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ratelab/errors.hpp"

namespace ratelab::cli {

namespace {

constexpr double kExactTol = 1e-12;

[[noreturn]] void invalid(const std::string& why) {
  throw ConfigError("record invalid: " + why);
}

double get_num(const Record& r, const char* key) {
  if (!r.contains(key) || !r.at(key).is_number()) {
    invalid(std::string("missing numeric field '") + key + "'");
  }
  double v = r.at(key).get<double>();
  if (!std::isfinite(v)) invalid(std::string("field '") + key + "' is not finite");
  return v;
}

bool get_flag(const Record& r, const char* key) {
  if (!r.contains(key) || !r.at(key).is_boolean()) {
    invalid(std::string("missing boolean field '") + key + "'");
  }
  return r.at(key).get<bool>();
}

std::string get_str(const Record& r, const char* key) {
  if (!r.contains(key) || !r.at(key).is_string()) {
    invalid(std::string("missing string field '") + key + "'");
  }
  return r.at(key).get<std::string>();
}

void validate_identity(const Record& r) {
  get_str(r, "name");
  std::string relation = get_str(r, "relation");
  if (relation != "eq" && relation != "le") invalid("relation must be 'eq' or 'le'");
  double lhs = get_num(r, "lhs");
  double rhs = get_num(r, "rhs");
  double tol = get_num(r, "tol");
  if (tol < 0) invalid("tol must be nonnegative");
  bool expected =
      relation == "eq" ? std::fabs(lhs - rhs) <= tol : lhs <= rhs + tol;
  if (get_flag(r, "pass") != expected) invalid("identity verdict does not re-derive");
}

void validate_check(const Record& r) {
  get_str(r, "name");
  if (!r.contains("config") || !r.at("config").is_object()) invalid("missing config object");
  for (const auto& [key, value] : r.at("config").items()) {
    if (!value.is_number()) invalid("config entry '" + key + "' is not numeric");
  }
  EstimateWithError lhs{get_num(r, "lhs"), get_num(r, "lhs_stderr")};
  double rhs = get_num(r, "rhs");
  double slack = get_num(r, "slack_sigmas");
  bool expected = bound_verdict(lhs, rhs, slack);
  if (get_flag(r, "has_oracle")) {
    double oracle = get_num(r, "oracle_lhs");
    if (!(oracle <= rhs + kExactTol)) expected = false;
  }
  const auto& config = r.at("config");
  if (config.contains("lower")) {
    if (!(config.at("lower").get<double>() <= lhs.estimate + kExactTol)) expected = false;
  }
  get_flag(r, "oracle_agrees");
  if (get_flag(r, "pass") != expected) invalid("check verdict does not re-derive");
}

void validate_curve(const Record& r) {
  get_str(r, "model");
  std::string rule = get_str(r, "pass_rule");
  if (rule != "slope-band" && rule != "tail-trend") {
    invalid("pass_rule must be 'slope-band' or 'tail-trend'");
  }
  double band = get_num(r, "band");
  double slope = get_num(r, "slope");
  get_num(r, "slope_stderr");
  double predicted = get_num(r, "predicted");
  bool trend = get_flag(r, "tail_trend_decreasing");
  if (!r.contains("points") || !r.at("points").is_array() || r.at("points").size() < 2) {
    invalid("curve needs at least two points");
  }
  int prev_n = 0;
  for (const auto& p : r.at("points")) {
    if (!p.is_object()) invalid("curve point is not an object");
    Record point = p;
    double n = get_num(point, "n");
    if (n <= prev_n) invalid("curve sizes must be strictly increasing");
    prev_n = static_cast<int>(n);
    if (!(get_num(point, "epsilon_n") > 0)) invalid("epsilon_n must be positive");
    if (get_num(point, "tail_median") < 0) invalid("tail_median must be nonnegative");
    if (!(get_num(point, "radius_q90") > 0)) invalid("radius_q90 must be positive");
    if (get_num(point, "min_ess") < 0) invalid("min_ess must be nonnegative");
  }
  bool expected = rule == "slope-band" ? std::fabs(slope - predicted) <= band : trend;
  if (get_flag(r, "pass") != expected) invalid("curve verdict does not re-derive");
}

}  // namespace

Record identity_record(const std::string& name, const std::string& relation, double lhs,
                       double rhs, double tol) {
  bool pass = relation == "eq" ? std::fabs(lhs - rhs) <= tol : lhs <= rhs + tol;
  Record r;
  r["type"] = "identity";
  r["name"] = name;
  r["relation"] = relation;
  r["lhs"] = lhs;
  r["rhs"] = rhs;
  r["tol"] = tol;
  r["pass"] = pass;
  return r;
}

Record check_record(const BoundCheck& check) {
  Record r;
  r["type"] = "check";
  r["name"] = check.name;
  Record config;
  for (const auto& [key, value] : check.config) config[key] = value;
  r["config"] = std::move(config);
  r["lhs"] = check.lhs.estimate;
  r["lhs_stderr"] = check.lhs.stderr_;
  r["rhs"] = check.rhs;
  r["slack_sigmas"] = check.slack_sigmas;
  r["has_oracle"] = check.has_oracle;
  r["oracle_lhs"] = check.has_oracle ? check.oracle_lhs : 0.0;
  r["oracle_agrees"] = check.oracle_agrees;
  r["pass"] = check.pass;
  return r;
}

Record curve_record(const std::string& model, const RateCurve& curve,
                    const std::string& pass_rule, double band) {
  bool pass = pass_rule == "slope-band" ? std::fabs(curve.slope - curve.predicted) <= band
                                        : curve.tail_trend_decreasing;
  Record r;
  r["type"] = "curve";
  r["model"] = model;
  r["pass_rule"] = pass_rule;
  r["band"] = band;
  r["slope"] = curve.slope;
  r["slope_stderr"] = curve.slope_stderr;
  r["predicted"] = curve.predicted;
  r["tail_trend_decreasing"] = curve.tail_trend_decreasing;
  r["pass"] = pass;
  Record points = Record::array();
  for (const RatePoint& p : curve.points) {
    Record point;
    point["n"] = p.n;
    point["epsilon_n"] = p.epsilon_n;
    point["tail_median"] = p.tail_median;
    point["radius_q90"] = p.radius_q90_median;
    point["min_ess"] = p.min_ess;
    points.push_back(std::move(point));
  }
  r["points"] = std::move(points);
  return r;
}

void validate_record(const Record& record) {
  if (!record.is_object()) invalid("not an object");
  std::string type = get_str(record, "type");
  if (type == "identity") {
    validate_identity(record);
  } else if (type == "check") {
    validate_check(record);
  } else if (type == "curve") {
    validate_curve(record);
  } else {
    invalid("unknown record type '" + type + "'");
  }
}

bool record_pass(const Record& record) { return get_flag(record, "pass"); }

void write_jsonl(const std::string& path, const std::vector<Record>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  for (const Record& r : records) out << r.dump() << '\n';
}

std::vector<Record> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<Record> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Record r = Record::parse(line, nullptr, false);
    if (r.is_discarded()) {
      throw ConfigError(path + " line " + std::to_string(lineno) + ": not valid JSON");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_curve_csv(const std::string& path, const std::string& model,
                     const RateCurve& curve) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "model,n,epsilon_n,tail_median,radius_q90_median,min_ess\n";
  for (const RatePoint& p : curve.points) {
    out << model << ',' << p.n << ',' << format_double(p.epsilon_n) << ','
        << format_double(p.tail_median) << ',' << format_double(p.radius_q90_median) << ','
        << format_double(p.min_ess) << '\n';
  }
}

std::vector<CurveCsvRow> read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "model,n,epsilon_n,tail_median,radius_q90_median,min_ess") {
    throw ConfigError(path + ": unexpected CSV header");
  }
  std::vector<CurveCsvRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) {
      throw ConfigError(path + " line " + std::to_string(lineno) + ": expected 6 fields");
    }
    try {
      CurveCsvRow row;
      row.model = cells[0];
      std::size_t used = 0;
      row.n = std::stoi(cells[1], &used);
      if (used != cells[1].size()) throw std::invalid_argument(cells[1]);
      row.epsilon_n = std::stod(cells[2]);
      row.tail_median = std::stod(cells[3]);
      row.radius_q90_median = std::stod(cells[4]);
      row.min_ess = std::stod(cells[5]);
      rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw ConfigError(path + " line " + std::to_string(lineno) + ": numeric parse failure");
    }
  }
  return rows;
}

}  // namespace ratelab::cli
