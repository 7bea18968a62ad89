#include "esdl/verify/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace esdl {

namespace {

const char* symbol(BoundKind k) {
  switch (k) {
    case BoundKind::AtMost:
      return "<=";
    case BoundKind::Below:
      return "<";
    case BoundKind::AtLeast:
      return ">=";
    case BoundKind::Above:
      break;
  }
  return ">";
}

std::string format_bound(const Bound& b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s %.17g", symbol(b.kind), b.value);
  return buf;
}

Bound parse_bound(const std::string& s) {
  std::istringstream in(s);
  std::string op;
  double v = 0.0;
  in >> op >> v;
  if (op == "<=")
    return {BoundKind::AtMost, v};
  if (op == "<")
    return {BoundKind::Below, v};
  if (op == ">=")
    return {BoundKind::AtLeast, v};
  if (op == ">")
    return {BoundKind::Above, v};
  throw std::runtime_error("report_from_json: bad bound '" + s + "'");
}

CheckStatus parse_status(const std::string& s) {
  if (s == "PASS")
    return CheckStatus::Pass;
  if (s == "FAIL")
    return CheckStatus::Fail;
  if (s == "SKIPPED")
    return CheckStatus::Skipped;
  throw std::runtime_error("report_from_json: bad status '" + s + "'");
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skipped:
      break;
  }
  return "SKIPPED";
}

bool Bound::holds(double m) const {
  if (std::isnan(m))
    return false;
  switch (kind) {
    case BoundKind::AtMost:
      return m <= value;
    case BoundKind::Below:
      return m < value;
    case BoundKind::AtLeast:
      return m >= value;
    case BoundKind::Above:
      break;
  }
  return m > value;
}

void VerificationReport::decide(bool forced_failure) {
  bool ok = !forced_failure;
  for (const auto& [name, bound] : bounds) {
    const auto it = metrics.find(name);
    if (it == metrics.end() || !bound.holds(it->second))
      ok = false;
  }
  status = ok ? CheckStatus::Pass : CheckStatus::Fail;
}

std::string to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["check_id"] = r.check_id;
  j["p"] = r.p;
  j["lambda"] = r.lambda;
  j["status"] = to_string(r.status);
  j["notes"] = r.notes;
  for (const auto& [name, value] : r.metrics)
    j["metric." + name] = std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
  for (const auto& [name, bound] : r.bounds)
    j["bound." + name] = format_bound(bound);
  return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  VerificationReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.p = j.at("p").get<int>();
  r.lambda = j.at("lambda").get<double>();
  r.status = parse_status(j.at("status").get<std::string>());
  r.notes = j.at("notes").get<std::string>();
  for (const auto& [key, value] : j.items()) {
    if (key.starts_with("metric."))
      r.metrics[key.substr(7)] = value.is_null() ? std::nan("") : value.get<double>();
    else if (key.starts_with("bound."))
      r.bounds[key.substr(6)] = parse_bound(value.get<std::string>());
  }
  return r;
}

std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "check_id,status,metric,value,bound\n";
  char buf[64];
  for (const auto& r : reports) {
    if (r.metrics.empty())
      out += r.check_id + "," + to_string(r.status) + ",,,\n";
    for (const auto& [name, value] : r.metrics) {
      std::snprintf(buf, sizeof buf, "%.17g", value);
      const auto b = r.bounds.find(name);
      out += r.check_id + "," + to_string(r.status) + "," + name + "," + buf + "," +
             (b == r.bounds.end() ? std::string() : format_bound(b->second)) + "\n";
    }
  }
  return out;
}

void write_report(const VerificationReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / (report.check_id + ".json");
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << to_json(report);
}

}  // namespace esdl
