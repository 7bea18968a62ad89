#pragma once

#include <map>
#include <string>
#include <vector>

namespace esdl {

enum class CheckStatus { Pass, Fail, Skipped };
const char* to_string(CheckStatus s);

// How a metric is compared with its bound.
enum class BoundKind { AtMost, Below, AtLeast, Above };

struct Bound {
  BoundKind kind = BoundKind::AtMost;
  double value = 0.0;
  bool holds(double metric) const;
};

struct VerificationReport {
  std::string check_id;
  int p = 0;
  double lambda = 0.0;
  CheckStatus status = CheckStatus::Skipped;
  std::map<std::string, double> metrics;
  // Metrics named here decide the status; the others are informational.
  std::map<std::string, Bound> bounds;
  std::string notes;

  void metric(const std::string& name, double value) { metrics[name] = value; }
  void bounded(const std::string& name, double value, BoundKind kind, double limit) {
    metrics[name] = value;
    bounds[name] = {kind, limit};
  }
  void note(const std::string& text) { notes += (notes.empty() ? "" : "; ") + text; }
  // PASS iff every bounded metric holds and no failure note was forced.
  void decide(bool forced_failure = false);
};

// Flat object: check_id, p, lambda, status, notes, then "metric.<name>" and
// "bound.<name>" (a string such as "<= 1e-08") per metric. Keys are sorted.
std::string to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& text);
// One row per metric: check_id,status,metric,value,bound.
std::string to_csv(const std::vector<VerificationReport>& reports);

// Writes <dir>/<check_id>.json, creating dir if needed.
void write_report(const VerificationReport& report, const std::string& dir);

}  // namespace esdl
