#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "esdl/verify/config.hpp"
#include "esdl/verify/report.hpp"

namespace esdl {

class UnknownCheckError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// All check ids in execution order.
const std::vector<std::string>& check_ids();

// Why the check does not apply to config (p parity, lambda range, the
// single member the basin check is about), or nullopt when it applies.
std::optional<std::string> skip_reason(const RunConfig& config, const std::string& check_id);

// Runs one check regardless of applicability; a check run outside its
// hypotheses reports what it measured and says so in the notes. Writes
// <out_dir>/<id>.json when config.out_dir is set. Throws UnknownCheckError
// and ConfigError before doing any work.
VerificationReport run_check(const RunConfig& config, const std::string& check_id);

// Every check, inapplicable ones reported as SKIPPED with the reason. With
// parallel set, independent checks run concurrently; the reports are the
// same and come back in check_ids() order.
std::vector<VerificationReport> run_all(const RunConfig& config, bool parallel = false);

// 0 iff no report is FAIL.
int exit_code(const std::vector<VerificationReport>& reports);

}  // namespace esdl
