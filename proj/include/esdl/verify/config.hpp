#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "esdl/eval_core.hpp"
#include "esdl/grid.hpp"

namespace esdl {

// Raised for malformed config text (carries the 1-based line number) and for
// constraint violations (message names the violated constraint).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Viewport {
  double x0 = -20.0, x1 = 20.0, y0 = -20.0, y1 = 20.0;
};

struct RunConfig {
  int p = 4;
  double lambda = 1.0;
  std::optional<double> nu;  // estimated when absent
  std::optional<double> q;   // lower bound when absent
  std::optional<double> R;   // find_escape_radius when absent
  int budget = 24;
  Viewport viewport;
  int px_w = 512;
  int px_h = 512;
  double t_max = 60.0;
  std::string out_dir;    // empty: reports are not written
  std::string cache_dir;  // empty: no singular-set cache
  unsigned threads = 0;   // 0: hardware concurrency

  // Throws ConfigError naming the first violated constraint.
  void validate() const;

  FamilyParams family() const { return {p, lambda}; }
  GridSpec grid() const { return GridSpec::from_bounds(viewport.x0, viewport.x1, viewport.y0, viewport.y1, px_w, px_h); }
  double escape_radius() const;
  // ESDL_CACHE_DIR when set and nonempty, cache_dir otherwise.
  std::string effective_cache_dir() const;
};

// Applies one setting. Keys: p, lambda, nu, q, escape_radius, budget,
// viewport ("x0,x1,y0,y1"), resolution ("N" or "WxH"), t_max, out, cache,
// threads. Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

// `key = value` lines, `#` starts a comment, blank lines ignored. Settings are
// applied on top of base; the result is validated.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

}  // namespace esdl
