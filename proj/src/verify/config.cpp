#include "esdl/verify/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "esdl/plane_geometry.hpp"

namespace esdl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw ConfigError("'" + key + "' expects a finite number, got '" + t + "'");
  return v;
}

long parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("'" + key + "' expects an integer, got '" + t + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    parts.push_back(trim(item));
  return parts;
}

}  // namespace

void RunConfig::validate() const {
  if (p < 3)
    throw ConfigError("p ≥ 3");
  if (!(lambda != 0.0 && std::isfinite(lambda)))
    throw ConfigError("λ ∈ ℝ*");
  if (nu && !(*nu > 0.0))
    throw ConfigError("nu > 0");
  if (q && !(*q >= PartitionConfig::min_q(p) * (1.0 - 1e-12)))
    throw ConfigError("q ≥ log(32p)/(2 sin(π/p)) = " + std::to_string(PartitionConfig::min_q(p)));
  if (R && !(*R > 0.0))
    throw ConfigError("escape_radius > 0");
  if (budget < 3)
    throw ConfigError("budget ≥ 3");
  if (!(viewport.x0 < viewport.x1 && viewport.y0 < viewport.y1))
    throw ConfigError("viewport needs x0 < x1 and y0 < y1");
  if (px_w < 16 || px_w > 16384 || px_h < 16 || px_h > 16384)
    throw ConfigError("resolution in [16, 16384]");
  if (!(t_max > 0.0))
    throw ConfigError("t_max > 0");
}

double RunConfig::escape_radius() const { return R ? *R : find_escape_radius(family()); }

std::string RunConfig::effective_cache_dir() const {
  if (const char* env = std::getenv("ESDL_CACHE_DIR"); env && *env)
    return env;
  return cache_dir;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "p") {
    c.p = static_cast<int>(parse_int(key, value));
  } else if (key == "lambda") {
    c.lambda = parse_double(key, value);
  } else if (key == "nu") {
    c.nu = parse_double(key, value);
  } else if (key == "q") {
    c.q = parse_double(key, value);
  } else if (key == "escape_radius") {
    c.R = parse_double(key, value);
  } else if (key == "budget") {
    c.budget = static_cast<int>(parse_int(key, value));
  } else if (key == "viewport") {
    const auto parts = split(value, ',');
    if (parts.size() != 4)
      throw ConfigError("'viewport' expects x0,x1,y0,y1");
    c.viewport = {parse_double(key, parts[0]), parse_double(key, parts[1]), parse_double(key, parts[2]),
                  parse_double(key, parts[3])};
  } else if (key == "resolution") {
    const std::string v = trim(value);
    const auto x = v.find_first_of("xX");
    if (x == std::string::npos) {
      c.px_w = c.px_h = static_cast<int>(parse_int(key, v));
    } else {
      c.px_w = static_cast<int>(parse_int(key, v.substr(0, x)));
      c.px_h = static_cast<int>(parse_int(key, v.substr(x + 1)));
    }
  } else if (key == "t_max") {
    c.t_max = parse_double(key, value);
  } else if (key == "out") {
    c.out_dir = trim(value);
  } else if (key == "cache") {
    c.cache_dir = trim(value);
  } else if (key == "threads") {
    const long t = parse_int(key, value);
    if (t < 0)
      throw ConfigError("threads ≥ 0");
    c.threads = static_cast<unsigned>(t);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    try {
      apply_setting(base, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line_no);
    }
  }
  base.validate();
  return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

}  // namespace esdl
