#include "esdl/verify/cache.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace esdl {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0')
    throw std::runtime_error("singular_from_csv: bad number '" + s + "'");
  return v;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string singular_to_csv(const FamilyParams& params, const SingularData& data) {
  const Complex dir = std::polar(1.0, std::acos(-1.0) / params.p());
  std::string out = "# p=" + std::to_string(params.p()) + "\n# lambda=" + fmt(params.lambda()) +
                    "\n# t_max=" + fmt(data.t_max) + "\n# max_imag_residual=" + fmt(data.max_imag_residual) +
                    "\nkind,t,z_re,z_im,f_value\n";
  auto row = [&](const char* kind, double t, double value) {
    const Complex z = t * dir;
    out += std::string(kind) + "," + fmt(t) + "," + fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(value) + "\n";
  };
  for (double t : data.zeros_t)
    row("zero", t, 0.0);
  for (std::size_t i = 0; i < data.crit_t.size(); ++i)
    row("critical", data.crit_t[i], data.crit_values[i]);
  return out;
}

SingularData singular_from_csv(const std::string& text) {
  SingularData data;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        continue;
      const std::string key = line.substr(2, eq - 2);
      if (key == "t_max")
        data.t_max = to_double(line.substr(eq + 1));
      else if (key == "max_imag_residual")
        data.max_imag_residual = to_double(line.substr(eq + 1));
      continue;
    }
    if (!header) {
      if (line != "kind,t,z_re,z_im,f_value")
        throw std::runtime_error("singular_from_csv: missing column header");
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cells.push_back(cell);
    if (cells.size() != 5)
      throw std::runtime_error("singular_from_csv: expected 5 columns");
    if (cells[0] == "zero") {
      data.zeros_t.push_back(to_double(cells[1]));
    } else if (cells[0] == "critical") {
      data.crit_t.push_back(to_double(cells[1]));
      data.crit_values.push_back(to_double(cells[4]));
    } else {
      throw std::runtime_error("singular_from_csv: unknown row kind '" + cells[0] + "'");
    }
  }
  if (!header)
    throw std::runtime_error("singular_from_csv: missing column header");
  return data;
}

std::string singular_cache_name(const FamilyParams& params, double t_max) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "singular_p%d_l%a_t%a.csv", params.p(), params.lambda(), t_max);
  return buf;
}

SingularData cached_singular_data(const FamilyParams& params, double t_max, const std::string& dir) {
  if (dir.empty())
    return singular_data(params, t_max);
  namespace fs = std::filesystem;
  const fs::path path = fs::path(dir) / singular_cache_name(params, t_max);
  if (fs::exists(path)) {
    try {
      return singular_from_csv(read_text(path));
    } catch (const std::runtime_error&) {
      // Corrupt entry: recompute and overwrite below.
    }
  }
  SingularData data = singular_data(params, t_max);
  fs::create_directories(dir);
  const fs::path tmp = path.string() + ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp);
    if (!out)
      throw std::runtime_error("cannot write cache file " + tmp.string());
    out << singular_to_csv(params, data);
  }
  fs::rename(tmp, path);
  return data;
}

}  // namespace esdl
