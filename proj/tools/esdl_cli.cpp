// Command-line front end: rendering, orbit and singular-set tables, partition
// queries and the verification suite.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "esdl/grid_io.hpp"
#include "esdl/orbit_classifier.hpp"
#include "esdl/plane_geometry.hpp"
#include "esdl/raster.hpp"
#include "esdl/singular_set.hpp"
#include "esdl/verify/cache.hpp"
#include "esdl/verify/checks.hpp"

namespace {

using namespace esdl;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Complex parse_point(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos)
      return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw ConfigError("point expects 're' or 're,im', got '" + s + "'");
  }
}

// Flags that mirror RunConfig keys; applied after the config file.
struct SharedFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "key = value config file");
    static const std::pair<const char*, const char*> keys[] = {
        {"p", "number of exponential terms (>= 3)"},
        {"lambda", "coefficient (nonzero)"},
        {"nu", "polygon inradius (estimated when absent)"},
        {"q", "strip half-width (lower bound when absent)"},
        {"escape-radius", "R for the maximum-modulus ladder"},
        {"budget", "iteration budget"},
        {"viewport", "x0,x1,y0,y1"},
        {"resolution", "N or WxH pixels"},
        {"t-max", "search horizon on V_0"},
        {"out", "output directory"},
        {"cache", "singular-set cache directory"},
        {"threads", "worker threads (0 = all cores)"},
    };
    for (const auto& [flag, help] : keys) {
      std::string key = flag;
      std::replace(key.begin(), key.end(), '-', '_');
      app.add_option_function<std::string>(
          std::string("--") + flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config_path.empty())
      c = parse_config_file(config_path);
    for (const auto& [key, value] : values)
      apply_setting(c, key, value);
    c.validate();
    return c;
  }
};

std::string out_path(const RunConfig& c, const std::string& name) {
  const std::string dir = c.out_dir.empty() ? "." : c.out_dir;
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_render(const RunConfig& c, bool overlay) {
  const FamilyParams params = c.family();
  const GridSpec grid = c.grid();
  const Rendering r = render_classification(params, grid, c.budget, c.escape_radius(), c.threads);
  const std::string pgm = out_path(c, "classification.pgm");
  write_file(pgm, encode_image(r.image));
  write_file(out_path(c, "classification.esdl"), encode_grid(r.classes));
  std::cout << "wrote " << pgm << "\n";
  if (overlay) {
    PartitionConfig part =
        PartitionConfig::with_min_q(c.p, c.nu ? *c.nu
                                              : estimate_constants(params, default_nu_grid(), default_eps_grid(),
                                                                   10000, c.threads)
                                                    .nu_prime);
    if (c.q)
      part.q = *c.q;
    const std::string ppm = out_path(c, "overlay.ppm");
    write_file(ppm, encode_image(overlay_partition(r.image, grid, part)));
    std::cout << "wrote " << ppm << "\n";
  }
  return 0;
}

int cmd_orbit(const RunConfig& c, const std::string& point) {
  const OrbitContext ctx = OrbitContext::make(c.family(), c.budget, c.escape_radius());
  const OrbitRecord rec = classify_orbit(ctx, parse_point(point));
  std::cout << "n,re,im,log_abs\n";
  for (std::size_t n = 0; n < rec.points.size(); ++n) {
    const ScaledComplex& s = rec.points[n];
    // re and im stay empty once the iterate is beyond double range
    std::cout << n << ",";
    if (s.representable())
      std::cout << fmt(s.to_complex().real()) << "," << fmt(s.to_complex().imag());
    else
      std::cout << ",";
    std::cout << "," << fmt(s.log_abs()) << "\n";
  }
  std::cout << "# verdict=" << to_string(rec.verdict);
  if (rec.escape_entry)
    std::cout << " escape_entry=" << *rec.escape_entry;
  if (rec.fast_level)
    std::cout << " fast_level=" << *rec.fast_level;
  std::cout << "\n";
  return 0;
}

int cmd_singular(const RunConfig& c, int seeds) {
  const FamilyParams params = c.family();
  const SingularData data = cached_singular_data(params, c.t_max, c.effective_cache_dir());
  const std::string csv = out_path(c, "singular.csv");
  write_text(csv, singular_to_csv(params, data));
  std::cout << "wrote " << csv << " (" << data.zeros_t.size() << " zeros, " << data.crit_t.size()
            << " critical points)\n";
  std::vector<double> values = data.crit_values;
  if (values.size() > static_cast<std::size_t>(seeds))
    values.resize(seeds);
  const PostsingularOrbit orbit = iterate_real_seeds(params, values, c.budget);
  std::cout << "seed,verdict,steps,last_log_abs\n";
  for (std::size_t i = 0; i < orbit.seeds.size(); ++i)
    std::cout << fmt(orbit.seeds[i]) << "," << to_string(orbit.verdicts[i]) << ","
              << orbit.trajectories[i].size() - 1 << "," << fmt(orbit.trajectories[i].back().log_abs) << "\n";
  return 0;
}

int cmd_regions(const RunConfig& c, const std::vector<std::string>& points) {
  const FamilyParams params = c.family();
  PartitionConfig part = PartitionConfig::with_min_q(
      c.p, c.nu ? *c.nu
                : estimate_constants(params, default_nu_grid(), default_eps_grid(), 10000, c.threads).nu_prime);
  if (c.q)
    part.q = *c.q;
  part.validate();
  std::cout << "# p=" << part.p << " nu=" << fmt(part.nu) << " q=" << fmt(part.q) << "\n";
  for (const Complex v : polygon_vertices(part))
    std::cout << "# vertex " << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
  std::cout << "re,im,region,dist_to_rays\n";
  for (const auto& s : points) {
    const Complex z = parse_point(s);
    std::cout << fmt(z.real()) << "," << fmt(z.imag()) << "," << classify_point(part, z).to_string() << ","
              << fmt(dist_to_rays(c.p, z)) << "\n";
  }
  return 0;
}

int cmd_fixed_points(const RunConfig& c, double a, double b) {
  std::cout << "x_star,multiplier,kind,residual\n";
  for (const RealFixedPoint& fp : real_fixed_points(c.family(), a, b))
    std::cout << fmt(fp.x_star) << "," << fmt(fp.multiplier) << "," << to_string(fp.kind) << ","
              << fmt(fp.residual) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& c, const std::vector<std::string>& ids, bool all, bool parallel,
               const std::string& csv) {
  std::vector<VerificationReport> reports;
  if (all || ids.empty()) {
    reports = run_all(c, parallel);
  } else {
    for (const auto& id : ids)
      reports.push_back(run_check(c, id));
  }
  for (const auto& r : reports) {
    std::cout << to_string(r.status) << " " << r.check_id;
    for (const auto& [name, bound] : r.bounds)
      std::cout << " " << name << "=" << fmt(r.metrics.at(name));
    if (!r.notes.empty())
      std::cout << " (" << r.notes << ")";
    std::cout << "\n";
  }
  if (!csv.empty())
    write_text(csv, to_csv(reports));
  return exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics of lambda * sum_k exp(omega^k z): rendering and numerical checks"};
  app.require_subcommand(1);

  SharedFlags flags;

  auto* render = app.add_subcommand("render", "classify a viewport and write PGM + grid files");
  bool overlay = false;
  render->add_flag("--overlay", overlay, "also write the partition overlay as PPM");

  auto* orbit = app.add_subcommand("orbit", "iterate and classify one point");
  std::string point;
  orbit->add_option("--z", point, "seed as re or re,im")->required();

  auto* singular = app.add_subcommand("singular", "zeros, critical points and postsingular orbits on V_0");
  int seeds = 10;
  singular->add_option("--seeds", seeds, "critical values to iterate");

  auto* regions = app.add_subcommand("regions", "partition vertices and point classification");
  std::vector<std::string> points;
  regions->add_option("--z", points, "points as re or re,im");

  auto* fixed = app.add_subcommand("fixed-points", "real fixed points in [a, b]");
  double a = 0.0, b = std::numbers::pi / 2;
  fixed->add_option("--a", a, "left end");
  fixed->add_option("--b", b, "right end");

  auto* verify = app.add_subcommand("verify", "run verification checks");
  std::vector<std::string> ids;
  bool all = false, parallel = false;
  std::string csv;
  verify->add_option("--check", ids, "check id (repeatable)");
  verify->add_flag("--all", all, "run every applicable check");
  verify->add_flag("--parallel", parallel, "run independent checks concurrently");
  verify->add_option("--csv", csv, "also write a CSV summary here");

  for (CLI::App* sub : {render, orbit, singular, regions, fixed, verify})
    flags.attach(*sub);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig c = flags.resolve();
    if (*render)
      return cmd_render(c, overlay);
    if (*orbit)
      return cmd_orbit(c, point);
    if (*singular)
      return cmd_singular(c, seeds);
    if (*regions)
      return cmd_regions(c, points);
    if (*fixed)
      return cmd_fixed_points(c, a, b);
    return cmd_verify(c, ids, all, parallel, csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
