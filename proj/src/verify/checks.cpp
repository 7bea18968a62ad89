#include "esdl/verify/checks.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "esdl/orbit_classifier.hpp"
#include "esdl/parallel.hpp"
#include "esdl/plane_geometry.hpp"
#include "esdl/singular_set.hpp"
#include "esdl/verify/cache.hpp"
#include "esdl/web_topology.hpp"

namespace esdl {

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr double kPi = std::numbers::pi;

using BK = BoundKind;

Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * kPi * u(rng));
}

double halton(unsigned i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

// Distance in t between consecutive zeros of f on V_0.
double zero_spacing(int p) { return kPi / std::sin(kPi / p); }

double resolved_nu(const RunConfig& c, const FamilyParams& params) {
  if (c.nu)
    return *c.nu;
  return estimate_constants(params, default_nu_grid(), default_eps_grid(), 10000, c.threads).nu_prime;
}

PartitionConfig resolved_partition(const RunConfig& c, const FamilyParams& params) {
  PartitionConfig cfg = PartitionConfig::with_min_q(c.p, resolved_nu(c, params));
  if (c.q)
    cfg.q = *c.q;
  return cfg;
}

bool origin_in_viewport(const Viewport& v) { return v.x0 < 0.0 && 0.0 < v.x1 && v.y0 < 0.0 && 0.0 < v.y1; }

void check_sym_omega(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  std::mt19937_64 rng(kSeed);
  double rot = 0.0, refl = 0.0;
  constexpr int kCases = 10000;
  for (int i = 0; i < kCases; ++i) {
    const Complex z = random_in_disk(rng, 500.0);
    const ScaledComplex fz = evaluate(params, z);
    rot = std::max(rot, relative_difference(evaluate(params, z * params.omega()), fz));
    refl = std::max(refl, relative_difference(evaluate(params, std::conj(z)), fz.conj()));
  }
  r.metric("cases", kCases);
  r.bounded("max_rel_err_rotation", rot, BK::AtMost, 1e-11);
  r.bounded("max_rel_err_reflection", refl, BK::AtMost, 1e-11);
  r.decide();
}

void check_sym_even(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  std::mt19937_64 rng(kSeed + 1);
  double err = 0.0;
  constexpr int kCases = 10000;
  for (int i = 0; i < kCases; ++i) {
    const Complex z = random_in_disk(rng, 500.0);
    err = std::max(err, relative_difference(evaluate(params, -z), evaluate(params, z)));
  }
  if (!params.even())
    r.note("p odd: f is not even, a failure is expected");
  r.metric("cases", kCases);
  r.bounded("max_rel_err_even", err, BK::AtMost, 1e-11);
  r.decide();
}

void check_series(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  std::mt19937_64 rng(kSeed + 2);
  double err = 0.0;
  auto compare = [&](Complex z) {
    const Complex direct = evaluate(params, z).to_complex();
    err = std::max(err, std::abs(evaluate_series(params, z) - direct) / std::abs(direct));
  };
  constexpr int kCases = 1000;
  for (int i = 0; i < kCases; ++i)
    compare(random_in_disk(rng, 10.0));
  for (int i = 0; i <= 200; ++i)
    compare({-10.0 + 0.1 * i, 0.0});
  r.metric("cases", kCases + 201);
  r.bounded("max_rel_err_series", err, BK::AtMost, 1e-10);
  r.decide();
}

// Local minima of |f| relative to the term scale on a square lattice,
// polished by Newton's method.
std::vector<Complex> zeros_2d(const FamilyParams& params, double radius, double spacing, unsigned threads) {
  const int n = static_cast<int>(std::ceil(2.0 * radius / spacing)) + 1;
  auto at = [&](int i, int j) { return Complex(-radius + i * spacing, -radius + j * spacing); };
  std::vector<double> rel(static_cast<std::size_t>(n) * n);
  parallel_for(
      static_cast<std::size_t>(n),
      [&](std::size_t j) {
        for (int i = 0; i < n; ++i) {
          const Evaluation e = evaluate_detailed(params, at(i, static_cast<int>(j)));
          rel[j * n + i] = e.value.log_abs() - e.log_term_scale;
        }
      },
      threads);

  std::vector<Complex> found;
  for (int j = 1; j + 1 < n; ++j)
    for (int i = 1; i + 1 < n; ++i) {
      const double v = rel[static_cast<std::size_t>(j) * n + i];
      if (v > std::log(0.5))
        continue;
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj)
        for (int di = -1; di <= 1 && minimum; ++di)
          if ((di || dj) && rel[static_cast<std::size_t>(j + dj) * n + (i + di)] < v)
            minimum = false;
      if (!minimum)
        continue;
      Complex z = at(i, j);
      for (int it = 0; it < 60; ++it) {
        const Complex step = evaluate(params, z).to_complex() / derivative(params, z).to_complex();
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
          break;
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z)))
          break;
      }
      const Evaluation e = evaluate_detailed(params, z);
      if (std::abs(z) <= radius && e.value.log_abs() - e.log_term_scale < std::log(1e-8))
        found.push_back(z);
    }

  std::sort(found.begin(), found.end(),
            [](Complex a, Complex b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  std::vector<Complex> unique;
  for (Complex z : found)
    if (std::none_of(unique.begin(), unique.end(), [&](Complex u) { return std::abs(u - z) < 1e-6; }))
      unique.push_back(z);
  return unique;
}

void check_cvs_zeros(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  const int p = params.p();
  constexpr double kRadius = 30.0;
  const std::vector<Complex> zeros = zeros_2d(params, kRadius, 0.05, c.threads);
  double max_dist = 0.0;
  for (Complex z : zeros)
    max_dist = std::max(max_dist, dist_to_rays(p, z));

  // Ray zeros well inside the disk must all be seen by the 2-D search.
  const std::vector<double> ray_t = zeros_on_ray(params, kRadius);
  int ray_zeros = 0, missed = 0;
  for (double t : ray_t)
    for (int k = 0; k < p; ++k) {
      const Complex z = t * ray_direction(p, k);
      if (t > kRadius - 0.5)
        continue;
      ++ray_zeros;
      if (std::none_of(zeros.begin(), zeros.end(), [&](Complex w) { return std::abs(w - z) < 1e-6; }))
        ++missed;
    }

  r.bounded("n_zeros_2d", static_cast<double>(zeros.size()), BK::AtLeast, 1.0);
  r.bounded("max_dist_to_rays", max_dist, BK::AtMost, 1e-6);
  r.metric("n_ray_zeros", ray_zeros);
  r.bounded("missed_ray_zeros", missed, BK::AtMost, 0.0);
  if (params.even()) {
    // f is even and real on R; a real zero would show up as a sign change.
    int changes = 0;
    double prev = evaluate(params, {-100.0, 0.0}).to_complex().real();
    for (int i = 1; i <= 20000; ++i) {
      const double v = evaluate(params, {-100.0 + 0.01 * i, 0.0}).to_complex().real();
      changes += (v > 0.0) != (prev > 0.0);
      prev = v;
    }
    r.bounded("real_axis_sign_changes", changes, BK::AtMost, 0.0);
  }
  if (p == 4 && !ray_t.empty()) {
    const Complex first = ray_t.front() * ray_direction(p, 0);
    r.bounded("first_zero_err", std::abs(first - Complex(kPi / 2, kPi / 2)), BK::AtMost, 1e-10);
  }
  r.decide();
}

void check_cvs_real(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  constexpr std::size_t kWanted = 20;
  const double t_max = std::min(22.0 * zero_spacing(params.p()), 650.0);
  try {
    const SingularData data = cached_singular_data(params, t_max, c.effective_cache_dir());
    const std::size_t positive = data.crit_t.size() - 1;
    double worst = 0.0;
    for (std::size_t i = 1; i <= std::min(kWanted, positive); ++i)
      worst = std::max(worst, ray_imag_residual(params, data.crit_t[i]));
    r.metric("t_max", t_max);
    r.bounded("n_critical_points", static_cast<double>(std::min(kWanted, positive)), BK::AtLeast, kWanted);
    r.bounded("max_imag_residual", worst, BK::Below, 1e-8);
    r.decide();
  } catch (const ConsistencyError& e) {
    r.note(e.what());
    r.decide(true);
  }
}

void check_cvs_interlace(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  try {
    const SingularData data = cached_singular_data(params, c.t_max, c.effective_cache_dir());
    r.metric("t_max", c.t_max);
    r.metric("n_zeros", static_cast<double>(data.zeros_t.size()));
    r.metric("n_critical_points", static_cast<double>(data.crit_t.size()));
    r.bounded("interlacing", interlacing_holds(data) ? 1.0 : 0.0, BK::AtLeast, 1.0);
    r.decide();
  } catch (const ConsistencyError& e) {
    r.note(e.what());
    r.decide(true);
  }
}

void check_psing_real(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  constexpr std::size_t kSeeds = 10;
  try {
    const SingularData data =
        cached_singular_data(params, 12.0 * zero_spacing(params.p()), c.effective_cache_dir());
    std::vector<double> seeds = data.crit_values;
    if (seeds.size() > kSeeds)
      seeds.resize(kSeeds);
    const PostsingularOrbit orbit = iterate_real_seeds(params, seeds, c.budget);
    const auto escaping =
        static_cast<double>(std::count(orbit.verdicts.begin(), orbit.verdicts.end(), SeedVerdict::Escapes));
    r.metric("budget", c.budget);
    r.bounded("n_seeds", static_cast<double>(seeds.size()), BK::AtLeast, kSeeds);
    r.bounded("max_imag_residual", orbit.max_imag_residual, BK::Below, 1e-9);
    r.metric("n_escaping", escaping);
    if (params.even() && params.lambda() >= 1.0)
      r.bounded("n_not_escaping", static_cast<double>(seeds.size()) - escaping, BK::AtMost, 0.0);
    r.decide();
  } catch (const ConsistencyError& e) {
    r.note(e.what());
    r.decide(true);
  }
}

void check_davel(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  std::vector<double> nu_grid = c.nu ? std::vector<double>{*c.nu} : default_nu_grid();
  try {
    const EstimatedConstants ec = estimate_constants(params, nu_grid, default_eps_grid(), 10000, c.threads);
    r.metric("nu_prime", ec.nu_prime);
    r.metric("eps0", ec.eps0);
    r.metric("q", ec.q);
    r.bounded("samples_checked", ec.samples_checked, BK::AtLeast, 10000);
    r.bounded("min_margin", ec.margin, BK::Above, 0.0);
    r.note("sampled evidence on T(nu'), not a proof");
    r.decide();
  } catch (const NotFoundError& e) {
    r.note(e.what());
    r.decide(true);
  }
}

void check_sr_map(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  const PartitionConfig part = resolved_partition(c, params);
  const int p = params.p();
  constexpr int kSamples = 10000;
  constexpr double kXMax = 600.0;
  auto violations = [&](double r0) {
    int bad = 0;
    for (unsigned i = 1; i <= kSamples; ++i) {
      const double x = r0 + halton(i, 2) * (kXMax - r0);
      const double y = (2.0 * halton(i, 3) - 1.0) * kPi / (2.0 * p);
      const Complex z{i % 2 ? x : -x, y};
      const ScaledComplex fz = evaluate(params, z);
      const bool grows = fz.log_abs() > std::log(std::abs(z));
      const bool in_t0 = fz.representable() && classify_point(part, fz.to_complex()) == Region::sector(0);
      bad += !(grows && in_t0);
    }
    return bad;
  };
  int r0 = 0, bad = -1;
  for (int cand = 1; cand <= 20; ++cand) {
    bad = violations(cand);
    if (bad == 0) {
      r0 = cand;
      break;
    }
  }
  r.metric("nu", part.nu);
  r.metric("q", part.q);
  r.metric("samples", kSamples);
  if (r0 == 0) {
    r.note("no r0 in 1..20 gave zero violations");
    r.metric("violations_at_20", bad);
    r.decide(true);
    return;
  }
  r.bounded("r0", r0, BK::Below, 20.0);
  r.bounded("violations", bad, BK::AtMost, 0.0);
  r.decide();
}

void check_growth(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  const GrowthMargin g = growth_check(params, 50.0, 10000);
  r.metric("x_max", 50.0);
  r.metric("samples", g.samples);
  r.metric("argmin", g.argmin);
  r.bounded("min_margin", g.min_margin, BK::Above, 0.0);
  if (!params.even() || params.lambda() < 1.0)
    r.note("hypothesis (p even, lambda >= 1) not met; margin reported as measured");
  r.decide();
}

void check_gmin(const RunConfig&, VerificationReport& r) {
  double worst = std::numeric_limits<double>::infinity(), worst_p = 0.0, disagreement = 0.0;
  double log_gap = std::numeric_limits<double>::infinity();
  try {
    for (int p = 4; p <= 20; p += 2) {
      const GMin g = g_min(p);
      disagreement = std::max(disagreement, std::abs(g.numeric - g.closed_form) / g.closed_form);
      if (g.closed_form < worst) {
        worst = g.closed_form;
        worst_p = p;
      }
      if (p == 4)
        r.metric("gmin_p4", g.closed_form);
      // p^p > p (p-2)! keeps the minimizer below p.
      log_gap = std::min(log_gap, p * std::log(p) - std::log(p) - std::lgamma(p - 1.0));
    }
  } catch (const std::logic_error& e) {
    r.note(e.what());
    r.decide(true);
    return;
  }
  r.metric("worst_p", worst_p);
  r.bounded("min_gmin", worst, BK::Above, 1.0);
  r.bounded("max_rel_disagreement", disagreement, BK::AtMost, 1e-9);
  r.bounded("min_log_pp_over_p_pm2_fact", log_gap, BK::Above, 0.0);
  r.decide();
}

void check_basin(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  std::vector<RealFixedPoint> fps;
  for (const RealFixedPoint& fp : real_fixed_points(params, 0.0, kPi / 2))
    if (fp.x_star > 0.0 && fp.x_star < kPi / 2)
      fps.push_back(fp);
  r.metric("n_fixed_points", static_cast<double>(fps.size()));
  r.bounded("count_minus_one", std::abs(static_cast<double>(fps.size()) - 1.0), BK::AtMost, 0.0);
  const double f_half_pi = evaluate(params, {kPi / 2, 0.0}).to_complex().real();
  r.metric("f_half_pi", f_half_pi);
  const bool member = params.p() == 4 && params.lambda() == 0.25;
  if (member)
    r.bounded("f_half_pi_err", std::abs(f_half_pi - 1.25), BK::AtMost, 5e-3);
  else
    r.note("hypothesis (p = 4, lambda = 1/4) not met");
  if (!fps.empty()) {
    const RealFixedPoint& fp = fps.front();
    r.metric("x_star", fp.x_star);
    r.metric("multiplier", fp.multiplier);
    r.bounded("residual", fp.residual, BK::AtMost, 1e-10);
    r.bounded("abs_multiplier", std::abs(fp.multiplier), BK::Below, 1.0);
  }
  r.decide();
}

void check_sw_rings(const RunConfig& c, VerificationReport& r) {
  if (!origin_in_viewport(c.viewport)) {
    r.note("viewport does not contain the origin");
    r.decide(true);
    return;
  }
  const FamilyParams params = c.family();
  const double R = c.escape_radius();
  const OrbitContext ctx = OrbitContext::make(params, c.budget, R);
  r.metric("escape_radius", R);
  r.metric("budget", c.budget);
  auto rings_at = [&](int w, int h, const std::string& suffix) {
    const GridSpec grid =
        GridSpec::from_bounds(c.viewport.x0, c.viewport.x1, c.viewport.y0, c.viewport.y1, w, h);
    const ClassificationGrid classes = classify_grid(ctx, grid, c.threads);
    const std::size_t origin = grid.nearest_index({0.0, 0.0});
    const RingReport rings = spider_rings(classes, origin);
    int not_separating = 0;
    for (const auto& ring : rings.rings)
      not_separating += !separates_from_frame(w, h, ring, origin);
    r.bounded("nested_count" + suffix, rings.nested_count, BK::AtLeast, 2.0);
    r.bounded("rings_not_separating" + suffix, not_separating, BK::AtMost, 0.0);
  };
  try {
    rings_at(c.px_w, c.px_h, "");
    rings_at(std::min(2 * c.px_w, 16384), std::min(2 * c.px_h, 16384), "_2x");
  } catch (const DegenerateError& e) {
    r.note(e.what());
    r.decide(true);
    return;
  }
  r.note("fast escaping means level L = 0, i.e. membership of A_R(f) up to ladder saturation");
  r.decide();
}

void check_hair(const RunConfig& c, VerificationReport& r) {
  const FamilyParams params = c.family();
  const double R = c.escape_radius();
  const OrbitContext ctx = OrbitContext::make(params, c.budget, R);
  constexpr int k = 1;
  const bool base = strip_hair_presence(ctx, k, strip_window(k, 20.0, 60.0, 256, 64), c.threads);
  const bool doubled = strip_hair_presence(ctx, k, strip_window(k, 20.0, 60.0, 512, 128), c.threads);
  r.metric("k", k);
  r.bounded("hair", base ? 1.0 : 0.0, BK::AtLeast, 1.0);
  r.bounded("hair_2x", doubled ? 1.0 : 0.0, BK::AtLeast, 1.0);
  r.note("numerical evidence of a curve crossing R(k) inside Re z in [20, 60]");
  r.decide();
}

using CheckFn = void (*)(const RunConfig&, VerificationReport&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"SYM-OMEGA", check_sym_omega},     {"SYM-EVEN", check_sym_even},       {"SERIES", check_series},
      {"CVS-ZEROS", check_cvs_zeros},     {"CVS-REAL", check_cvs_real},       {"CVS-INTERLACE", check_cvs_interlace},
      {"PSING-REAL", check_psing_real},   {"DAVEL-SAMPLED", check_davel},     {"SR-MAP", check_sr_map},
      {"THM2-GROWTH", check_growth},      {"THM2-GMIN", check_gmin},          {"PROP-BASIN", check_basin},
      {"SW-RINGS", check_sw_rings},       {"HAIR-STRIP", check_hair},
  };
  return table;
}

CheckFn find_check(const std::string& id) {
  for (const auto& [name, fn] : registry())
    if (name == id)
      return fn;
  throw UnknownCheckError("unknown check id '" + id + "'");
}

VerificationReport blank_report(const RunConfig& c, const std::string& id) {
  VerificationReport r;
  r.check_id = id;
  r.p = c.p;
  r.lambda = c.lambda;
  return r;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& entry : registry())
      out.push_back(entry.first);
    return out;
  }();
  return ids;
}

std::optional<std::string> skip_reason(const RunConfig& c, const std::string& id) {
  find_check(id);
  const bool even = c.p % 2 == 0;
  if (id == "SYM-EVEN" && !even)
    return "p odd";
  if (id == "SR-MAP") {
    if (!even)
      return "p odd";
    if (c.lambda < 0.0)
      return "lambda < 0: f maps S_r towards the negative axis";
  }
  if (id == "THM2-GROWTH") {
    if (!even)
      return "p odd";
    if (c.lambda < 1.0)
      return "lambda < 1";
  }
  if (id == "PROP-BASIN" && !(c.p == 4 && c.lambda == 0.25))
    return "requires p = 4, lambda = 1/4";
  return std::nullopt;
}

VerificationReport run_check(const RunConfig& config, const std::string& id) {
  const CheckFn fn = find_check(id);
  config.validate();
  VerificationReport r = blank_report(config, id);
  fn(config, r);
  if (!config.out_dir.empty())
    write_report(r, config.out_dir);
  return r;
}

std::vector<VerificationReport> run_all(const RunConfig& config, bool parallel) {
  config.validate();
  const auto& ids = check_ids();
  std::vector<VerificationReport> reports(ids.size());
  auto one = [&](std::size_t i) {
    if (const auto reason = skip_reason(config, ids[i])) {
      reports[i] = blank_report(config, ids[i]);
      reports[i].status = CheckStatus::Skipped;
      reports[i].note(*reason);
      if (!config.out_dir.empty())
        write_report(reports[i], config.out_dir);
    } else {
      reports[i] = run_check(config, ids[i]);
    }
  };
  if (parallel) {
    parallel_for(ids.size(), one, config.threads);
  } else {
    for (std::size_t i = 0; i < ids.size(); ++i)
      one(i);
  }
  return reports;
}

int exit_code(const std::vector<VerificationReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == CheckStatus::Fail; })
             ? 1
             : 0;
}

}  // namespace esdl
