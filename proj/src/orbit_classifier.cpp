#include "esdl/orbit_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace esdl {

namespace {

constexpr double kEscapeModulus = 1e6;
constexpr double kLevelSlack = 1e-9;

double real_value(const FamilyParams& params, double x) { return evaluate(params, {x, 0.0}).to_complex().real(); }

double real_derivative(const FamilyParams& params, double x) {
  return derivative(params, {x, 0.0}).to_complex().real();
}

bool meets_level(double log_abs, double level) {
  return log_abs >= level - kLevelSlack * std::max(1.0, std::abs(level));
}

std::optional<int> fast_witness(const OrbitRecord& rec, const MaxModLadder& ladder) {
  const int last = static_cast<int>(rec.points.size()) - 1;
  const int n_levels = static_cast<int>(ladder.levels.size());
  for (int L = 0; L <= last; ++L) {
    bool ok = true;
    for (int n = 1; n <= n_levels && ok; ++n) {
      const int idx = n + L;
      if (idx <= last)
        ok = meets_level(rec.points[idx].log_abs(), ladder.levels[n - 1]);
      else
        ok = rec.saturated;
    }
    if (ok)
      return L;
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::FastEscaping:
      return "FAST_ESCAPING";
    case OrbitClass::Escaping:
      return "ESCAPING";
    case OrbitClass::BoundedWithinBudget:
      return "BOUNDED_WITHIN_BUDGET";
    case OrbitClass::AttractedReal:
      return "ATTRACTED_REAL";
    case OrbitClass::Undetermined:
      break;
  }
  return "UNDETERMINED";
}

bool is_escaping(OrbitClass c) { return c == OrbitClass::FastEscaping || c == OrbitClass::Escaping; }

const char* to_string(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::Attracting:
      return "ATTRACTING";
    case FixedPointKind::Repelling:
      return "REPELLING";
    case FixedPointKind::Neutral:
      break;
  }
  return "NEUTRAL";
}

OrbitContext OrbitContext::make(const FamilyParams& params, int budget, double R, int ladder_levels,
                                int max_fast_level) {
  return {params, budget, R, maxmod_ladder(params, R, ladder_levels), max_fast_level};
}

OrbitRecord classify_orbit(const OrbitContext& ctx, Complex z) {
  return classify_orbit(ctx.params, z, ctx.budget, ctx.R, ctx.ladder, ctx.max_fast_level);
}

OrbitRecord classify_orbit(const FamilyParams& params, Complex z, int budget, double R,
                           const MaxModLadder& ladder, int max_fast_level) {
  if (budget < 3)
    throw std::invalid_argument("classify_orbit: budget >= 3 required");
  OrbitRecord rec;
  rec.seed = z;
  rec.points.reserve(budget + 1);
  rec.points.push_back(ScaledComplex::from(z));

  const bool real_seed = z.imag() == 0.0;
  bool attracted = false;
  for (int n = 1; n <= budget; ++n) {
    const ScaledComplex& cur = rec.points.back();
    if (!cur.representable()) {
      rec.saturated = true;
      break;
    }
    const Complex w = cur.to_complex();
    ScaledComplex next = evaluate(params, w);
    if (real_seed)
      next = ScaledComplex::from({next.unit().real(), 0.0}, next.log_scale());
    rec.points.push_back(next);

    if (real_seed && next.representable()) {
      const double prev = w.real();
      const double x = next.to_complex().real();
      if (std::abs(x - prev) < 1e-12 * std::max(1.0, std::abs(prev))) {
        const double fx = real_value(params, x);
        if (std::abs(fx - x) <= 1e-10 * (1.0 + std::abs(x)) && std::abs(real_derivative(params, x)) < 1.0) {
          attracted = true;
          break;
        }
      }
    }
  }
  if (!rec.saturated && !attracted && !rec.points.back().representable())
    rec.saturated = true;

  const double threshold = std::max(std::log(kEscapeModulus), std::log(R));
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < rec.points.size(); ++n) {
    const double la = rec.points[n].log_abs();
    max_log = std::max(max_log, la);
    if (!rec.escape_entry && la >= threshold)
      rec.escape_entry = static_cast<int>(n);
  }

  if (attracted) {
    rec.verdict = OrbitClass::AttractedReal;
    return rec;
  }
  if (rec.escape_entry) {
    rec.fast_level = fast_witness(rec, ladder);
    if (rec.fast_level && *rec.fast_level <= max_fast_level) {
      rec.verdict = OrbitClass::FastEscaping;
      return rec;
    }
    const std::size_t n = rec.points.size();
    if (n >= 3 && rec.points[n - 3].log_abs() < rec.points[n - 2].log_abs() &&
        rec.points[n - 2].log_abs() < rec.points[n - 1].log_abs()) {
      rec.verdict = OrbitClass::Escaping;
      return rec;
    }
  }
  rec.verdict = max_log < std::log(kEscapeModulus) ? OrbitClass::BoundedWithinBudget : OrbitClass::Undetermined;
  return rec;
}

std::vector<RealFixedPoint> real_fixed_points(const FamilyParams& params, double a, double b) {
  if (!(a < b))
    throw std::invalid_argument("real_fixed_points: a < b required");
  constexpr int kSamples = 10000;
  auto h = [&](double x) { return real_value(params, x) - x; };
  auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };

  std::vector<double> roots;
  double x0 = a;
  double h0 = h(x0);
  if (h0 == 0.0)
    roots.push_back(x0);
  for (int i = 1; i < kSamples; ++i) {
    const double x1 = a + (b - a) * i / (kSamples - 1);
    const double h1 = h(x1);
    if (h1 == 0.0) {
      roots.push_back(x1);
    } else if (h0 != 0.0 && sgn(h0) != sgn(h1)) {
      double lo = x0;
      double hi = x1;
      const int slo = sgn(h0);
      while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
          break;
        const double hm = h(mid);
        if (hm == 0.0) {
          lo = hi = mid;
          break;
        }
        (sgn(hm) == slo ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    h0 = h1;
  }

  std::vector<RealFixedPoint> out;
  for (double x : roots) {
    RealFixedPoint fp;
    fp.x_star = x;
    fp.multiplier = real_derivative(params, x);
    fp.residual = std::abs(real_value(params, x) - x);
    const double m = std::abs(fp.multiplier);
    if (m < 1.0 - 1e-9)
      fp.kind = FixedPointKind::Attracting;
    else if (m > 1.0 + 1e-9)
      fp.kind = FixedPointKind::Repelling;
    else
      fp.kind = FixedPointKind::Neutral;
    out.push_back(fp);
  }
  return out;
}

GrowthMargin growth_check(const FamilyParams& params, double x_max, int n_samples) {
  if (!(x_max > 0.0) || n_samples < 2)
    throw std::invalid_argument("growth_check: x_max > 0 and n_samples >= 2 required");
  GrowthMargin out;
  out.min_margin = std::numeric_limits<double>::infinity();
  out.samples = n_samples;
  const double lo = params.even() ? 0.0 : -x_max;
  for (int i = 0; i < n_samples; ++i) {
    const double x = lo + (x_max - lo) * i / (n_samples - 1);
    const double margin = real_value(params, x) - std::abs(x);
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.argmin = x;
    }
  }
  return out;
}

GMin g_min(int p) {
  if (p < 3)
    throw std::invalid_argument("g_min: p >= 3 required");
  const double pd = p;
  const double log_c = std::log(pd) + std::lgamma(pd - 1.0);  // log(p (p-2)!)
  GMin out;
  out.minimizer = std::exp(log_c / pd);
  out.closed_form = pd * std::exp(-log_c / pd) * (1.0 + 1.0 / (pd - 1.0));

  const double log_pfact = std::lgamma(pd + 1.0);
  auto g_of_log = [&](double u) { return pd * std::exp(-u) * (1.0 + std::exp(pd * u - log_pfact)); };

  // Unimodal on (0, inf); search u = log x over a bracket that does not use
  // the closed-form minimizer.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = std::log(1e-3);
  double hi = std::log(4.0 * pd);
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double gc = g_of_log(c);
  double gd = g_of_log(d);
  while (hi - lo > 1e-12) {
    if (gc < gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - kInvPhi * (hi - lo);
      gc = g_of_log(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + kInvPhi * (hi - lo);
      gd = g_of_log(d);
    }
  }
  out.numeric = std::min(gc, gd);
  if (std::abs(out.numeric - out.closed_form) > 1e-9 * out.closed_form)
    throw std::logic_error("g_min: closed form and numeric minimum disagree");
  return out;
}

}  // namespace esdl
