#include "esdl/singular_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace esdl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanStart = 1e-9;
constexpr double kRayResidualTol = 1e-9;
constexpr double kCarrierResidualTol = 1e-8;
constexpr double kCriticalValueTol = 1e-8;

Complex ray_unit(int p) { return std::polar(1.0, kPi / p); }

// |component| of a scaled value relative to the dominant term modulus.
double relative_to_scale(double unit_component, const Evaluation& e) {
  if (e.value.is_zero())
    return 0.0;
  return std::abs(unit_component) * std::exp(e.value.log_scale() - e.log_term_scale);
}

double relative_imag(const Evaluation& e) { return relative_to_scale(e.value.unit().imag(), e); }

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Sign changes of a sign-valued function on [start, t_max] with the given
// scan step, refined by bisection to 1e-12 (1 + t).
template <class SignFn>
std::vector<double> bracket_roots(SignFn&& sign, double start, double t_max, double step) {
  std::vector<double> roots;
  if (!(t_max > start))
    return roots;
  double a = start;
  int sa = sign(a);
  while (a < t_max) {
    const double b = std::min(a + step, t_max);
    const int sb = sign(b);
    if (sa == 0) {
      if (roots.empty() || roots.back() != a)
        roots.push_back(a);
    } else if (sb != 0 && sa != sb) {
      double lo = a;
      double hi = b;
      while (hi - lo > 1e-12 * (1.0 + lo)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
          break;
        const int sm = sign(mid);
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == sa)
          lo = mid;
        else
          hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    sa = sb;
  }
  if (sa == 0 && (roots.empty() || roots.back() != a))
    roots.push_back(a);
  return roots;
}

double scan_step(int p) { return kPi / (8.0 * p); }

Complex canonical_direction(Complex c) {
  c /= std::abs(c);
  if (c.real() < 0.0 || (c.real() == 0.0 && c.imag() < 0.0))
    c = -c;
  return c;
}

}  // namespace

double RealScaled::value() const {
  if (sign == 0.0)
    return 0.0;
  return sign * std::exp(log_abs);
}

RealScaled RealScaled::from(double x) {
  if (x == 0.0)
    return {0.0, -std::numeric_limits<double>::infinity()};
  return {static_cast<double>(sign_of(x)), std::log(std::abs(x))};
}

const char* to_string(SeedVerdict v) {
  return v == SeedVerdict::Escapes ? "ESCAPES" : "BOUNDED-WITHIN-BUDGET";
}

double ray_imag_residual(const FamilyParams& params, double t) {
  return relative_imag(evaluate_detailed(params, t * ray_unit(params.p())));
}

double f_on_ray(const FamilyParams& params, double t) {
  const Evaluation e = evaluate_detailed(params, t * ray_unit(params.p()));
  const double residual = relative_imag(e);
  if (!(residual < kRayResidualTol))
    throw ConsistencyError("f_on_ray: imaginary residual " + std::to_string(residual) + " at t = " +
                           std::to_string(t));
  return e.value.to_complex().real();
}

std::vector<double> zeros_on_ray(const FamilyParams& params, double t_max) {
  const Complex u = ray_unit(params.p());
  auto sign = [&](double t) { return sign_of(evaluate(params, t * u).unit().real()); };
  return bracket_roots(sign, kScanStart, t_max, scan_step(params.p()));
}

Complex derivative_carrier(const FamilyParams& params) {
  const Complex u = ray_unit(params.p());
  for (double t = 0.5; t < 64.0; t += 0.37) {
    const Evaluation d = derivative_detailed(params, t * u);
    if (relative_to_scale(std::abs(d.value.unit()), d) > 1e-6)
      return canonical_direction(d.value.unit());
  }
  throw ConsistencyError("derivative_carrier: f' vanishes numerically along V_0");
}

std::vector<double> critical_points_on_ray(const FamilyParams& params, double t_max) {
  const Complex u = ray_unit(params.p());
  const Complex carrier = derivative_carrier(params);
  auto sign = [&](double t) {
    const Evaluation d = derivative_detailed(params, t * u);
    const Complex projected = d.value.unit() * std::conj(carrier);
    const double residual = relative_to_scale(projected.imag(), d);
    if (!(residual < kCarrierResidualTol))
      throw ConsistencyError("critical_points_on_ray: f' leaves its carrier line (residual " +
                             std::to_string(residual) + " at t = " + std::to_string(t) + ")");
    return sign_of(projected.real());
  };
  std::vector<double> out{0.0};
  for (double t : bracket_roots(sign, kScanStart, t_max, scan_step(params.p())))
    out.push_back(t);
  return out;
}

namespace {

std::vector<double> values_at(const FamilyParams& params, const std::vector<double>& crit_t,
                              double& max_residual) {
  const Complex u = ray_unit(params.p());
  std::vector<double> values;
  values.reserve(crit_t.size());
  for (double t : crit_t) {
    const Evaluation e = evaluate_detailed(params, t * u);
    const double residual = relative_imag(e);
    if (!(residual < kCriticalValueTol))
      throw ConsistencyError("critical_values: imaginary residual " + std::to_string(residual) +
                             " at t = " + std::to_string(t));
    max_residual = std::max(max_residual, residual);
    values.push_back(e.value.to_complex().real());
  }
  return values;
}

}  // namespace

std::vector<double> critical_values(const FamilyParams& params, double t_max) {
  double residual = 0.0;
  return values_at(params, critical_points_on_ray(params, t_max), residual);
}

SingularData singular_data(const FamilyParams& params, double t_max) {
  if (!(t_max > 0.0))
    throw std::invalid_argument("singular_data: t_max must be positive");
  SingularData data;
  data.t_max = t_max;
  data.zeros_t = zeros_on_ray(params, t_max);
  data.crit_t = critical_points_on_ray(params, t_max);
  data.crit_values = values_at(params, data.crit_t, data.max_imag_residual);
  return data;
}

bool interlacing_holds(const SingularData& data) {
  for (std::size_t i = 1; i + 1 < data.crit_t.size(); ++i) {
    const double lo = data.crit_t[i];
    const double hi = data.crit_t[i + 1];
    const auto count = std::count_if(data.zeros_t.begin(), data.zeros_t.end(),
                                     [&](double z) { return z > lo && z < hi; });
    if (count != 1)
      return false;
  }
  return true;
}

PostsingularOrbit iterate_real_seeds(const FamilyParams& params, const std::vector<double>& seeds,
                                     int budget) {
  if (budget < 3)
    throw std::invalid_argument("postsingular orbit: budget >= 3 required");
  PostsingularOrbit out;
  out.seeds = seeds;
  const double escape_log = std::log(1e6);
  for (double seed : seeds) {
    std::vector<RealScaled> traj{RealScaled::from(seed)};
    for (int n = 0; n < budget; ++n) {
      const RealScaled& x = traj.back();
      if (x.log_abs > kLogRepresentable)
        break;
      const Evaluation e = evaluate_detailed(params, Complex(x.value(), 0.0));
      out.max_imag_residual = std::max(out.max_imag_residual, relative_imag(e));
      const double re = e.value.unit().real();
      if (re == 0.0)
        traj.push_back({0.0, -std::numeric_limits<double>::infinity()});
      else
        traj.push_back({static_cast<double>(sign_of(re)), std::log(std::abs(re)) + e.value.log_scale()});
    }
    const std::size_t n = traj.size();
    const bool saturated = traj.back().log_abs > kLogRepresentable;
    bool rising = false;
    if (n >= 3)
      rising = traj[n - 3].log_abs < traj[n - 2].log_abs && traj[n - 2].log_abs < traj[n - 1].log_abs;
    else if (n == 2 && saturated)
      rising = traj[0].log_abs < traj[1].log_abs;
    const bool escapes = rising && traj[n - 1].log_abs >= escape_log;
    out.trajectories.push_back(std::move(traj));
    out.verdicts.push_back(escapes ? SeedVerdict::Escapes : SeedVerdict::BoundedWithinBudget);
  }
  return out;
}

PostsingularOrbit postsingular_orbit(const FamilyParams& params, int budget, double t_max,
                                     std::size_t max_seeds) {
  std::vector<double> seeds = critical_values(params, t_max);
  if (seeds.size() > max_seeds)
    seeds.resize(max_seeds);
  return iterate_real_seeds(params, seeds, budget);
}

}  // namespace esdl
