#pragma once

#include <stdexcept>
#include <vector>

#include "esdl/eval_core.hpp"

namespace esdl {

// Raised when a quantity that must be real (f on V_0, f' along its carrier,
// a critical value) shows an imaginary residual above tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zeros and critical points on V_0, parametrized by z = t exp(i pi / p).
// The rotational symmetry carries them to every other ray V_k. f has no
// finite asymptotic values, so the critical values are the singular values.
struct SingularData {
  std::vector<double> zeros_t;
  std::vector<double> crit_t;       // crit_t[0] == 0, the origin
  std::vector<double> crit_values;  // f(crit_t[i] e^{i pi/p}), real
  double t_max = 0.0;
  // Largest |Im f| / (term scale) seen when storing a critical value.
  double max_imag_residual = 0.0;
};

// f(t e^{i pi / p}), real on the closure of V_0. Throws ConsistencyError when
// the imaginary part exceeds 1e-9 of the term scale.
double f_on_ray(const FamilyParams& params, double t);

// Relative imaginary residual of f(t e^{i pi / p}).
double ray_imag_residual(const FamilyParams& params, double t);

// Zeros of f on V_0 in [1e-9, t_max], scan + bisection to 1e-12 (1 + t).
std::vector<double> zeros_on_ray(const FamilyParams& params, double t_max);

// The unit direction c with f'(t e^{i pi/p}) in R c, detected from samples.
// Analytically c = e^{-i pi / p} up to sign.
Complex derivative_carrier(const FamilyParams& params);

// Critical points on V_0 (t = 0 always first), from sign changes of the
// projection of f' onto its carrier. Throws ConsistencyError if f' leaves its
// carrier line by more than 1e-8 of the term scale.
std::vector<double> critical_points_on_ray(const FamilyParams& params, double t_max);

// f at each critical point (origin first). Throws ConsistencyError when an
// imaginary residual exceeds 1e-8 of the term scale.
std::vector<double> critical_values(const FamilyParams& params, double t_max);

// All of the above in one pass.
SingularData singular_data(const FamilyParams& params, double t_max);

// True when exactly one zero lies strictly between each pair of consecutive
// positive critical points.
bool interlacing_holds(const SingularData& data);

// Real orbit point stored as sign * exp(log_abs); log_abs = -inf for 0.
struct RealScaled {
  double sign = 0.0;
  double log_abs = 0.0;

  double value() const;
  static RealScaled from(double x);
};

enum class SeedVerdict { Escapes, BoundedWithinBudget };

struct PostsingularOrbit {
  std::vector<double> seeds;
  std::vector<std::vector<RealScaled>> trajectories;
  std::vector<SeedVerdict> verdicts;
  // Largest relative imaginary residual met while iterating.
  double max_imag_residual = 0.0;
};

// Iterates each critical value (origin first) under f restricted to R for up
// to `budget` steps, stopping early once an iterate is too large to feed back
// (log|x| > kLogRepresentable). Escapes needs the last three log-moduli
// strictly increasing, or both of them when the orbit saturated after one
// step, and a final log-modulus >= log 1e6. max_seeds limits the number of
// seeds used.
PostsingularOrbit postsingular_orbit(const FamilyParams& params, int budget, double t_max,
                                     std::size_t max_seeds = static_cast<std::size_t>(-1));

// Same, for explicitly supplied seeds.
PostsingularOrbit iterate_real_seeds(const FamilyParams& params, const std::vector<double>& seeds,
                                     int budget);

const char* to_string(SeedVerdict v);

}  // namespace esdl
