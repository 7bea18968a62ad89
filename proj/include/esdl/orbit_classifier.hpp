#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esdl/eval_core.hpp"

namespace esdl {

// Byte values are part of the on-disk classification grid format.
enum class OrbitClass : std::uint8_t {
  FastEscaping = 0,
  Escaping = 1,
  BoundedWithinBudget = 2,
  AttractedReal = 3,
  Undetermined = 4,
};

const char* to_string(OrbitClass c);
bool is_escaping(OrbitClass c);

struct OrbitRecord {
  Complex seed;
  // points[n] = f^n(seed), n = 0..; shorter than budget + 1 when the orbit
  // saturated or settled on an attracting real fixed point.
  std::vector<ScaledComplex> points;
  std::optional<int> escape_entry;
  std::optional<int> fast_level;
  OrbitClass verdict = OrbitClass::Undetermined;
  // The last point was too large to iterate further.
  bool saturated = false;
};

// Settings shared by every orbit of one classification run.
struct OrbitContext {
  FamilyParams params;
  int budget;
  double R;
  MaxModLadder ladder;
  int max_fast_level = 0;

  // Builds the ladder from R (n_max levels).
  static OrbitContext make(const FamilyParams& params, int budget, double R, int ladder_levels = 8,
                           int max_fast_level = 0);
};

// Escape entry: first n with log|f^n(z)| >= max(log 1e6, log R). ESCAPING
// also needs the last three log-moduli strictly increasing. fast_level is the
// least L with log|f^{n+L}(z)| >= ladder.levels[n-1] for n = 1 .. (ladder
// length), comparisons past a saturated orbit counting as met. The verdict is
// FAST_ESCAPING only when fast_level <= max_fast_level: with the default 0 the
// class is A_R(f) itself. Any orbit that saturates inside the budget has some
// witness L, so an uncapped test would mark nearly every pixel fast.
// ATTRACTED_REAL for real seeds that settle (steps < 1e-12) on a fixed point
// with |f'| < 1.
OrbitRecord classify_orbit(const FamilyParams& params, Complex z, int budget, double R,
                           const MaxModLadder& ladder, int max_fast_level = 0);
OrbitRecord classify_orbit(const OrbitContext& ctx, Complex z);

enum class FixedPointKind { Attracting, Repelling, Neutral };
const char* to_string(FixedPointKind k);

struct RealFixedPoint {
  double x_star = 0.0;
  double multiplier = 0.0;
  FixedPointKind kind = FixedPointKind::Neutral;
  double residual = 0.0;  // |f(x*) - x*|
};

// Sign changes of f(x) - x over 10^4 uniform samples of [a, b], bisected to
// 1e-12. Throws std::invalid_argument unless a < b.
std::vector<RealFixedPoint> real_fixed_points(const FamilyParams& params, double a, double b);

struct GrowthMargin {
  double min_margin = 0.0;  // min over samples of f(x) - |x|
  double argmin = 0.0;
  int samples = 0;
};

// Minimum of f(x) - |x| over n_samples uniform points of [-x_max, x_max].
// For even p only [0, x_max] is evaluated; evenness mirrors it.
GrowthMargin growth_check(const FamilyParams& params, double x_max, int n_samples);

struct GMin {
  double closed_form = 0.0;  // p / (p (p-2)!)^{1/p} * (1 + 1/(p-1))
  double numeric = 0.0;      // golden-section minimum of g
  double minimizer = 0.0;    // (p (p-2)!)^{1/p}
};

// Minimum over x > 0 of g(x) = (p/x)(1 + x^p/p!), the lower bound for f(x)/x
// at lambda = 1. Throws std::logic_error if the closed form and the
// golden-section minimum disagree by more than 1e-9 relative.
GMin g_min(int p);

}  // namespace esdl
