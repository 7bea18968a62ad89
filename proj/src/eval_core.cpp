#include "esdl/eval_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace esdl {

namespace {

std::vector<Complex> make_roots(int p) {
  std::vector<Complex> roots(p);
  auto direct = [p](int k) -> Complex {
    if (k == 0)
      return {1.0, 0.0};
    if (4 * k == p)
      return {0.0, 1.0};
    const double theta = 2.0 * std::numbers::pi * k / p;
    return {std::cos(theta), std::sin(theta)};
  };
  if (p % 2 == 0) {
    const int half = p / 2;
    for (int k = 0; k < half; ++k) {
      if (4 * k <= p)
        roots[k] = direct(k);
      else
        roots[k] = -std::conj(roots[half - k]);
    }
    for (int k = 0; k < half; ++k)
      roots[k + half] = -roots[k];
  } else {
    for (int k = 0; 2 * k < p; ++k)
      roots[k] = direct(k);
    for (int k = (p + 1) / 2; k < p; ++k)
      roots[k] = std::conj(roots[p - k]);
  }
  return roots;
}

// sum_k weight_k exp(omega^k z - m), m = max_k Re(omega^k z). For even p the
// terms are added in antipodal pairs so the sum is invariant (bit for bit)
// under z -> -z.
template <bool WithRootWeight>
Evaluation factored_sum(const FamilyParams& params, Complex z) {
  const auto& roots = params.roots();
  const int p = params.p();
  double m = -std::numeric_limits<double>::infinity();
  for (const Complex& w : roots)
    m = std::max(m, (w * z).real());

  auto term = [&](int k) {
    const Complex w = roots[k] * z;
    const Complex e = std::exp(Complex(w.real() - m, w.imag()));
    if constexpr (WithRootWeight)
      return roots[k] * e;
    else
      return e;
  };

  Complex sum{0.0, 0.0};
  if (p % 2 == 0) {
    const int half = p / 2;
    for (int k = 0; k < half; ++k)
      sum += term(k) + term(k + half);
  } else {
    for (int k = 0; k < p; ++k)
      sum += term(k);
  }
  const double lambda = params.lambda();
  return {ScaledComplex::from(lambda * sum, m), std::log(std::abs(lambda)) + m};
}

double log_abs_on_circle(const FamilyParams& params, double r, double theta) {
  return evaluate(params, std::polar(r, theta)).log_abs();
}

}  // namespace

FamilyParams::FamilyParams(int p, double lambda) : p_(p), lambda_(lambda) {
  if (p < 3)
    throw std::invalid_argument("p >= 3 required (got p = " + std::to_string(p) + ")");
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be a nonzero finite real");
  roots_ = make_roots(p);
}

Evaluation evaluate_detailed(const FamilyParams& params, Complex z) {
  return factored_sum<false>(params, z);
}

ScaledComplex evaluate(const FamilyParams& params, Complex z) {
  return evaluate_detailed(params, z).value;
}

Evaluation derivative_detailed(const FamilyParams& params, Complex z) {
  return factored_sum<true>(params, z);
}

ScaledComplex derivative(const FamilyParams& params, Complex z) {
  return derivative_detailed(params, z).value;
}

Complex evaluate_series(const FamilyParams& params, Complex z, int n_terms) {
  if (!(std::abs(z) <= kSeriesMaxModulus))
    throw std::domain_error("evaluate_series: |z| > 50 is outside the truncation domain");
  if (n_terms < 1)
    throw std::invalid_argument("evaluate_series: n_terms must be positive");
  const int p = params.p();
  Complex zp{1.0, 0.0};
  for (int i = 0; i < p; ++i)
    zp *= z;

  Complex sum{0.0, 0.0};
  Complex term{1.0, 0.0};
  for (int j = 0; j < n_terms; ++j) {
    sum += term;
    double denom = 1.0;
    for (int i = 1; i <= p; ++i)
      denom *= static_cast<double>(j * p + i);
    term *= zp / denom;
  }
  return params.lambda() * static_cast<double>(p) * sum;
}

double max_modulus(const FamilyParams& params, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::domain_error("max_modulus: r must be positive and finite");
  constexpr int kSamples = 1024;
  const double period = 2.0 * std::numbers::pi / params.p();
  const double step = period / kSamples;

  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const double v = log_abs_on_circle(params, r, i * step);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }

  // Golden-section refinement on the periodic bracket around the best sample.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = (best - 1) * step;
  double b = (best + 1) * step;
  const double tol = 1e-10 * period;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = log_abs_on_circle(params, r, c);
  double fd = log_abs_on_circle(params, r, d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = log_abs_on_circle(params, r, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = log_abs_on_circle(params, r, d);
    }
  }
  return std::max({best_val, fc, fd});
}

MaxModLadder maxmod_ladder(const FamilyParams& params, double R, int n_max) {
  if (!(R > 0.0))
    throw std::invalid_argument("maxmod_ladder: R must be positive");
  if (n_max < 1)
    throw std::invalid_argument("maxmod_ladder: n_max must be positive");
  MaxModLadder ladder;
  ladder.base_log = std::log(R);
  double radius = R;
  for (int n = 0; n < n_max; ++n) {
    const double level = max_modulus(params, radius);
    if (n == 0 && !(level > ladder.base_log))
      throw std::invalid_argument("maxmod_ladder: M(R, f) <= R, escape radius too small");
    ladder.levels.push_back(level);
    if (level > kLogRepresentable) {
      ladder.saturated_at = static_cast<std::size_t>(n);
      break;
    }
    radius = std::exp(level);
  }
  return ladder;
}

double find_escape_radius(const FamilyParams& params) {
  constexpr int kRadii = 64;
  for (int e = 0; e <= 20; ++e) {
    const double R = std::ldexp(1.0, e);
    bool ok = true;
    for (int i = 0; i < kRadii && ok; ++i) {
      const double r = R * std::pow(8.0, static_cast<double>(i) / (kRadii - 1));
      ok = max_modulus(params, r) > std::log(r);
    }
    if (ok)
      return R;
  }
  throw std::runtime_error("find_escape_radius: no R <= 2^20 satisfies M(r) > r");
}

}  // namespace esdl
