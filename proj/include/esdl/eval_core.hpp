#pragma once

#include <optional>
#include <vector>

#include "esdl/scaled_complex.hpp"

namespace esdl {

// One member f(z) = lambda * sum_{k<p} exp(omega^k z) of the exponential-sum
// family, omega = exp(2 pi i / p).
class FamilyParams {
 public:
  // Throws std::invalid_argument unless p >= 3 and lambda != 0 (finite).
  FamilyParams(int p, double lambda);

  int p() const { return p_; }
  double lambda() const { return lambda_; }
  bool even() const { return p_ % 2 == 0; }

  // omega^k for k in [0, p). For even p the table satisfies
  // root(k + p/2) == -root(k) exactly, which keeps f(-z) == f(z) bit-exact.
  const std::vector<Complex>& roots() const { return roots_; }
  Complex omega() const { return roots_[1]; }

 private:
  int p_;
  double lambda_;
  std::vector<Complex> roots_;
};

// f(z) through the factored form lambda e^m sum exp(omega^k z - m),
// m = max_k Re(omega^k z). Total on finite z.
ScaledComplex evaluate(const FamilyParams& params, Complex z);

// f(z) together with log(|lambda| e^m), the modulus of the dominant term.
// Cancellation residuals (e.g. the imaginary part of f on a symmetry line)
// are judged relative to this scale.
struct Evaluation {
  ScaledComplex value;
  double log_term_scale;
};
Evaluation evaluate_detailed(const FamilyParams& params, Complex z);

// f'(z) = lambda sum omega^k exp(omega^k z), same scaling contract.
ScaledComplex derivative(const FamilyParams& params, Complex z);
Evaluation derivative_detailed(const FamilyParams& params, Complex z);

inline constexpr double kSeriesMaxModulus = 50.0;
inline constexpr int kSeriesDefaultTerms = 40;

// lambda p sum_{j<n_terms} z^{jp}/(jp)!, accumulated in increasing j.
// Throws std::domain_error when |z| > 50.
Complex evaluate_series(const FamilyParams& params, Complex z, int n_terms = kSeriesDefaultTerms);

// log M(r, f), M(r, f) = max_{|z| = r} |f(z)|. The circle is reduced to
// theta in [0, 2 pi / p) by f(omega z) = f(z), sampled at 1024 points, and
// the best bracket is refined by golden-section search.
double max_modulus(const FamilyParams& params, double r);

// Iterated maximum modulus: levels[n] = log M^{n+1}(R, f).
struct MaxModLadder {
  double base_log = 0.0;
  std::vector<double> levels;
  // First index whose level exceeds kLogRepresentable; no level is stored
  // past it because exp(level) is no longer a valid radius.
  std::optional<std::size_t> saturated_at;
};

// Throws std::invalid_argument if M(R) <= R.
MaxModLadder maxmod_ladder(const FamilyParams& params, double R, int n_max = 8);

// Smallest R in {1, 2, 4, ...} with sampled M(r) > r at 64 log-spaced radii
// in [R, 8R]. A heuristic check, not a proof. Throws std::runtime_error when
// nothing up to 2^20 qualifies.
double find_escape_radius(const FamilyParams& params);

}  // namespace esdl
