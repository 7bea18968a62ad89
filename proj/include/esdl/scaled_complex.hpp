#pragma once

#include <complex>

namespace esdl {

using Complex = std::complex<double>;

// Natural-log magnitude above which a value can no longer be handed back to
// the evaluator as a native complex number.
inline constexpr double kLogRepresentable = 700.0;

// A complex value stored as unit * exp(log_scale).
//
// |unit| lies in [1, e) and log_scale is an integer-valued finite double, so
// values far outside the native double range (e.g. exp(1e5)) stay exact in
// modulus and phase. Zero is encoded as unit = 0, log_scale = 0.
class ScaledComplex {
 public:
  ScaledComplex() = default;

  // Normalizes value * exp(log_scale).
  static ScaledComplex from(Complex value, double log_scale = 0.0);
  static ScaledComplex zero() { return {}; }

  Complex unit() const { return unit_; }
  double log_scale() const { return log_scale_; }

  bool is_zero() const { return unit_ == Complex(0.0, 0.0); }
  // -inf for zero.
  double log_abs() const;
  double arg() const { return std::arg(unit_); }

  // Native value; components overflow to +-inf when log_abs() > ~709.
  Complex to_complex() const;
  bool representable() const { return is_zero() || log_abs() < kLogRepresentable; }

  ScaledComplex operator*(const ScaledComplex& other) const;
  ScaledComplex operator*(double factor) const;
  ScaledComplex conj() const;

 private:
  ScaledComplex(Complex unit, double log_scale) : unit_(unit), log_scale_(log_scale) {}

  Complex unit_{0.0, 0.0};
  double log_scale_ = 0.0;
};

// |a - b| / |b| without leaving the scaled representation; +inf when b is
// zero and a is not.
double relative_difference(const ScaledComplex& a, const ScaledComplex& b);

}  // namespace esdl
