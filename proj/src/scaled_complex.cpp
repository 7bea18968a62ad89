#include "esdl/scaled_complex.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace esdl {

ScaledComplex ScaledComplex::from(Complex value, double log_scale) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) || !std::isfinite(log_scale))
    throw std::domain_error("ScaledComplex::from: non-finite input");
  const double mag = std::abs(value);
  if (mag == 0.0)
    return {};
  const double total = std::log(mag) + log_scale;
  double whole = std::floor(total);
  double frac = total - whole;
  // total may be so large that frac carries no information; still in [0, 1).
  if (frac < 0.0 || frac >= 1.0) {
    whole = total;
    frac = 0.0;
  }
  Complex unit = (value / mag) * std::exp(frac);
  if (std::abs(unit) >= std::numbers::e) {
    unit /= std::numbers::e;
    whole += 1.0;
  }
  return {unit, whole};
}

double ScaledComplex::log_abs() const {
  if (is_zero())
    return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(unit_)) + log_scale_;
}

Complex ScaledComplex::to_complex() const {
  if (is_zero())
    return {0.0, 0.0};
  const double s = std::exp(log_scale_);
  auto scale = [s](double u) { return u == 0.0 ? 0.0 : u * s; };
  return {scale(unit_.real()), scale(unit_.imag())};
}

ScaledComplex ScaledComplex::operator*(const ScaledComplex& other) const {
  if (is_zero() || other.is_zero())
    return {};
  return from(unit_ * other.unit_, log_scale_ + other.log_scale_);
}

ScaledComplex ScaledComplex::operator*(double factor) const {
  if (is_zero() || factor == 0.0)
    return {};
  return from(unit_ * factor, log_scale_);
}

ScaledComplex ScaledComplex::conj() const { return {std::conj(unit_), log_scale_}; }

double relative_difference(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero())
    return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  const double shift = a.log_scale() - b.log_scale();
  if (shift > kLogRepresentable)
    return std::numeric_limits<double>::infinity();
  return std::abs(a.unit() / b.unit() * std::exp(shift) - 1.0);
}

}  // namespace esdl
