#pragma once

#include <complex>

namespace pmlwave {

using Complex = std::complex<double>;

/**
 * Complex number carried as mantissa * exp(log_scale).
 *
 * Hankel and Bessel values in the upper half-plane grow or decay like
 * exp(|Im z|); this representation keeps ratios of such values meaningful
 * long after the raw doubles would have overflowed or underflowed.
 * The mantissa is kept with modulus in [0.5, 1), or is exactly zero.
 */
class ScaledComplex {
 public:
  ScaledComplex() = default;
  explicit ScaledComplex(Complex mantissa, double log_scale = 0.0);

  Complex mantissa() const { return mantissa_; }
  double log_scale() const { return log_scale_; }
  bool is_zero() const { return mantissa_ == Complex{}; }

  /// log|value|, -inf for zero.
  double log_abs() const;

  /// The represented value; may overflow to inf or underflow to 0.
  Complex value() const;

  ScaledComplex operator-() const;

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator*(const ScaledComplex& a, Complex b);
  friend ScaledComplex operator*(Complex a, const ScaledComplex& b) { return b * a; }

 private:
  void normalize();

  Complex mantissa_{};
  double log_scale_ = 0.0;
};

}  // namespace pmlwave
