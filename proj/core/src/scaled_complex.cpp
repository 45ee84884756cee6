#include "pmlwave/scaled_complex.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pmlwave/error.hpp"

namespace pmlwave {

namespace {
// exp(d) underflows to zero below this.
constexpr double kNegligibleLog = -745.0;
}  // namespace

ScaledComplex::ScaledComplex(Complex mantissa, double log_scale)
    : mantissa_(mantissa), log_scale_(log_scale) {
  normalize();
}

void ScaledComplex::normalize() {
  const double m = std::abs(mantissa_);
  if (m == 0.0) {
    mantissa_ = Complex{};
    log_scale_ = 0.0;
    return;
  }
  if (!std::isfinite(m) || !std::isfinite(log_scale_)) {
    throw DomainError("ScaledComplex: non-finite component");
  }
  int e = 0;
  std::frexp(m, &e);
  mantissa_ = Complex(std::ldexp(mantissa_.real(), -e), std::ldexp(mantissa_.imag(), -e));
  log_scale_ += e * std::numbers::ln2;
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) + log_scale_;
}

Complex ScaledComplex::value() const {
  if (is_zero()) return {};
  return mantissa_ * std::exp(log_scale_);
}

ScaledComplex ScaledComplex::operator-() const {
  ScaledComplex r = *this;
  r.mantissa_ = -r.mantissa_;
  return r;
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ScaledComplex(a.mantissa_ * b.mantissa_, a.log_scale_ + b.log_scale_);
}

ScaledComplex operator*(const ScaledComplex& a, Complex b) {
  if (a.is_zero() || b == Complex{}) return {};
  return ScaledComplex(a.mantissa_ * b, a.log_scale_);
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero()) throw DomainError("ScaledComplex: division by zero");
  if (a.is_zero()) return {};
  return ScaledComplex(a.mantissa_ / b.mantissa_, a.log_scale_ - b.log_scale_);
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ScaledComplex& big = a.log_scale_ >= b.log_scale_ ? a : b;
  const ScaledComplex& small = a.log_scale_ >= b.log_scale_ ? b : a;
  const double d = small.log_scale_ - big.log_scale_;
  if (d < kNegligibleLog) return big;
  return ScaledComplex(big.mantissa_ + small.mantissa_ * std::exp(d), big.log_scale_);
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

}  // namespace pmlwave
