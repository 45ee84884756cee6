#pragma once

// Independent reference values for the tests: integral representations
// evaluated with Boost adaptive Gauss-Kronrod, and the libstdc++ special
// functions on the real axis.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;

inline double gk(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, tol);
}

/// Composite 61-point Kronrod rule on `pieces` equal parts; for integrands smooth on each part.
inline double gk_pieces(const std::function<double(double)>& f, double a, double b, int pieces) {
  double sum = 0.0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a + i * h, a + (i + 1) * h, 0);
  }
  return sum;
}

/// Power series sum_k (-z^2/4)^k / (k! (n+k)!) (z/2)^n in long double; for |z| <= 4.
inline cplx bessel_j_series(int n, cplx z) {
  using lc = std::complex<long double>;
  const lc h = lc(z) / 2.0L;
  lc term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= h / static_cast<long double>(k);
  lc sum = term;
  const lc q = -h * h;
  for (int k = 1; k < 200; ++k) {
    term *= q / static_cast<long double>(k * (n + k));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

/// J_n(z) = (1/pi) int_0^pi cos(n tau - z sin tau) d tau; series near the origin,
/// where the integral cancels to below its own rounding.
inline cplx bessel_j(int n, cplx z) {
  if (std::abs(z) <= 4.0) return bessel_j_series(n, z);
  const int pieces = 4 + static_cast<int>(std::abs(z) / 4.0) + n / 4;
  const auto integrand = [&](double tau) { return std::cos(cplx(n * tau, 0.0) - z * std::sin(tau)); };
  const double re = gk_pieces([&](double t) { return integrand(t).real(); }, 0.0, std::numbers::pi, pieces);
  const double im = gk_pieces([&](double t) { return integrand(t).imag(); }, 0.0, std::numbers::pi, pieces);
  return cplx(re, im) / std::numbers::pi;
}

/// K_n(w) = int_0^inf exp(-w cosh t) cosh(n t) dt, for Re w > 0.
inline cplx bessel_k(int n, cplx w) {
  const double upper = std::acosh(1.0 + (45.0 + n * 2.0) / w.real()) + 0.5 * n / w.real();
  const auto integrand = [&](double t) { return std::exp(-w * std::cosh(t)) * std::cosh(n * t); };
  const int pieces = 8 + static_cast<int>(std::abs(w.imag()) * std::cosh(upper) / 20.0);
  const double re = gk_pieces([&](double t) { return integrand(t).real(); }, 0.0, upper, pieces);
  const double im = gk_pieces([&](double t) { return integrand(t).imag(); }, 0.0, upper, pieces);
  return {re, im};
}

/// H_n^(1)(z) = (2/pi) i^{-(n+1)} K_n(-i z), for Im z > 0.
inline cplx hankel1(int n, cplx z) {
  const cplx k = bessel_k(n, cplx(0.0, -1.0) * z);
  return 2.0 / std::numbers::pi * std::pow(cplx(0.0, -1.0), n + 1) * k;
}

inline double cyl_j(int n, double x) { return std::cyl_bessel_j(static_cast<double>(n), x); }
inline double cyl_y(int n, double x) { return std::cyl_neumann(static_cast<double>(n), x); }
inline double j_zero(int n, int k) { return boost::math::cyl_bessel_j_zero(static_cast<double>(n), k); }

}  // namespace oracle
