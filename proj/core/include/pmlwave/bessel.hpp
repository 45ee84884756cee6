#pragma once

#include "pmlwave/scaled_complex.hpp"

namespace pmlwave {

/// Largest integer order accepted by the Bessel routines.
inline constexpr int kMaxBesselOrder = 64;

/// J_n(x) for real x.
double bessel_j(int n, double x);

/// J_n(z) for Im z >= 0, |z| <= 1e6.
Complex bessel_j(int n, Complex z);

/// J_n(z) carried in scaled form; never overflows for Im z >= 0.
ScaledComplex bessel_j_scaled(int n, Complex z);

/// Y_n(x) for x > 0.
double bessel_y(int n, double x);

/// H_n^(1)(z) for Im z >= 0, z != 0.
ScaledComplex hankel1(int n, Complex z);

/// dJ_n/dz by the downward recurrence C_{n-1} - (n/z) C_n.
double bessel_j_prime(int n, double x);
Complex bessel_j_prime(int n, Complex z);
double bessel_y_prime(int n, double x);
ScaledComplex hankel1_prime(int n, Complex z);

/**
 * H_n^(1)(z) / J_n(z) at z = (omega + i alpha0) R, evaluated as
 * 2 / (1 + H_n^(2)(z) / H_n^(1)(z)) in scaled arithmetic.
 * Throws PrecisionLoss when the denominator cancels below 1e-12 relative.
 */
Complex hankel_ratio(int n, double omega, double alpha0, double R);

/// k-th positive zero of J_n, k >= 1.
double bessel_j_zero(int n, int k);
inline double bessel_j0_zero(int k) { return bessel_j_zero(0, k); }

/// Integral of J_n(omega s) s over s in [0, 1/2], omega > 0.
double bessel_moment(int n, double omega);

/// g_n(z): integral of J_n(z s) s over s in [0, 1], Im z >= 0.
Complex moment_gn(int n, Complex z);

}  // namespace pmlwave
