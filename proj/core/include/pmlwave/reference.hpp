#pragma once

#include <string>
#include <vector>

#include "pmlwave/source.hpp"

namespace pmlwave {

/// Bessel series for one angular mode: u_n(t, r) = sum_k a_k c_k(t) J_n(j_k r / R2).
struct ModeSeries {
  int n = 0;
  std::vector<double> roots;   // j_{n,k}, strictly increasing
  std::vector<double> coeffs;  // a_k
  double tail = 0.0;           // bound on the discarded terms, from terms N+1..2N
};

/**
 * Full-space solution of u_tt - Laplace u = f with zero initial data, expanded
 * in Dirichlet eigenfunctions of a disk of radius R2 centred on the source.
 * Valid while no reflection from r = R2 can reach the unit disk.
 */
struct ReferenceSeries {
  SourceSpec source;  // centred copy of the source the series was built for
  double R2 = 4.0;
  int n_series = 0;
  std::vector<ModeSeries> modes;  // one per nonzero angular coefficient
  double t_max = 0.0;
  double tail_estimate = 0.0;
  double magnitude = 0.0;  // sum_k 2|a_k| R2^2 / j_k^2 over kept terms
  std::vector<std::string> warnings;

  /// Modal amplitude c_k(t) / a_k for eigenvalue lambda = j_k / R2.
  double time_amplitude(double lambda, double t) const;
};

/// Default truncation for a source and expansion radius.
int default_series_length(const SourceSpec& source, double R2);

ReferenceSeries build_series(const SourceSpec& source, double R2, int n_series);
inline ReferenceSeries build_series(const SourceSpec& source, double R2) {
  return build_series(source, R2, default_series_length(source, R2));
}

/// Radial value of mode `mode` (index into series.modes) at (t, r).
double eval_mode(const ReferenceSeries& series, std::size_t mode, double t, double r);

/// u(t, r) for a radially symmetric series.
double eval_reference(const ReferenceSeries& series, double t, double r);

/// u(t, r, theta) summing every angular mode with cos(n theta).
double eval_reference_polar(const ReferenceSeries& series, double t, double r, double theta);

/// u at Cartesian (x, y) for the source translated to (c, 0).
double eval_reference_offset(const ReferenceSeries& series, double t, double x, double y, double c);

/**
 * One mode of a series at fixed t, sampled on a uniform rho grid and read
 * back by four-point Lagrange interpolation.
 */
class RadialTable {
 public:
  RadialTable(const ReferenceSeries& series, std::size_t mode, double t, double rho_max, double spacing);
  double operator()(double rho) const;
  double spacing() const { return h_; }

 private:
  double h_;
  double mirror_;  // (-1)^n: parity of the mode under rho -> -rho
  std::vector<double> values_;
};

}  // namespace pmlwave
