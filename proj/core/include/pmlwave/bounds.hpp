#pragma once

#include <string>
#include <vector>

#include "pmlwave/scaled_complex.hpp"
#include "pmlwave/source.hpp"

namespace pmlwave {

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;  // panel refinement estimate plus tail estimate
  double tail = 0.0;   // tail part of `error`
};

struct OscillatorySpec {
  double omega_max = 2000.0;
  double panel_tol = 1e-10;
  double fail_above = 1e-4;
};

/// The two vanishing integrals built from the frequency-domain solution at radius R.
IntegralResult eval_I1(double R, double L, const OscillatorySpec& spec = {});
IntegralResult eval_I2(double R, double L, const OscillatorySpec& spec = {});

struct RatioSample {
  int n = 0;
  double R = 0.0;
  double omega = 0.0;
  double scaled = 0.0;  // exp(2 alpha0 R) |H_n^(1)/J_n|
};

struct RatioScan {
  std::vector<RatioSample> samples;
  double min = 0.0;
  double max = 0.0;
};

RatioScan hankel_ratio_scan(int n, double alpha0, const std::vector<double>& R_values,
                            const std::vector<double>& omega_values);

struct MomentEnvelope {
  int n = 0;
  std::vector<double> omega;
  std::vector<double> ratio;  // |moment| / min(omega^n ^ 1, omega^-1/2)
  double sup = 0.0;
  double argmax = 0.0;
  bool bounded = false;  // finite and not growing towards either end of the scan
};

/// Scans bessel_moment over a log grid of omega in [1e-3, 1e4].
MomentEnvelope moment_decay_check(int n, int points_per_decade = 20);

/// Integral of J_n(omega s) s p(s) ds over the support of a radial profile.
double profile_moment(int n, double omega, const SourceSpec& profile);

struct WParams {
  std::vector<double> a;  // angular coefficients a_0..a_N
  double L = 3.0;
  double alpha0 = 1.0;
  double R = 2.2;
  double t_max = 5.0;  // largest time to be evaluated; sets the panel width
  SourceSpec profile = SourceSpec::modal_indicator({1.0}, 3.0);
  double omega_max = 0.0;  // 0 selects max(200, 50/L)
  double fail_fraction = 0.1;
};

struct WResult {
  double value = 0.0;
  double error = 0.0;
};

/**
 * W(t, r, theta): difference u_pml - u on the unit disk for the windowed
 * modal indicator source, by oscillatory quadrature in omega.
 * Kernel and moment values are tabulated once at the quadrature nodes.
 */
class WEvaluator {
 public:
  explicit WEvaluator(WParams params);

  WResult operator()(double t, double r, double theta) const;

  /// Same nodes and moments, kernel recomputed for another truncation radius.
  WEvaluator with_radius(double R) const;

  /// e^{-2 alpha0 R} (sum_{n>=1} |a_n| + (|log L| + 1)|a_0|).
  double envelope() const;
  const WParams& params() const { return params_; }
  double omega_max() const { return omega_max_; }
  double panel_width() const { return width_; }

 private:
  struct Node {
    double omega;
    double weight;
    int level;  // 0: whole-panel rule, 1: half-panel rule
  };
  void build_nodes();
  void build_kernel();
  void build_moments();

  WParams params_;
  double omega_max_ = 0.0;
  double width_ = 0.0;
  std::vector<Node> nodes_;
  std::vector<std::vector<double>> moments_;  // [n][node], 48 nodes per panel
  std::vector<std::vector<Complex>> kernel_;  // [n][node]
};

struct DecayFit {
  double expected_slope = 0.0;  // -2 alpha0
  std::vector<double> R;
  std::vector<double> error;
  std::vector<bool> floor;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  std::size_t window_begin = 0;
  std::size_t window_end = 0;  // exclusive
  bool ok = false;
  std::string message;
};

/// Least-squares slope of log(error) against R over the samples before the floor.
DecayFit decay_fit(const std::vector<double>& R, const std::vector<double>& error, double alpha0);

}  // namespace pmlwave
