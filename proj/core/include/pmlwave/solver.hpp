#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pmlwave/profile.hpp"
#include "pmlwave/reference.hpp"
#include "pmlwave/source.hpp"

namespace pmlwave {

enum class Parity { Cos, Sin };

/// Radial samples of one angular component of the source.
struct ModalSource {
  int n = 0;
  Parity parity = Parity::Cos;
  std::vector<double> f;
};

struct Decomposition {
  std::vector<ModalSource> modes;  // modes with a nonzero sample only
  double tail_fraction = 0.0;      // share of the sampled L2 mass beyond n_modes
  std::vector<std::string> warnings;
};

/// Trapezoid-rule Fourier decomposition of the source on the radial grid.
Decomposition decompose_source(const SourceSpec& source, const RadialGrid& grid, int n_modes);

struct ModalState {
  int n = 0;
  Parity parity = Parity::Cos;
  double t = 0.0;
  long step = 0;
  std::vector<double> u, q, v, w;

  ModalState() = default;
  ModalState(int n_, Parity p, int M)
      : n(n_), parity(p), u(M + 1, 0.0), q(M + 1, 0.0), v(M + 1, 0.0), w(M + 1, 0.0) {}
};

struct SolverConfig {
  PmlProfile profile;
  RadialGrid grid;
  double dt = 0.005;
  int n_modes = 1;
  SourceSpec source = SourceSpec::gaussian();
  double switch_radius = 1.0;

  /// Throws ConfigError on a violated precondition.
  void validate() const;
};

/// Per-node coefficients shared by every mode of one configuration.
class ModalStepper {
 public:
  explicit ModalStepper(const SolverConfig& config);

  /// Advances state by dt with source samples f scaled by time factor g (taken at t + dt/2).
  void step(ModalState& state, const std::vector<double>& f, double g) const;

  const SolverConfig& config() const { return config_; }

 private:
  SolverConfig config_;
  std::vector<double> r_, alpha_, beta_, vw_damp_;
  std::vector<char> laplace_form_;
  mutable std::vector<double> du_, dq_, eta_;
};

/// One step of a single mode; convenience wrapper around ModalStepper.
void step_mode(ModalState& state, const SolverConfig& config, const std::vector<double>& f_half);

struct Snapshot {
  double t = 0.0;
  std::vector<ModalState> states;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<std::string> warnings;
};

/// Steps every sourced mode from t = 0 and records snapshots at the requested times.
Trajectory run(const SolverConfig& config, const std::vector<double>& sample_times, int jobs = 1);

/// u_pml(r, theta) by modal summation with linear radial interpolation.
double assemble(const std::vector<ModalState>& states, const RadialGrid& grid, double r, double theta);
std::vector<double> assemble(const std::vector<ModalState>& states, const RadialGrid& grid,
                             const std::vector<std::pair<double, double>>& points);

struct PolarSampling {
  int n_r = 128;
  int n_theta = 256;
};

struct SupError {
  double error = 0.0;      // max |u_pml - u| over the sampled closed unit disk
  double reference = 0.0;  // max |u|
  double pml = 0.0;        // max |u_pml|
  double relative() const { return reference > 0.0 ? error / reference : error; }
};

/// u_pml and u on the polar grid r_i = i/(n_r - 1), theta_k = 2 pi k / n_theta, stored row-major in (i, k).
struct DiskSamples {
  PolarSampling sampling;
  std::vector<double> radii;
  std::vector<double> pml;
  std::vector<double> reference;

  double theta(int k) const;
  SupError sup() const;
};

DiskSamples sample_unit_disk(const std::vector<ModalState>& states, const RadialGrid& grid,
                             const ReferenceSeries& reference, double c, double t, PolarSampling sampling = {});

/// Compares the assembled solution with the reference translated to (c, 0).
SupError sup_error_unit_disk(const std::vector<ModalState>& states, const RadialGrid& grid,
                             const ReferenceSeries& reference, double c, double t,
                             PolarSampling sampling = {});

}  // namespace pmlwave
