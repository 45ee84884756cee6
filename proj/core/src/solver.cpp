#include "pmlwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pmlwave/error.hpp"
#include "pmlwave/parallel.hpp"

namespace pmlwave {

namespace {

constexpr double kModalTailWarn = 1e-4;
constexpr double kModeFloor = 1e-13;

double linear_sample(const std::vector<double>& a, double dr, double r) {
  const double x = r / dr;
  auto j = static_cast<std::size_t>(x);
  if (j >= a.size() - 1) return a.back();
  const double s = x - static_cast<double>(j);
  return (1.0 - s) * a[j] + s * a[j + 1];
}

}  // namespace

Decomposition decompose_source(const SourceSpec& source, const RadialGrid& grid, int n_modes) {
  if (n_modes < 1) throw ConfigError("n_modes must be positive");
  Decomposition d;
  const int n_theta = std::max(8 * n_modes, 512);
  const int M = grid.M;
  std::vector<std::vector<double>> cos_c(n_modes, std::vector<double>(M + 1, 0.0));
  std::vector<std::vector<double>> sin_c(n_modes, std::vector<double>(M + 1, 0.0));
  std::vector<double> cs(n_theta), sn(n_theta), samples(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    cs[k] = std::cos(2.0 * std::numbers::pi * k / n_theta);
    sn[k] = std::sin(2.0 * std::numbers::pi * k / n_theta);
  }
  double total = 0.0;
  double kept = 0.0;
  for (int j = 0; j <= M; ++j) {
    const double r = grid.r(j);
    double mass = 0.0;
    if (source.is_radial()) {
      // Exact: no angular sampling noise at a truncation edge.
      cos_c[0][j] = source.radial_profile(r);
      total += r * cos_c[0][j] * cos_c[0][j];
      kept += r * cos_c[0][j] * cos_c[0][j];
      continue;
    }
    if (j == 0 && !source.angular.empty()) {
      // cos(n theta) has no value at the origin; only the mean survives there.
      cos_c[0][0] = source.angular.front() * source.radial_profile(std::abs(source.offset));
      continue;
    }
    for (int k = 0; k < n_theta; ++k) {
      samples[k] = source.spatial(r * cs[k], r * sn[k]);
      mass += samples[k] * samples[k];
    }
    if (mass == 0.0) continue;
    // Discrete L2 mass on this ring, in the normalisation of the mean square.
    total += r * mass / n_theta;
    for (int n = 0; n < n_modes; ++n) {
      double c = 0.0;
      double s = 0.0;
      for (int k = 0; k < n_theta; ++k) {
        const auto p = static_cast<std::size_t>((static_cast<long>(n) * k) % n_theta);
        c += samples[k] * cs[p];
        s += samples[k] * sn[p];
      }
      if (n == 0) {
        cos_c[0][j] = c / n_theta;
        kept += r * cos_c[0][j] * cos_c[0][j];
      } else {
        cos_c[n][j] = 2.0 * c / n_theta;
        sin_c[n][j] = 2.0 * s / n_theta;
        kept += 0.5 * r * (cos_c[n][j] * cos_c[n][j] + sin_c[n][j] * sin_c[n][j]);
      }
    }
  }
  // Round-off from the trapezoid sums is not a mode.
  double peak = 0.0;
  for (int n = 0; n < n_modes; ++n) {
    for (int j = 0; j <= M; ++j) peak = std::max({peak, std::abs(cos_c[n][j]), std::abs(sin_c[n][j])});
  }
  const double floor = kModeFloor * peak;
  const auto nonzero = [floor](const std::vector<double>& f) {
    return std::any_of(f.begin(), f.end(), [floor](double x) { return std::abs(x) > floor; });
  };
  for (int n = 0; n < n_modes; ++n) {
    if (nonzero(cos_c[n])) d.modes.push_back({n, Parity::Cos, std::move(cos_c[n])});
    if (n > 0 && nonzero(sin_c[n])) d.modes.push_back({n, Parity::Sin, std::move(sin_c[n])});
  }
  d.tail_fraction = total > 0.0 ? std::max(0.0, 1.0 - kept / total) : 0.0;
  if (d.tail_fraction > kModalTailWarn) {
    std::ostringstream os;
    os << "modes >= " << n_modes << " carry " << d.tail_fraction << " of the source L2 mass";
    d.warnings.push_back(os.str());
  }
  return d;
}

void SolverConfig::validate() const {
  if (!(profile.alpha0 >= 0.0)) throw ConfigError("alpha0 must be non-negative");
  if (grid.M < 64) throw ConfigError("radial grid needs M >= 64");
  if (!(grid.R > switch_radius)) throw ConfigError("R must exceed the unit disk");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (dt > 0.5 * grid.dr() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt=" << dt << " exceeds 0.5*dr=" << 0.5 * grid.dr();
    throw ConfigError(os.str());
  }
  if (n_modes < 1) throw ConfigError("n_modes must be positive");
  if (!source.angular.empty() && n_modes < static_cast<int>(source.angular.size())) {
    throw ConfigError("n_modes smaller than the source's angular band");
  }
  source.validate();
}

ModalStepper::ModalStepper(const SolverConfig& config) : config_(config) {
  const int M = config.grid.M;
  const double dt = config.dt;
  r_.resize(M + 1);
  alpha_.resize(M + 1);
  beta_.resize(M + 1);
  vw_damp_.resize(M + 1);
  laplace_form_.resize(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double r = config.grid.r(j);
    r_[j] = r;
    alpha_[j] = config.profile.alpha(r);
    beta_[j] = config.profile.beta(r);
    vw_damp_[j] = 1.0 / (1.0 + beta_[j] * dt);
    laplace_form_[j] = r < config.switch_radius - 1e-9 * config.grid.dr();
  }
  du_.resize(M + 1);
  dq_.resize(M + 1);
  eta_.resize(M + 1);
}

void ModalStepper::step(ModalState& s, const std::vector<double>& f, double g) const {
  const int M = config_.grid.M;
  const double dt = config_.dt;
  const double h = config_.grid.dr();
  const double ih2 = 1.0 / (h * h);
  const double i2h = 0.5 / h;
  const double nn = static_cast<double>(s.n) * s.n;
  auto& u = s.u;
  auto& q = s.q;
  auto& v = s.v;
  auto& w = s.w;
  const bool has_f = !f.empty() && g != 0.0;
  const auto src = [&](int j) { return has_f ? g * f[j] : 0.0; };

  // (i) q from the old u, w.
  if (s.n == 0) {
    q[0] += dt * (4.0 * (u[1] - u[0]) * ih2 + src(0));
  } else {
    q[0] = 0.0;
  }
  // The angular term -n^2 u / r^2 is taken at the new level u + dt q, which
  // keeps high modes stable next to the origin.
  const double nn_dt2 = nn * dt * dt;
  for (int j = 1; j < M; ++j) {
    const double r = r_[j];
    const double ir2 = 1.0 / (r * r);
    if (laplace_form_[j]) {
      const double lap = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * ih2 + (u[j + 1] - u[j - 1]) * i2h / r - nn * u[j] * ir2;
      q[j] = (q[j] + dt * (lap + src(j))) / (1.0 + nn_dt2 * ir2);
    } else {
      const double a = alpha_[j];
      q[j] = (q[j] + dt * (-a * a * u[j] + (w[j] - nn * u[j]) * ir2 + src(j))) /
             (1.0 + 2.0 * a * dt + nn_dt2 * ir2);
    }
  }
  q[M] = 0.0;

  // (ii) u
  for (int j = 0; j < M; ++j) u[j] += dt * q[j];
  u[M] = 0.0;
  if (s.n > 0) u[0] = 0.0;

  // Radial derivatives: central inside, one-sided second order at r = R.
  const auto deriv = [&](const std::vector<double>& x, std::vector<double>& out) {
    out[0] = 0.0;
    for (int j = 1; j < M; ++j) out[j] = (x[j + 1] - x[j - 1]) * i2h;
    out[M] = (3.0 * x[M] - 4.0 * x[M - 1] + x[M - 2]) * i2h;
  };
  deriv(u, du_);
  deriv(q, dq_);

  // (iii) v and (iv) eta
  v[0] = 0.0;
  eta_[0] = 0.0;
  for (int j = 1; j < M; ++j) {
    const double rdq = r_[j] * dq_[j];
    const double ardu = alpha_[j] * r_[j] * du_[j];
    v[j] = (v[j] + dt * (rdq + ardu)) * vw_damp_[j];
    eta_[j] = -beta_[j] * v[j] + rdq + ardu;
  }
  v[M] = 0.0;
  eta_[M] = r_[M] * dq_[M] + alpha_[M] * r_[M] * du_[M];

  // (v) w, reusing the scratch arrays for D eta and D v.
  deriv(eta_, dq_);
  deriv(v, du_);
  w[0] = 0.0;
  for (int j = 1; j < M; ++j) {
    w[j] = (w[j] + dt * (r_[j] * dq_[j] + alpha_[j] * r_[j] * du_[j])) * vw_damp_[j];
  }
  w[M] = 0.0;

  s.t += dt;
  ++s.step;
  double check = 0.0;
  for (int j = 0; j <= M; ++j) check += u[j] * u[j] + w[j] * w[j];
  if (!std::isfinite(check)) throw NumericalAbort("non-finite field in mode " + std::to_string(s.n), s.step);
}

void step_mode(ModalState& state, const SolverConfig& config, const std::vector<double>& f_half) {
  const ModalStepper stepper(config);
  stepper.step(state, f_half, 1.0);
}

Trajectory run(const SolverConfig& config, const std::vector<double>& sample_times, int jobs) {
  config.validate();
  Trajectory traj;
  const Decomposition dec = decompose_source(config.source, config.grid, config.n_modes);
  traj.warnings = dec.warnings;

  std::vector<long> sample_steps;
  long last = 0;
  for (double t : sample_times) {
    if (t < 0.0) throw ConfigError("sample time must be non-negative");
    const long k = std::lround(t / config.dt);
    if (std::abs(k * config.dt - t) > 1e-9 * std::max(1.0, t)) {
      throw ConfigError("sample time is not a multiple of dt");
    }
    sample_steps.push_back(k);
    last = std::max(last, k);
  }
  traj.snapshots.resize(sample_times.size());
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    traj.snapshots[i].t = sample_steps[i] * config.dt;
    traj.snapshots[i].states.resize(dec.modes.size());
  }

  parallel_for(dec.modes.size(), jobs, [&](std::size_t m) {
    const ModalSource& src = dec.modes[m];
    const ModalStepper stepper(config);
    ModalState state(src.n, src.parity, config.grid.M);
    for (std::size_t i = 0; i < sample_steps.size(); ++i) {
      if (sample_steps[i] == 0) traj.snapshots[i].states[m] = state;
    }
    for (long k = 0; k < last; ++k) {
      const double g = config.source.time_factor((static_cast<double>(k) + 0.5) * config.dt);
      stepper.step(state, src.f, g);
      for (std::size_t i = 0; i < sample_steps.size(); ++i) {
        if (sample_steps[i] == k + 1) traj.snapshots[i].states[m] = state;
      }
    }
  });
  return traj;
}

double assemble(const std::vector<ModalState>& states, const RadialGrid& grid, double r, double theta) {
  if (r < 0.0 || r > grid.R * (1.0 + 1e-12)) throw DomainError("assemble: r outside [0, R]");
  double sum = 0.0;
  for (const ModalState& s : states) {
    const double trig = s.parity == Parity::Cos ? std::cos(s.n * theta) : std::sin(s.n * theta);
    sum += trig * linear_sample(s.u, grid.dr(), std::min(r, grid.R));
  }
  return sum;
}

std::vector<double> assemble(const std::vector<ModalState>& states, const RadialGrid& grid,
                             const std::vector<std::pair<double, double>>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (auto [r, theta] : points) out.push_back(assemble(states, grid, r, theta));
  return out;
}

DiskSamples sample_unit_disk(const std::vector<ModalState>& states, const RadialGrid& grid,
                             const ReferenceSeries& reference, double c, double t, PolarSampling sampling) {
  if (sampling.n_r < 2 || sampling.n_theta < 1) throw DomainError("polar sampling too coarse");
  const int nr = sampling.n_r;
  const int nt = sampling.n_theta;
  std::vector<double> radii(nr);
  for (int i = 0; i < nr; ++i) radii[i] = static_cast<double>(i) / (nr - 1);
  std::vector<double> cos_t(nt), sin_t(nt);
  for (int k = 0; k < nt; ++k) {
    const double th = 2.0 * std::numbers::pi * k / nt;
    cos_t[k] = std::cos(th);
    sin_t[k] = std::sin(th);
  }

  // Modal radial values at the sample radii, and the angular factors.
  std::vector<std::vector<double>> radial(states.size(), std::vector<double>(nr));
  std::vector<std::vector<double>> angular(states.size(), std::vector<double>(nt));
  for (std::size_t m = 0; m < states.size(); ++m) {
    for (int i = 0; i < nr; ++i) radial[m][i] = linear_sample(states[m].u, grid.dr(), radii[i]);
    for (int k = 0; k < nt; ++k) {
      const double th = 2.0 * std::numbers::pi * k / nt;
      angular[m][k] = states[m].parity == Parity::Cos ? std::cos(states[m].n * th) : std::sin(states[m].n * th);
    }
  }

  const bool radial_ref = reference.source.angular.empty();
  std::vector<double> centred;
  std::vector<RadialTable> tables;
  if (radial_ref && c == 0.0) {
    centred.resize(nr);
    for (int i = 0; i < nr; ++i) centred[i] = eval_reference(reference, t, radii[i]);
  } else {
    for (std::size_t m = 0; m < reference.modes.size(); ++m) tables.emplace_back(reference, m, t, 1.0 + c, 5e-4);
  }

  DiskSamples out;
  out.sampling = sampling;
  out.radii = radii;
  out.pml.resize(static_cast<std::size_t>(nr) * nt);
  out.reference.resize(out.pml.size());
  for (int i = 0; i < nr; ++i) {
    for (int k = 0; k < nt; ++k) {
      double pml = 0.0;
      for (std::size_t m = 0; m < states.size(); ++m) pml += radial[m][i] * angular[m][k];
      double ref = 0.0;
      if (!centred.empty()) {
        ref = centred[i];
      } else {
        const double x = radii[i] * cos_t[k] - c;
        const double y = radii[i] * sin_t[k];
        const double rho = std::sqrt(x * x + y * y);
        const double phi = std::atan2(y, x);
        for (std::size_t m = 0; m < tables.size(); ++m) ref += std::cos(reference.modes[m].n * phi) * tables[m](rho);
      }
      out.pml[static_cast<std::size_t>(i) * nt + k] = pml;
      out.reference[static_cast<std::size_t>(i) * nt + k] = ref;
    }
  }
  return out;
}

double DiskSamples::theta(int k) const { return 2.0 * std::numbers::pi * k / sampling.n_theta; }

SupError DiskSamples::sup() const {
  SupError out;
  for (std::size_t i = 0; i < pml.size(); ++i) {
    out.error = std::max(out.error, std::abs(pml[i] - reference[i]));
    out.reference = std::max(out.reference, std::abs(reference[i]));
    out.pml = std::max(out.pml, std::abs(pml[i]));
  }
  return out;
}

SupError sup_error_unit_disk(const std::vector<ModalState>& states, const RadialGrid& grid,
                             const ReferenceSeries& reference, double c, double t, PolarSampling sampling) {
  return sample_unit_disk(states, grid, reference, c, t, sampling).sup();
}

}  // namespace pmlwave
