#include "pmlwave/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmlwave/bessel.hpp"
#include "pmlwave/error.hpp"
#include "pmlwave/quadrature.hpp"

namespace pmlwave {

namespace {

constexpr double kTailWarnRatio = 1e-6;

double mode_coefficient(const SourceSpec& src, double weight, int n, double root, double R2) {
  const double lambda = root / R2;
  std::vector<double> cuts{0.0};
  for (double k : src.kinks()) {
    if (k > cuts.back()) cuts.push_back(k);
  }
  const auto f = [&](double r) { return r * src.radial_profile(r) * bessel_j(n, lambda * r); };
  const double width = 4.0 / lambda;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    integral += quad::panels(f, cuts[i], cuts[i + 1], width, 1e-15 * src.amplitude).value;
  }
  const double jn1 = bessel_j(n + 1, root);
  return weight * integral / (0.5 * R2 * R2 * jn1 * jn1);
}

void check_time(const ReferenceSeries& s, double t) {
  if (!(t >= 0.0) || t > s.t_max + 1e-12) {
    std::ostringstream os;
    os << "reference evaluated at t=" << t << " outside validity window [0, " << s.t_max << "]";
    throw DomainError(os.str());
  }
}

}  // namespace

double ReferenceSeries::time_amplitude(double lambda, double t) const {
  const auto ramp = [lambda](double tau) {
    if (tau <= 0.0) return 0.0;
    const double s = std::sin(0.5 * lambda * tau);
    return 2.0 * s * s / (lambda * lambda);
  };
  double v = ramp(t);
  if (source.window) v -= ramp(t - 2.0 * *source.window);
  return v;
}

int default_series_length(const SourceSpec& source, double R2) {
  const double per_unit = source.profile == Profile::Gaussian ? 50.0 : 200.0;
  return static_cast<int>(std::ceil(per_unit * R2));
}

ReferenceSeries build_series(const SourceSpec& source, double R2, int n_series) {
  if (n_series < 8) throw DomainError("reference series needs at least 8 terms");
  ReferenceSeries s;
  s.source = source;
  s.source.offset = 0.0;
  s.R2 = R2;
  s.n_series = n_series;
  const double support = s.source.support_radius();
  s.t_max = R2 - 1.0 - support;
  if (!(s.t_max > 0.0)) throw DomainError("expansion radius R2 too small for any positive time");

  std::vector<std::pair<int, double>> weights;
  if (s.source.angular.empty()) {
    weights.emplace_back(0, 1.0);
  } else {
    for (std::size_t n = 0; n < s.source.angular.size(); ++n) {
      if (s.source.angular[n] != 0.0) weights.emplace_back(static_cast<int>(n), s.source.angular[n]);
    }
  }

  for (auto [n, w] : weights) {
    ModeSeries m;
    m.n = n;
    double tail = 0.0;
    for (int k = 1; k <= 2 * n_series; ++k) {
      const double root = bessel_j_zero(n, k);
      const double a = mode_coefficient(s.source, w, n, root, R2);
      const double bound = 2.0 * std::abs(a) * R2 * R2 / (root * root);
      if (k <= n_series) {
        m.roots.push_back(root);
        m.coeffs.push_back(a);
        s.magnitude += bound;
      } else {
        tail += bound;
      }
    }
    m.tail = tail;
    s.tail_estimate += tail;
    s.modes.push_back(std::move(m));
  }
  if (s.tail_estimate > kTailWarnRatio * s.magnitude) {
    std::ostringstream os;
    os << "reference tail estimate " << s.tail_estimate << " exceeds " << kTailWarnRatio
       << " of series magnitude " << s.magnitude;
    s.warnings.push_back(os.str());
  }
  return s;
}

double eval_mode(const ReferenceSeries& series, std::size_t mode, double t, double r) {
  check_time(series, t);
  if (r < 0.0 || r > series.R2) throw DomainError("reference evaluated outside [0, R2]");
  const ModeSeries& m = series.modes.at(mode);
  double sum = 0.0;
  for (std::size_t k = 0; k < m.roots.size(); ++k) {
    const double lambda = m.roots[k] / series.R2;
    const double amp = series.time_amplitude(lambda, t);
    if (amp == 0.0) continue;
    sum += m.coeffs[k] * amp * bessel_j(m.n, lambda * r);
  }
  return sum;
}

double eval_reference(const ReferenceSeries& series, double t, double r) {
  double sum = 0.0;
  for (std::size_t i = 0; i < series.modes.size(); ++i) {
    if (series.modes[i].n == 0) sum += eval_mode(series, i, t, r);
  }
  return sum;
}

double eval_reference_polar(const ReferenceSeries& series, double t, double r, double theta) {
  double sum = 0.0;
  for (std::size_t i = 0; i < series.modes.size(); ++i) {
    sum += std::cos(series.modes[i].n * theta) * eval_mode(series, i, t, r);
  }
  return sum;
}

double eval_reference_offset(const ReferenceSeries& series, double t, double x, double y, double c) {
  const double dx = x - c;
  const double r = std::sqrt(dx * dx + y * y);
  return eval_reference_polar(series, t, r, std::atan2(y, dx));
}

RadialTable::RadialTable(const ReferenceSeries& series, std::size_t mode, double t, double rho_max,
                         double spacing)
    : h_(spacing), mirror_(series.modes.at(mode).n % 2 == 0 ? 1.0 : -1.0) {
  const auto count = static_cast<std::size_t>(std::ceil(rho_max / spacing)) + 3;
  values_.resize(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    values_[i] = eval_mode(series, mode, t, std::min(series.R2, static_cast<double>(i) * spacing));
  }
}

double RadialTable::operator()(double rho) const {
  const double x = rho / h_;
  auto i = static_cast<long>(std::floor(x));
  const long last = static_cast<long>(values_.size()) - 1;
  if (i < 0 || i > last) throw DomainError("RadialTable lookup outside tabulated range");
  // Stencil i-1..i+2, shifted at the far end and mirrored through rho = 0.
  const auto at = [&](long j) {
    const double v = values_[static_cast<std::size_t>(std::abs(j))];
    return j < 0 ? mirror_ * v : v;
  };
  long base = std::min(i - 1, last - 3);
  const double s = x - static_cast<double>(base);
  const double p0 = at(base);
  const double p1 = at(base + 1);
  const double p2 = at(base + 2);
  const double p3 = at(base + 3);
  return -p0 * (s - 1) * (s - 2) * (s - 3) / 6.0 + p1 * s * (s - 2) * (s - 3) / 2.0 -
         p2 * s * (s - 1) * (s - 3) / 2.0 + p3 * s * (s - 1) * (s - 2) / 6.0;
}

}  // namespace pmlwave
