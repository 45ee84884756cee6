#include "pmlwave/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pmlwave/bessel.hpp"
#include "pmlwave/error.hpp"
#include "pmlwave/quadrature.hpp"

namespace pmlwave {

namespace {

using std::numbers::pi;
constexpr int kGradedLevels = 60;
constexpr int kNodesPerPanel = 48;

// Panels of width pi / (2 scale) on [0, omega_max]; the first panel is graded
// geometrically towards 0 for integrable logarithmic behaviour there.
template <class F>
IntegralResult oscillatory(F&& f, double scale, const OscillatorySpec& spec) {
  const double width = pi / (2.0 * scale);
  const double omega_max = spec.omega_max;
  IntegralResult out;
  double error = 0.0;

  double hi = width;
  for (int k = 0; k < kGradedLevels; ++k) {
    const double lo = 0.5 * hi;
    const auto piece = quad::panels(f, lo, hi, hi - lo, spec.panel_tol / (2 * kGradedLevels));
    out.value += piece.value;
    error += piece.error;
    hi = lo;
  }

  const auto count = static_cast<long>(std::ceil((omega_max - width) / width));
  const double h = (omega_max - width) / static_cast<double>(count);
  std::vector<double> running;
  for (long p = 0; p < count; ++p) {
    const double a = width + h * static_cast<double>(p);
    const double b = (p + 1 == count) ? omega_max : a + h;
    const auto piece = quad::panels(f, a, b, h, 0.5 * spec.panel_tol / static_cast<double>(count));
    out.value += piece.value;
    error += piece.error;
    if (b >= 0.5 * omega_max) running.push_back(out.value);
  }
  // Oscillation of the running integral over [omega_max/2, omega_max] bounds the remaining tail.
  double tail = 0.0;
  for (double v : running) tail = std::max(tail, std::abs(v - out.value));
  out.tail = tail;
  out.error = error + tail;
  if (out.error > spec.fail_above) {
    std::ostringstream os;
    os << "oscillatory quadrature error estimate " << out.error << " exceeds " << spec.fail_above;
    throw QuadratureError(os.str());
  }
  return out;
}

void check_I_args(double R, double L) {
  if (!(R > 0.0) || !(L > 0.0)) throw DomainError("I1/I2 require R > 0 and L > 0");
}

}  // namespace

IntegralResult eval_I1(double R, double L, const OscillatorySpec& spec) {
  check_I_args(R, L);
  const auto f = [R, L](double w) {
    const double moment = bessel_j(1, 0.5 * w) / w;
    const double sl = std::sin(L * w);
    return moment * (bessel_y(0, w * R) * std::sin(2.0 * L * w) / w + 2.0 * bessel_j(0, w * R) * sl * sl / w);
  };
  return oscillatory(f, std::max(R, 2.0 * L), spec);
}

IntegralResult eval_I2(double R, double L, const OscillatorySpec& spec) {
  check_I_args(R, L);
  const auto f = [R, L](double w) {
    const double sl = std::sin(L * w);
    return bessel_j(1, 0.5 * w) *
           (bessel_j(0, w * R) * std::sin(2.0 * L * w) / w - 2.0 * bessel_y(0, w * R) * sl * sl / w);
  };
  return oscillatory(f, std::max(R, 2.0 * L), spec);
}

RatioScan hankel_ratio_scan(int n, double alpha0, const std::vector<double>& R_values,
                            const std::vector<double>& omega_values) {
  if (!(alpha0 > 0.0)) throw DomainError("hankel_ratio_scan requires alpha0 > 0");
  RatioScan scan;
  scan.min = std::numeric_limits<double>::infinity();
  scan.max = 0.0;
  for (double R : R_values) {
    for (double w : omega_values) {
      const double scaled = std::abs(hankel_ratio(n, w, alpha0, R)) * std::exp(2.0 * alpha0 * R);
      scan.samples.push_back({n, R, w, scaled});
      scan.min = std::min(scan.min, scaled);
      scan.max = std::max(scan.max, scaled);
    }
  }
  return scan;
}

MomentEnvelope moment_decay_check(int n, int points_per_decade) {
  if (n < 0 || n > 8) throw DomainError("moment_decay_check covers 0 <= n <= 8");
  MomentEnvelope env;
  env.n = n;
  const int decades = 7;
  const int count = decades * points_per_decade + 1;
  for (int k = 0; k < count; ++k) {
    const double w = std::pow(10.0, -3.0 + static_cast<double>(k) / points_per_decade);
    const double bound = std::min(std::min(std::pow(w, n), 1.0), 1.0 / std::sqrt(w));
    const double r = std::abs(bessel_moment(n, w)) / bound;
    env.omega.push_back(w);
    env.ratio.push_back(r);
    if (r > env.sup) {
      env.sup = r;
      env.argmax = w;
    }
  }
  const auto window_max = [&](int a, int b) {
    return *std::max_element(env.ratio.begin() + a, env.ratio.begin() + b);
  };
  const int d = points_per_decade;
  const bool left_flat = env.ratio.front() <= 1.01 * window_max(1, d + 1);
  const bool right_flat = env.ratio.back() <= 1.01 * window_max(count - 1 - 2 * d, count - 1 - d);
  env.bounded = std::isfinite(env.sup) && left_flat && right_flat;
  return env;
}

double profile_moment(int n, double omega, const SourceSpec& profile) {
  if (!(omega > 0.0)) throw DomainError("profile_moment requires omega > 0");
  std::vector<double> cuts{0.0};
  for (double k : profile.kinks()) {
    if (k > cuts.back()) cuts.push_back(k);
  }
  const auto f = [&](double s) { return bessel_j(n, omega * s) * s * profile.radial_profile(s); };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil(omega * (b - a) / 2.0)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) sum += quad::gauss<16>(f, a + p * h, a + (p + 1) * h);
  }
  return sum;
}

WEvaluator::WEvaluator(WParams params) : params_(std::move(params)) {
  if (params_.a.empty()) throw DomainError("eval_W needs at least one angular coefficient");
  if (!(params_.R > 2.0)) throw DomainError("eval_W requires R > 2");
  if (!(params_.L > 0.0) || !(params_.alpha0 > 0.0)) throw DomainError("eval_W requires L > 0 and alpha0 > 0");
  build_nodes();
  build_moments();
  build_kernel();
}

void WEvaluator::build_nodes() {
  omega_max_ = params_.omega_max > 0.0 ? params_.omega_max : std::max(200.0, 50.0 / params_.L);
  const double scale = std::max({params_.R, 2.0 * params_.L, params_.t_max});
  const auto count = static_cast<long>(std::ceil(omega_max_ / (pi / (2.0 * scale))));
  width_ = omega_max_ / static_cast<double>(count);
  const auto& rule = quad::GaussLegendre<16>::instance();
  nodes_.clear();
  nodes_.reserve(static_cast<std::size_t>(count) * kNodesPerPanel);
  const auto push_rule = [&](double a, double b, int level) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < 16; ++i) nodes_.push_back({mid + half * rule.nodes[i], half * rule.weights[i], level});
  };
  for (long p = 0; p < count; ++p) {
    const double a = width_ * static_cast<double>(p);
    const double b = a + width_;
    const double m = 0.5 * (a + b);
    push_rule(a, b, 0);
    push_rule(a, m, 1);
    push_rule(m, b, 1);
  }
}

void WEvaluator::build_moments() {
  moments_.assign(params_.a.size(), {});
  for (std::size_t n = 0; n < params_.a.size(); ++n) {
    if (params_.a[n] == 0.0) continue;
    moments_[n].resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      moments_[n][k] = profile_moment(static_cast<int>(n), nodes_[k].omega, params_.profile);
    }
  }
}

void WEvaluator::build_kernel() {
  kernel_.assign(params_.a.size(), {});
  const double L = params_.L;
  for (std::size_t n = 0; n < params_.a.size(); ++n) {
    if (params_.a[n] == 0.0) continue;
    kernel_[n].resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const double w = nodes_[k].omega;
      const Complex ratio = hankel_ratio(static_cast<int>(n), w, params_.alpha0, params_.R);
      const Complex window = std::exp(Complex(0.0, L * w)) * (std::sin(L * w) / w);
      kernel_[n][k] = params_.a[n] * ratio * window * moments_[n][k];
    }
  }
}

WEvaluator WEvaluator::with_radius(double R) const {
  WEvaluator copy = *this;
  copy.params_.R = R;
  if (!(R > 2.0)) throw DomainError("eval_W requires R > 2");
  const double old_scale = std::max({params_.R, 2.0 * params_.L, params_.t_max});
  const double new_scale = std::max({R, 2.0 * params_.L, params_.t_max});
  if (new_scale != old_scale) {
    copy.build_nodes();
    copy.build_moments();
  }
  copy.build_kernel();
  return copy;
}

double WEvaluator::envelope() const {
  double s = 0.0;
  for (std::size_t n = 1; n < params_.a.size(); ++n) s += std::abs(params_.a[n]);
  s += (std::abs(std::log(params_.L)) + 1.0) * std::abs(params_.a[0]);
  return std::exp(-2.0 * params_.alpha0 * params_.R) * s;
}

WResult WEvaluator::operator()(double t, double r, double theta) const {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("eval_W requires 0 <= r < 1");
  if (t < 0.0 || t > params_.t_max + 1e-12) throw DomainError("eval_W time outside the tabulated range");
  const std::size_t panels = nodes_.size() / kNodesPerPanel;
  std::vector<double> fine(panels, 0.0);
  std::vector<double> coarse(panels, 0.0);
  for (std::size_t n = 0; n < params_.a.size(); ++n) {
    if (kernel_[n].empty()) continue;
    const double ang = std::cos(static_cast<double>(n) * theta);
    if (ang == 0.0) continue;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const Node& node = nodes_[k];
      const Complex e = std::exp(Complex(0.0, -t * node.omega));
      const double v = node.weight * ang * (kernel_[n][k] * e).imag() * bessel_j(static_cast<int>(n), node.omega * r);
      (node.level == 0 ? coarse : fine)[k / kNodesPerPanel] += v;
    }
  }
  WResult out;
  double refine = 0.0;
  std::vector<double> running;
  for (std::size_t p = 0; p < panels; ++p) {
    out.value += fine[p];
    refine += std::abs(fine[p] - coarse[p]);
    if (width_ * static_cast<double>(p + 1) >= 0.5 * omega_max_) running.push_back(out.value);
  }
  double tail = 0.0;
  for (double v : running) tail = std::max(tail, std::abs(v - out.value));
  out.error = refine + tail;

  double scale = 0.0;
  for (double a : params_.a) scale += std::abs(a);
  scale *= std::exp(-2.0 * params_.alpha0 * params_.R);
  if (out.error > params_.fail_fraction * scale) {
    std::ostringstream os;
    os << "eval_W error estimate " << out.error << " exceeds " << params_.fail_fraction << " of " << scale;
    throw QuadratureError(os.str());
  }
  return out;
}

DecayFit decay_fit(const std::vector<double>& R, const std::vector<double>& error, double alpha0) {
  if (R.size() != error.size()) throw DomainError("decay_fit: R and error differ in length");
  DecayFit fit;
  fit.expected_slope = -2.0 * alpha0;
  fit.R = R;
  fit.error = error;
  const std::size_t count = R.size();
  fit.floor.assign(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(error[i] > 0.0)) throw DomainError("decay_fit requires positive errors");
    if (i > 0 && !(R[i] > R[i - 1])) throw DomainError("decay_fit requires increasing R");
  }
  if (count < 5) {
    fit.message = "decay_fit needs at least 5 samples";
    return fit;
  }
  // Floor onset: first sample that fails to drop by 10% from its predecessor.
  std::size_t onset = count;
  for (std::size_t i = 1; i < count; ++i) {
    if (error[i] > 0.9 * error[i - 1]) {
      onset = i;
      break;
    }
  }
  const std::size_t window_end = onset == count ? count : onset - 1;
  for (std::size_t i = window_end; i < count; ++i) fit.floor[i] = true;
  fit.window_begin = 0;
  fit.window_end = window_end;
  if (window_end < 4) {
    std::ostringstream os;
    os << "only " << window_end << " samples precede the error floor; need 4";
    fit.message = os.str();
    return fit;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto m = static_cast<double>(window_end);
  for (std::size_t i = 0; i < window_end; ++i) {
    const double y = std::log(error[i]);
    sx += R[i];
    sy += y;
    sxx += R[i] * R[i];
    sxy += R[i] * y;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < window_end; ++i) {
    const double d = std::log(error[i]) - (fit.intercept + fit.slope * R[i]);
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / m);
  fit.ok = true;
  return fit;
}

}  // namespace pmlwave
