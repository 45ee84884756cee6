#include "pmlwave/source.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pmlwave/error.hpp"

namespace pmlwave {

SourceSpec SourceSpec::gaussian() {
  SourceSpec s;
  s.profile = Profile::Gaussian;
  s.amplitude = 50.0 / std::numbers::pi;
  s.rate = 50.0;
  s.cutoff = 0.5;
  return s;
}

SourceSpec SourceSpec::indicator(double radius, double mollify, double offset) {
  SourceSpec s;
  s.profile = Profile::Indicator;
  s.amplitude = 1.0;
  s.cutoff = radius;
  s.mollify = mollify;
  s.offset = offset;
  return s;
}

SourceSpec SourceSpec::modal_indicator(std::vector<double> a, double L, double mollify) {
  SourceSpec s = indicator(0.5, mollify);
  s.angular = std::move(a);
  s.window = L;
  return s;
}

double SourceSpec::radial_profile(double r) const {
  if (profile == Profile::Gaussian) {
    return r < cutoff ? amplitude * std::exp(-rate * r * r) : 0.0;
  }
  const double half = 0.5 * mollify;
  if (r <= cutoff - half) return amplitude;
  if (r >= cutoff + half) return 0.0;
  return amplitude * (cutoff + half - r) / mollify;
}

double SourceSpec::support_radius() const {
  return profile == Profile::Indicator ? cutoff + 0.5 * mollify : cutoff;
}

std::vector<double> SourceSpec::kinks() const {
  if (profile == Profile::Indicator && mollify > 0.0) return {cutoff - 0.5 * mollify, cutoff + 0.5 * mollify};
  return {cutoff};
}

double SourceSpec::time_factor(double t) const {
  if (t <= 0.0) return 0.0;
  if (window && t >= 2.0 * *window) return 0.0;
  return 1.0;
}

double SourceSpec::spatial(double x, double y) const {
  if (angular.empty()) {
    const double dx = x - offset;
    return radial_profile(std::sqrt(dx * dx + y * y));
  }
  const double r = std::hypot(x - offset, y);
  const double p = radial_profile(r);
  if (p == 0.0) return 0.0;
  const double theta = std::atan2(y, x);
  double sum = 0.0;
  for (std::size_t n = 0; n < angular.size(); ++n) sum += angular[n] * std::cos(static_cast<double>(n) * theta);
  return p * sum;
}

void SourceSpec::validate() const {
  if (!(cutoff > 0.0)) throw ConfigError("source radius must be positive");
  if (mollify < 0.0 || mollify >= cutoff) throw ConfigError("mollifier width must lie in [0, radius)");
  if (offset < 0.0) throw ConfigError("source offset c must be non-negative");
  if (window && !(*window > 0.0)) throw ConfigError("time window L must be positive");
  if (support_radius() + offset >= 1.0) {
    std::ostringstream os;
    os << "source support " << support_radius() << " + offset " << offset << " leaves the unit disk";
    throw ConfigError(os.str());
  }
}

std::string SourceSpec::describe() const {
  std::ostringstream os;
  os << (profile == Profile::Gaussian ? "gaussian" : "indicator") << "(radius=" << cutoff;
  if (mollify > 0.0) os << ",ramp=" << mollify;
  if (offset > 0.0) os << ",c=" << offset;
  if (window) os << ",L=" << *window;
  if (!angular.empty()) {
    os << ",a=";
    for (std::size_t i = 0; i < angular.size(); ++i) os << (i ? ":" : "") << angular[i];
  }
  os << ")";
  return os.str();
}

}  // namespace pmlwave
