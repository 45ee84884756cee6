#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pmlwave {

enum class Profile { Gaussian, Indicator };

/**
 * Space-time source f(t, x, y) = time_factor(t) * spatial(x, y).
 *
 * The spatial part is a radial profile p(r') about (offset, 0), optionally
 * multiplied by sum_n a_n cos(n theta) (angles measured about the origin).
 * Indicator profiles may be smoothed by a linear ramp of width `mollify`
 * centred on the nominal radius.
 */
struct SourceSpec {
  Profile profile = Profile::Gaussian;
  double amplitude = 0.0;
  double rate = 0.0;             // gaussian exponent
  double cutoff = 0.5;           // gaussian truncation radius / indicator radius
  double mollify = 0.0;          // ramp width for indicator profiles
  std::optional<double> window;  // L: source active for 0 < t < 2L
  double offset = 0.0;           // c
  std::vector<double> angular;   // a_n; empty means purely radial

  /// (50/pi) exp(-50 r^2) on r < 1/2, switched on at t = 0.
  static SourceSpec gaussian();
  /// Unit indicator of r' < radius.
  static SourceSpec indicator(double radius = 0.25, double mollify = 0.0, double offset = 0.0);
  /// sum_n a_n cos(n theta) on r < 1/2, active for 0 < t < 2L.
  static SourceSpec modal_indicator(std::vector<double> a, double L, double mollify = 0.0);

  /// p(r) about the source centre.
  double radial_profile(double r) const;
  /// Outer edge of the radial support.
  double support_radius() const;
  /// Points where p or its derivative is discontinuous, inside (0, support].
  std::vector<double> kinks() const;
  double time_factor(double t) const;
  /// Spatial part at Cartesian (x, y).
  double spatial(double x, double y) const;
  double value(double t, double x, double y) const { return time_factor(t) * spatial(x, y); }
  bool is_radial() const { return angular.empty() && offset == 0.0; }

  /// Throws ConfigError unless the support stays inside the unit disk.
  void validate() const;
  std::string describe() const;
};

}  // namespace pmlwave
