#include "pmlwave/profile.hpp"

namespace pmlwave {

double PmlProfile::alpha(double r) const {
  if (r <= r_inner) return 0.0;
  if (r >= r_outer) return alpha0;
  const double s = (r - r_inner) / (r_outer - r_inner);
  return alpha0 * s * s * (3.0 - 2.0 * s);
}

double PmlProfile::alpha_prime(double r) const {
  if (r <= r_inner || r >= r_outer) return 0.0;
  const double width = r_outer - r_inner;
  const double s = (r - r_inner) / width;
  return alpha0 * 6.0 * s * (1.0 - s) / width;
}

}  // namespace pmlwave
