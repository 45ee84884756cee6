#pragma once

namespace pmlwave {

/// Absorption alpha(r): zero on r <= 1, cubic smoothstep to alpha0 on [1, 2], alpha0 beyond.
struct PmlProfile {
  double alpha0 = 0.0;
  double r_inner = 1.0;
  double r_outer = 2.0;

  double alpha(double r) const;
  double alpha_prime(double r) const;
  /// d/dr (r alpha(r)).
  double beta(double r) const { return alpha(r) + r * alpha_prime(r); }
};

/// Uniform radial nodes r_j = j R / M, j = 0..M.
struct RadialGrid {
  double R = 2.0;
  int M = 200;

  double dr() const { return R / M; }
  double r(int j) const { return j * dr(); }
};

}  // namespace pmlwave
