#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <utility>

namespace pmlwave::quad {

/// N-point Gauss-Legendre rule on [-1, 1].
template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        if constexpr (N == 1) p0 = 1.0;
        dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[N - 1 - i] = x;
      weights[i] = w;
      weights[N - 1 - i] = w;
    }
  }

  static const GaussLegendre& instance() {
    static const GaussLegendre rule;
    return rule;
  }
};

template <class F>
using result_t = std::decay_t<std::invoke_result_t<F&, double>>;

/// Fixed-order Gauss-Legendre integral of f over [a, b].
template <std::size_t N = 16, class F>
result_t<F> gauss(F&& f, double a, double b) {
  const auto& rule = GaussLegendre<N>::instance();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  result_t<F> sum{};
  for (std::size_t i = 0; i < N; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

template <std::size_t N, class F, class T>
void bisect(F& f, double a, double b, T whole, double tol, int depth, Result<T>& out) {
  const double m = 0.5 * (a + b);
  const T left = gauss<N>(f, a, m);
  const T right = gauss<N>(f, m, b);
  out.evaluations += 2 * static_cast<int>(N);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth <= 0 || !(b - a > 1e-14 * (std::abs(a) + std::abs(b)))) {
    out.value += left + right;
    out.error += err;
    return;
  }
  bisect<N>(f, a, m, left, 0.5 * tol, depth - 1, out);
  bisect<N>(f, m, b, right, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

/**
 * Composite Gauss-Legendre quadrature on panels no wider than panel_width,
 * each refined by bisection until the whole-vs-halves difference drops below
 * its share of abs_tol. The reported error is the sum of those differences.
 */
template <std::size_t N = 16, class F>
Result<result_t<F>> panels(F&& f, double a, double b, double panel_width, double abs_tol,
                           int max_depth = 24) {
  using T = result_t<F>;
  Result<T> out;
  if (!(b > a)) return out;
  const auto count = static_cast<long>(std::max(1.0, std::ceil((b - a) / panel_width)));
  const double h = (b - a) / static_cast<double>(count);
  const double share = abs_tol / static_cast<double>(count);
  for (long k = 0; k < count; ++k) {
    const double lo = a + h * static_cast<double>(k);
    const double hi = (k + 1 == count) ? b : lo + h;
    const T whole = gauss<N>(f, lo, hi);
    out.evaluations += static_cast<int>(N);
    detail::bisect<N>(f, lo, hi, whole, share, max_depth, out);
  }
  return out;
}

/// Adaptive Simpson rule; used where the integrand is cheap and only piecewise smooth.
template <class F>
Result<double> simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
  Result<double> out;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  out.evaluations = 3;
  auto recurse = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole,
                     double eps, int depth) -> void {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evaluations += 2;
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * eps) {
      out.value += left + right + diff / 15.0;
      out.error += std::abs(diff) / 15.0;
      return;
    }
    self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, depth - 1);
    self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth - 1);
  };
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  recurse(recurse, a, b, fa, fm, fb, whole, tol, max_depth);
  return out;
}

}  // namespace pmlwave::quad
