#include "pmlwave/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pmlwave/error.hpp"
#include "pmlwave/quadrature.hpp"

namespace pmlwave {

namespace {

using std::numbers::pi;
constexpr double kEuler = 0.57721566490153286061;
constexpr double kSeriesRadius = 12.0;
constexpr double kKSeriesRadius = 2.0;
constexpr double kRescale = 1e200;
constexpr double kMaxArgument = 1e6;
const Complex kI{0.0, 1.0};

void check_order(int n) {
  if (n < 0 || n > kMaxBesselOrder) {
    throw DomainError("Bessel order " + std::to_string(n) + " outside [0, " +
                      std::to_string(kMaxBesselOrder) + "]");
  }
}

void check_upper(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("Bessel argument is not finite");
  }
  if (z.imag() < 0.0) throw DomainError("Bessel argument must satisfy Im z >= 0");
  if (std::abs(z) > kMaxArgument) throw DomainError("Bessel argument modulus exceeds 1e6");
}

double sign_power(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// i^k for integer k of either sign.
Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

bool asymptotic_regime(int n, double modulus) {
  return modulus >= std::max(50.0, static_cast<double>(n) * n);
}

int miller_start(int n, double modulus) {
  const double m = std::max(static_cast<double>(n), modulus);
  int start = static_cast<int>(m + 15.0 * std::cbrt(m) + 20.0);
  return start + (start % 2);
}

// ---- real argument ---------------------------------------------------------

double j_series(int n, double x) {
  double pre = 1.0;
  for (int k = 1; k <= n; ++k) pre *= 0.5 * x / k;
  if (pre == 0.0) return 0.0;
  const double y = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= y / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 0.5 * x) break;
  }
  return pre * sum;
}

double j_miller(int n, double x) {
  const int start = miller_start(n, x);
  double next = 0.0;
  double cur = 1e-30;
  double norm = 0.0;
  double keep = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = 2.0 * k / x * cur - next;
    next = cur;
    cur = prev;
    if (k == n + 1) keep = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      next /= kRescale;
      keep /= kRescale;
      norm /= kRescale;
    }
  }
  // cur now holds the unnormalised J_0.
  norm += cur;
  if (n == 0) keep = cur;
  return keep / norm;
}

// Hankel expansion coefficients P, Q for real x.
void pq_asymptotic(int n, double x, double& p, double& q) {
  const double mu = 4.0 * n * n;
  double term = 1.0;
  p = 1.0;
  q = 0.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    // a_k / x^k contributes to P (even k) or Q (odd k) with sign (-1)^{floor(k/2)}.
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (mag < 1e-17) break;
  }
}

// cos and sin of x - n pi/2 - pi/4 without forming the shifted argument.
void hankel_phase(int n, double x, double& c, double& s) {
  const double cx = std::cos(x);
  const double sx = std::sin(x);
  double c0 = (cx + sx) * std::numbers::sqrt2 / 2.0;
  double s0 = (sx - cx) * std::numbers::sqrt2 / 2.0;
  switch (n % 4) {
    case 0: c = c0; s = s0; break;
    case 1: c = s0; s = -c0; break;
    case 2: c = -c0; s = -s0; break;
    default: c = -s0; s = c0; break;
  }
}

double j_asymptotic(int n, double x) {
  double p = 0.0;
  double q = 0.0;
  pq_asymptotic(n, x, p, q);
  double c = 0.0;
  double s = 0.0;
  hankel_phase(n, x, c, s);
  return std::sqrt(2.0 / (pi * x)) * (p * c - q * s);
}

double y_asymptotic(int n, double x) {
  double p = 0.0;
  double q = 0.0;
  pq_asymptotic(n, x, p, q);
  double c = 0.0;
  double s = 0.0;
  hankel_phase(n, x, c, s);
  return std::sqrt(2.0 / (pi * x)) * (p * s + q * c);
}

double j_real_nonneg(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= kSeriesRadius) return j_series(n, x);
  if (asymptotic_regime(n, x)) return j_asymptotic(n, x);
  return j_miller(n, x);
}

// ---- complex argument ------------------------------------------------------

// J_n(z) = (z/2)^n / n! * sum_k (-z^2/4)^k / (k! (n+1)_k).
ScaledComplex j_series_complex(int n, Complex z) {
  ScaledComplex pre(Complex(1.0, 0.0));
  const Complex half = 0.5 * z;
  for (int k = 1; k <= n; ++k) pre = pre * (half / static_cast<double>(k));
  const Complex y = -0.25 * z * z;
  Complex term = 1.0;
  Complex sum = 1.0;
  const double az = std::abs(z);
  for (int k = 1; k < 500; ++k) {
    term *= y / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 0.5 * az) break;
  }
  return pre * sum;
}

// Backward recurrence normalised with exp(-iz) = J_0 + 2 sum_k (-i)^k J_k.
ScaledComplex j_miller_complex(int n, Complex z) {
  const int start = miller_start(n, std::abs(z));
  Complex next = 0.0;
  Complex cur = 1e-30;
  Complex norm = 0.0;
  Complex keep = 0.0;
  for (int k = start; k >= 1; --k) {
    const Complex prev = (2.0 * k) / z * cur - next;
    next = cur;
    cur = prev;
    const int m = k - 1;
    if (m == n) keep = cur;
    if (m > 0) norm += 2.0 * i_power(-m) * cur;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      next /= kRescale;
      keep /= kRescale;
      norm /= kRescale;
    }
  }
  norm += cur;
  // exp(-iz) = exp(Im z) * exp(-i Re z)
  const Complex phase = std::exp(Complex(0.0, -z.real()));
  return ScaledComplex(keep / norm * phase, z.imag());
}

// Hankel expansion sums S_{+/-} = sum_k (+/-i)^k a_k / z^k.
void hankel_sums(int n, Complex z, Complex& s_plus, Complex& s_minus) {
  const double mu = 4.0 * n * n;
  Complex term = 1.0;
  s_plus = 1.0;
  s_minus = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * z);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    s_plus += i_power(k) * term;
    s_minus += i_power(-k) * term;
    if (mag < 1e-17) break;
  }
}

// J_n for Re z >= 0 in the large-|z| regime, as (H1 + H2)/2.
ScaledComplex j_asymptotic_complex(int n, Complex z) {
  Complex sp;
  Complex sm;
  hankel_sums(n, z, sp, sm);
  const Complex amp = std::sqrt(2.0 / (pi * z));
  const double x = z.real();
  const double y = z.imag();
  double c = 0.0;
  double s = 0.0;
  hankel_phase(n, x, c, s);
  const Complex e_plus(c, s);   // exp(i (x - phi))
  const Complex e_minus(c, -s);  // exp(-i (x - phi))
  // H1 carries exp(-y), H2 carries exp(+y); factor exp(y) out.
  const Complex m = 0.5 * amp * (sp * e_plus * std::exp(-2.0 * y) + sm * e_minus);
  return ScaledComplex(m, y);
}

ScaledComplex j_upper_right(int n, Complex z) {
  const double az = std::abs(z);
  if (az == 0.0) return ScaledComplex(Complex(n == 0 ? 1.0 : 0.0, 0.0));
  if (az <= kSeriesRadius) return j_series_complex(n, z);
  if (asymptotic_regime(n, az)) return j_asymptotic_complex(n, z);
  return j_miller_complex(n, z);
}

// exp(w) K_0(w) and exp(w) K_1(w) for Re w >= 0, w != 0.
void scaled_k01(Complex w, Complex& k0, Complex& k1) {
  if (std::abs(w) <= kKSeriesRadius) {
    const Complex y = 0.25 * w * w;
    const Complex lg = std::log(0.5 * w);
    Complex t = 1.0;
    Complex i0 = 1.0;
    Complex k0_sum = 0.0;
    Complex i1_sum = 1.0;
    Complex k1_sum = 2.0 * (-kEuler) + 1.0;  // psi(1) + psi(2)
    double harmonic = 0.0;
    for (int k = 1; k < 100; ++k) {
      t *= y / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      const double next_harmonic = harmonic + 1.0 / (k + 1);
      i0 += t;
      k0_sum += harmonic * t;
      i1_sum += t / static_cast<double>(k + 1);
      k1_sum += (2.0 * (-kEuler) + harmonic + next_harmonic) * t / static_cast<double>(k + 1);
      if (std::abs(t) < 1e-18) break;
    }
    const Complex i1 = 0.5 * w * i1_sum;
    const Complex raw0 = -(lg + kEuler) * i0 + k0_sum;
    const Complex raw1 = 1.0 / w + lg * i1 - 0.25 * w * k1_sum;
    const Complex ew = std::exp(w);
    k0 = raw0 * ew;
    k1 = raw1 * ew;
    return;
  }
  // Steed's continued fraction CF2 (Temme normalisation) at order 0.
  Complex b = 2.0 * (1.0 + w);
  Complex d = 1.0 / b;
  Complex h = d;
  Complex delh = d;
  Complex q1 = 0.0;
  Complex q2 = 1.0;
  const double a1 = 0.25;
  Complex q = a1;
  Complex c = a1;
  double a = -a1;
  Complex s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const Complex qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const Complex dels = q * delh;
    s += dels;
    if (std::abs(dels) < 1e-17 * std::abs(s)) break;
  }
  h *= a1;
  k0 = std::sqrt(pi / (2.0 * w)) / s;
  k1 = k0 * (w + 0.5 - h) / w;
}

// exp(w) K_n(w) in scaled form.
ScaledComplex scaled_kn(int n, Complex w) {
  Complex k0;
  Complex k1;
  scaled_k01(w, k0, k1);
  if (n == 0) return ScaledComplex(k0);
  double extra = 0.0;
  Complex prev = k0;
  Complex cur = k1;
  for (int k = 1; k < n; ++k) {
    const Complex nxt = prev + (2.0 * k) / w * cur;
    prev = cur;
    cur = nxt;
    if (std::abs(cur) > kRescale) {
      prev /= kRescale;
      cur /= kRescale;
      extra += std::log(kRescale);
    }
  }
  return ScaledComplex(cur, extra);
}

ScaledComplex prime_from(int n, Complex z, const ScaledComplex& lower, const ScaledComplex& self) {
  // C_n' = C_{n-1} - (n/z) C_n ; lower holds C_{n-1}, or -C_1 when n == 0.
  if (n == 0) return lower;
  return lower - self * (static_cast<double>(n) / z);
}

}  // namespace

double bessel_j(int n, double x) {
  check_order(n);
  if (!std::isfinite(x)) throw DomainError("Bessel argument is not finite");
  if (std::abs(x) > kMaxArgument) throw DomainError("Bessel argument modulus exceeds 1e6");
  const double v = j_real_nonneg(n, std::abs(x));
  return x < 0.0 ? sign_power(n) * v : v;
}

ScaledComplex bessel_j_scaled(int n, Complex z) {
  check_order(n);
  check_upper(z);
  if (z.imag() == 0.0) return ScaledComplex(Complex(bessel_j(n, z.real()), 0.0));
  if (z.real() < 0.0) {
    // J_n(z) = (-1)^n conj(J_n(-conj z)); -conj z lies in the right quadrant.
    const ScaledComplex mirror = j_upper_right(n, -std::conj(z));
    return ScaledComplex(sign_power(n) * std::conj(mirror.mantissa()), mirror.log_scale());
  }
  return j_upper_right(n, z);
}

Complex bessel_j(int n, Complex z) { return bessel_j_scaled(n, z).value(); }

ScaledComplex hankel1(int n, Complex z) {
  check_order(n);
  check_upper(z);
  if (z == Complex{}) throw DomainError("hankel1 is singular at z = 0");
  // H_n^(1)(z) = (2/pi) i^{-(n+1)} K_n(-i z)
  const Complex w = -kI * z;
  const ScaledComplex kn = scaled_kn(n, w);
  const Complex rot = (2.0 / pi) * i_power(-(n + 1)) * std::exp(Complex(0.0, z.real()));
  return ScaledComplex(kn.mantissa() * rot, kn.log_scale() - z.imag());
}

double bessel_y(int n, double x) {
  check_order(n);
  if (!std::isfinite(x)) throw DomainError("Bessel argument is not finite");
  if (x <= 0.0) throw DomainError("bessel_y requires x > 0");
  if (x > kMaxArgument) throw DomainError("Bessel argument modulus exceeds 1e6");
  if (asymptotic_regime(n, x)) return y_asymptotic(n, x);
  return hankel1(n, Complex(x, 0.0)).value().imag();
}

double bessel_j_prime(int n, double x) {
  if (n == 0) return -bessel_j(1, x);
  return bessel_j(n - 1, x) - n / x * bessel_j(n, x);
}

Complex bessel_j_prime(int n, Complex z) {
  check_order(n);
  if (n == 0) return -bessel_j(1, z);
  const ScaledComplex self = bessel_j_scaled(n, z);
  return prime_from(n, z, bessel_j_scaled(n - 1, z), self).value();
}

double bessel_y_prime(int n, double x) {
  if (n == 0) return -bessel_y(1, x);
  return bessel_y(n - 1, x) - n / x * bessel_y(n, x);
}

ScaledComplex hankel1_prime(int n, Complex z) {
  check_order(n);
  if (n == 0) return -hankel1(1, z);
  return prime_from(n, z, hankel1(n - 1, z), hankel1(n, z));
}

Complex hankel_ratio(int n, double omega, double alpha0, double R) {
  check_order(n);
  if (!(omega >= 0.0) || !(alpha0 > 0.0) || !(R > 0.0)) {
    throw DomainError("hankel_ratio requires omega >= 0, alpha0 > 0, R > 0");
  }
  const Complex z(omega * R, alpha0 * R);
  const ScaledComplex h1 = hankel1(n, z);
  const ScaledComplex j = bessel_j_scaled(n, z);
  const ScaledComplex two(Complex(2.0, 0.0));
  const ScaledComplex h2 = two * j - h1;
  const ScaledComplex t = h2 / h1;
  const ScaledComplex one(Complex(1.0, 0.0));
  const ScaledComplex denom = one + t;
  const double scale = std::max(0.0, t.log_abs());
  if (denom.is_zero() || denom.log_abs() < std::log(1e-12) + scale) {
    throw PrecisionLoss("hankel_ratio: 1 + H2/H1 cancels below 1e-12 relative");
  }
  return (two / denom).value();
}

double bessel_j_zero(int n, int k) {
  check_order(n);
  if (k < 1) throw DomainError("bessel_j_zero requires k >= 1");
  auto newton = [n](long double x) {
    for (int it = 0; it < 60; ++it) {
      const double xd = static_cast<double>(x);
      const double f = bessel_j(n, xd);
      const double fp = bessel_j_prime(n, xd);
      const long double dx = static_cast<long double>(f) / fp;
      x -= dx;
      if (std::abs(static_cast<double>(dx)) <= 1e-16 * xd) break;
    }
    return static_cast<double>(x);
  };
  if (k > n) {
    // McMahon's expansion.
    const long double beta = (k + 0.5L * n - 0.25L) * std::numbers::pi_v<long double>;
    const long double mu = 4.0L * n * n;
    const long double e = 8.0L * beta;
    const long double guess = beta - (mu - 1) / e - 4 * (mu - 1) * (7 * mu - 31) / (3 * e * e * e) -
                              32 * (mu - 1) * (83 * mu * mu - 982 * mu + 3779) / (15 * e * e * e * e * e);
    return newton(guess);
  }
  // Low zeros of moderate order: bracket by scanning upward from x = n.
  const double step = 0.05;
  double a = std::max(step, static_cast<double>(n));
  double fa = bessel_j(n, a);
  int found = 0;
  while (true) {
    const double b = a + step;
    const double fb = bessel_j(n, b);
    if ((fa < 0.0) != (fb < 0.0)) {
      if (++found == k) {
        double lo = a;
        double hi = b;
        double flo = fa;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = bessel_j(n, mid);
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        return newton(0.5L * (lo + hi));
      }
    }
    a = b;
    fa = fb;
  }
}

double bessel_moment(int n, double omega) {
  check_order(n);
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("bessel_moment requires omega > 0");
  const double panels = std::max(1.0, std::ceil(omega / 4.0));
  const double h = 0.5 / panels;
  double sum = 0.0;
  const auto f = [n, omega](double s) { return bessel_j(n, omega * s) * s; };
  for (int p = 0; p < static_cast<int>(panels); ++p) sum += quad::gauss<16>(f, p * h, (p + 1) * h);
  return sum;
}

Complex moment_gn(int n, Complex z) {
  check_order(n);
  check_upper(z);
  if (z == Complex{}) return n == 0 ? Complex(0.5, 0.0) : Complex{};
  const double panels = std::max(1.0, std::ceil(std::abs(z) / 2.0));
  const double h = 1.0 / panels;
  Complex sum = 0.0;
  const auto f = [n, z](double s) { return bessel_j(n, z * s) * s; };
  for (int p = 0; p < static_cast<int>(panels); ++p) sum += quad::gauss<16>(f, p * h, (p + 1) * h);
  return sum;
}

}  // namespace pmlwave
