// Acceptance checks: one PASS/FAIL line per criterion.
//   pmlwave_acceptance                 run all criteria
//   pmlwave_acceptance --criterion N   run criterion N only (exit status reflects it)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pmlwave/bessel.hpp"
#include "pmlwave/bounds.hpp"
#include "pmlwave/experiments.hpp"
#include "pmlwave/reference.hpp"
#include "pmlwave/solver.hpp"

namespace {

using namespace pmlwave;
using cplx = std::complex<double>;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "!") << what << "; ";
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Experiment 1: reference sup-norm in [0.67, 0.77], relative PML error <= 0.01, under 5 minutes.
Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const RunConfig cfg = RunConfig::defaults(ExperimentId::Experiment1);
  const SolverConfig sc = [&] {
    SolverConfig s;
    s.profile.alpha0 = 2.0;
    s.grid.R = 2.0;
    s.grid.M = cfg.grid_intervals(2.0);
    s.dt = 0.005;
    s.source = SourceSpec::gaussian();
    return s;
  }();
  const ReferenceSeries ref = build_series(sc.source, reference_radius(sc.source, 5.0));
  const Comparison cmp = compare_with_reference(sc, ref, 5.0, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(cmp.sup.reference >= 0.67 && cmp.sup.reference <= 0.77, "sup|u(5)| = " + num(cmp.sup.reference) + " in [0.67, 0.77]");
  o.require(cmp.sup.relative() <= 0.01, "relative sup error " + num(cmp.sup.relative()) + " <= 0.01");
  o.require(secs < 300.0, "runtime " + num(secs) + " s < 300 s");
  return o;
}

// Experiment 2: slope of log(sup error) vs R within 30% of -2 alpha0 = -4, floor detected.
Outcome criterion2() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg = RunConfig::defaults(ExperimentId::Experiment2);
  const ExperimentReport rep = experiment2(cfg, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const CsvTable& table = rep.tables.at("experiment2_decay");
  std::vector<double> R, err;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    R.push_back(std::stod(table.row(i)[0]));
    err.push_back(std::stod(table.row(i)[1]));
  }
  const DecayFit fit = decay_fit(R, err, 2.0);
  o.require(fit.ok, "fit: " + (fit.ok ? "window of " + std::to_string(fit.window_end - fit.window_begin) + " samples" : fit.message));
  if (fit.ok) o.require(fit.slope >= -5.2 && fit.slope <= -2.8, "slope " + num(fit.slope) + " in [-5.2, -2.8]");
  const bool floor = std::any_of(fit.floor.begin(), fit.floor.end(), [](bool b) { return b; });
  o.require(floor && fit.floor.back(), "floor flagged at the largest R");
  o.require(secs < 1800.0, "runtime " + num(secs) + " s < 1800 s");
  for (std::size_t i = 0; i < R.size(); ++i) o.detail << "e(" << num(R[i]) << ")=" << num(err[i]) << " ";
  return o;
}

// Experiment 3: max/min sup error over offsets c = 0..0.7 is at most 2.
Outcome criterion3() {
  Outcome o;
  const RunConfig cfg = RunConfig::defaults(ExperimentId::Experiment3);
  const ExperimentReport rep = experiment3(cfg, 1);
  const CsvTable& table = rep.tables.at("experiment3_offsets");
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const double e = std::stod(table.row(i)[1]);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  o.require(table.rows() == 8, std::to_string(table.rows()) + " offsets");
  o.require(hi / lo <= 2.0, "max/min " + num(hi / lo) + " <= 2 (min " + num(lo) + ", max " + num(hi) + ")");
  return o;
}

double i1_oracle(double R, double L, double omega_max) {
  const auto f = [&](double w) {
    const double sl = std::sin(L * w);
    return oracle::cyl_j(1, 0.5 * w) / w *
           (oracle::cyl_y(0, w * R) * std::sin(2 * L * w) / w + 2 * oracle::cyl_j(0, w * R) * sl * sl / w);
  };
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) sum += oracle::gk(f, std::ldexp(1.0, -k - 1), std::ldexp(1.0, -k));
  return sum + oracle::gk_pieces(f, 1.0, omega_max, static_cast<int>(omega_max));
}

double i2_oracle(double R, double L, double omega_max) {
  const auto f = [&](double w) {
    const double sl = std::sin(L * w);
    return oracle::cyl_j(1, 0.5 * w) *
           (oracle::cyl_j(0, w * R) * std::sin(2 * L * w) / w - 2 * oracle::cyl_y(0, w * R) * sl * sl / w);
  };
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) sum += oracle::gk(f, std::ldexp(1.0, -k - 1), std::ldexp(1.0, -k));
  return sum + oracle::gk_pieces(f, 1.0, omega_max, static_cast<int>(omega_max));
}

// I1/I2 vanish for R > 1/2 (L = 3) and are resolvably nonzero at R = 0.1.
Outcome criterion4() {
  Outcome o;
  for (double R : {0.6, 1.0, 2.0, 3.0}) {
    const IntegralResult a = eval_I1(R, 3.0);
    const IntegralResult b = eval_I2(R, 3.0);
    o.require(std::abs(a.value) <= 1e-3 && std::abs(b.value) <= 1e-3,
              "R=" + num(R) + ": |I1|=" + num(std::abs(a.value)) + ", |I2|=" + num(std::abs(b.value)));
  }
  const IntegralResult a = eval_I1(0.1, 3.0);
  const IntegralResult b = eval_I2(0.1, 3.0);
  const bool resolved = std::abs(a.value) > 10 * a.error || std::abs(b.value) > 10 * b.error;
  o.require(resolved, "R=0.1: I1=" + num(a.value) + " (err " + num(a.error) + "), I2=" + num(b.value) + " (err " +
                          num(b.error) + ")");
  // Same truncation, independent quadrature and Bessel routines.
  const double oa = i1_oracle(0.1, 3.0, 2000.0);
  const double ob = i2_oracle(0.1, 3.0, 2000.0);
  o.require(std::abs(oa - a.value) <= 1e-6 && std::abs(ob - b.value) <= 1e-6,
            "R=0.1 oracle diff " + num(std::abs(oa - a.value)) + ", " + num(std::abs(ob - b.value)));
  return o;
}

// Scaled Hankel ratio in [1, 3] over the scan and in [1.8, 2.2] at alpha0 R = 20.
Outcome criterion5() {
  Outcome o;
  std::vector<double> Rs, omegas;
  for (int i = 0; i <= 30; ++i) Rs.push_back(2.0 + 0.1 * i);
  for (int i = 0; i <= 200; ++i) omegas.push_back(0.25 * i);
  for (int n = 0; n <= 3; ++n) {
    const RatioScan scan = hankel_ratio_scan(n, 2.0, Rs, omegas);
    const RatioScan far = hankel_ratio_scan(n, 2.0, {10.0}, omegas);
    o.require(scan.min >= 1.0 && scan.max <= 3.0,
              "n=" + std::to_string(n) + " range [" + num(scan.min) + ", " + num(scan.max) + "]");
    o.require(far.min >= 1.8 && far.max <= 2.2,
              "n=" + std::to_string(n) + " at a0R=20 [" + num(far.min) + ", " + num(far.max) + "]");
  }
  // The scanned values themselves, against integral-representation oracles.
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    for (double R : {2.0, 3.5, 5.0}) {
      for (double w : {0.0, 1.0, 7.5, 50.0}) {
        const cplx z(w * R, 2.0 * R);
        const cplx expect = oracle::hankel1(n, z) / oracle::bessel_j(n, z);
        worst = std::max(worst, std::abs(hankel_ratio(n, w, 2.0, R) - expect) / std::abs(expect));
      }
    }
  }
  o.require(worst <= 1e-8, "ratio vs oracle max rel " + num(worst));
  return o;
}

// Moment envelope finite for n <= 8; n = 0 closed form to 1e-10.
Outcome criterion6() {
  Outcome o;
  for (int n = 0; n <= 8; ++n) {
    const MomentEnvelope env = moment_decay_check(n);
    o.require(env.bounded && std::isfinite(env.sup), "n=" + std::to_string(n) + " sup " + num(env.sup));
  }
  double worst = 0.0;
  for (int k = 0; k <= 700; ++k) {
    const double w = std::pow(10.0, -3.0 + k / 100.0);
    worst = std::max(worst, std::abs(bessel_moment(0, w) - oracle::cyl_j(1, 0.5 * w) / (2.0 * w)));
  }
  o.require(worst <= 1e-10, "n=0 closed form max abs diff " + num(worst));
  return o;
}

double rel(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

// Reflection symmetries of J, H1, z J', z H1' and the Wronskian at 100 random points each.
Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(20240229);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(0.01, 20.0), xs(0.1, 100.0);
  std::uniform_int_distribution<int> order(0, 8);
  double sj = 0, sh = 0, sf = 0, sg = 0, wr = 0, vj = 0, vh = 0;
  for (int s = 0; s < 100; ++s) {
    const int n = order(rng);
    const cplx z(re(rng), im(rng));
    const cplx zr = -std::conj(z);
    const double sign = n % 2 ? -1.0 : 1.0;
    const cplx j = bessel_j(n, z);
    const cplx h = hankel1(n, z).value();
    sj = std::max(sj, rel(bessel_j(n, zr), sign * std::conj(j)));
    sh = std::max(sh, rel(hankel1(n, zr).value(), -sign * std::conj(h)));
    // Derivatives from the recurrence C_n' = C_{n-1} - (n/z) C_n, with C_{-1} = -C_1.
    const auto fj = [&](cplx x) {
      const cplx prev = n == 0 ? -bessel_j(1, x) : bessel_j(n - 1, x);
      return x * prev - double(n) * bessel_j(n, x);
    };
    const auto gh = [&](cplx x) {
      const cplx prev = n == 0 ? -hankel1(1, x).value() : hankel1(n - 1, x).value();
      return x * prev - double(n) * hankel1(n, x).value();
    };
    sf = std::max(sf, rel(fj(zr), sign * std::conj(fj(z))));
    sg = std::max(sg, rel(gh(zr), -sign * std::conj(gh(z))));
    sf = std::max(sf, rel(z * bessel_j_prime(n, z), fj(z)));
    sg = std::max(sg, rel((hankel1_prime(n, z) * z).value(), gh(z)));
    // Values themselves against integral representations.
    vj = std::max(vj, rel(j, oracle::bessel_j(n, z)));
    if (z.imag() >= 1.0) vh = std::max(vh, rel(h, oracle::hankel1(n, z)));
    const double x = xs(rng);
    const double w = bessel_j(n, x) * bessel_y_prime(n, x) - bessel_j_prime(n, x) * bessel_y(n, x);
    wr = std::max(wr, std::abs(w * std::numbers::pi * x / 2.0 - 1.0));
  }
  o.require(sj <= 1e-9, "J reflection " + num(sj));
  o.require(sh <= 1e-9, "H1 reflection " + num(sh));
  o.require(sf <= 1e-9, "zJ' reflection " + num(sf));
  o.require(sg <= 1e-9, "zH1' reflection " + num(sg));
  o.require(wr <= 1e-9, "Wronskian " + num(wr));
  o.require(vj <= 1e-8, "J vs integral oracle " + num(vj));
  o.require(vh <= 1e-8, "H1 vs integral oracle " + num(vh));
  return o;
}

// eval_W against u_pml - u, and envelope stability across R.
Outcome criterion8() {
  Outcome o;
  const WCheckSpec spec;
  const WCrossCheck check = w_cross_check(spec, 1);
  std::size_t agree = 0;
  double worst = 0.0;
  for (const auto& p : check.points) {
    agree += p.agrees() ? 1 : 0;
    worst = std::max(worst, std::abs(p.w - p.difference) / p.budget());
  }
  o.require(check.points.size() == 20 && agree == check.points.size(),
            std::to_string(agree) + "/" + std::to_string(check.points.size()) + " points within budget (worst |W-d|/budget " +
                num(worst) + ")");
  const auto [lo, hi] = std::minmax_element(check.envelope_constants.begin(), check.envelope_constants.end());
  o.require(*hi / *lo <= 2.0, "envelope constant spread " + num(*hi / *lo) + " <= 2 (C in [" + num(*lo) + ", " +
                                  num(*hi) + "])");
  return o;
}

// First-order time convergence: e(dt) / e(dt/2) in [1.6, 2.4] against a dt/8 run.
Outcome criterion9() {
  Outcome o;
  SolverConfig sc;
  sc.profile.alpha0 = 2.0;
  sc.grid.R = 2.0;
  sc.grid.M = 200;
  sc.source = SourceSpec::gaussian();
  const double T = 5.0;
  const auto field = [&](double dt) {
    sc.dt = dt;
    const Trajectory tr = run(sc, {T}, 1);
    return tr.snapshots.front().states.front().u;
  };
  const auto fine = field(0.005 / 8);
  const auto coarse = field(0.005);
  const auto half = field(0.0025);
  double e1 = 0.0, e2 = 0.0;
  for (int j = 0; j <= sc.grid.M; ++j) {
    if (sc.grid.r(j) > 1.0 + 1e-12) break;
    e1 = std::max(e1, std::abs(coarse[j] - fine[j]));
    e2 = std::max(e2, std::abs(half[j] - fine[j]));
  }
  const double ratio = e1 / e2;
  o.require(ratio >= 1.6 && ratio <= 2.4,
            "e(dt)=" + num(e1) + ", e(dt/2)=" + num(e2) + ", ratio " + num(ratio) + " in [1.6, 2.4]");
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list{
      {"experiment 1 sup-norm and relative error", criterion1},
      {"experiment 2 decay slope and floor", criterion2},
      {"experiment 3 offset independence", criterion3},
      {"I1/I2 vanishing integrals", criterion4},
      {"Hankel ratio decay band", criterion5},
      {"Bessel moment decay", criterion6},
      {"special-function symmetry suite", criterion7},
      {"W cross-check and envelope", criterion8},
      {"time self-convergence", criterion9},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  bool all_pass = true;
  const auto& list = criteria();
  for (std::size_t k = 0; k < list.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only != 0 && only != id) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = list[k].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s[%.1f s]\n", out.pass ? "PASS" : "FAIL", id, list[k].first.c_str(),
                out.detail.str().c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
