#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pmlwave/bessel.hpp"
#include "pmlwave/bounds.hpp"
#include "pmlwave/error.hpp"

using namespace pmlwave;

TEST(VanishingIntegrals, StableUnderLongerRange) {
  for (double R : {0.6, 2.0}) {
    const IntegralResult a = eval_I1(R, 3.0);
    const IntegralResult b = eval_I1(R, 3.0, {4000.0, 5e-11, 1e-4});
    EXPECT_NEAR(a.value, b.value, a.error + b.error + 1e-9) << "R=" << R;
    const IntegralResult c = eval_I2(R, 3.0);
    const IntegralResult d = eval_I2(R, 3.0, {4000.0, 5e-11, 1e-4});
    EXPECT_NEAR(c.value, d.value, c.error + d.error + 1e-9) << "R=" << R;
  }
}

TEST(VanishingIntegrals, ErrorSplitIsConsistent) {
  const IntegralResult r = eval_I2(1.0, 3.0);
  EXPECT_GE(r.error, r.tail);
  EXPECT_GE(r.tail, 0.0);
}

TEST(VanishingIntegrals, TinyBudgetRaises) {
  EXPECT_THROW(eval_I1(1.0, 3.0, {2000.0, 1e-10, 1e-14}), QuadratureError);
  EXPECT_THROW(eval_I1(0.0, 3.0), DomainError);
  EXPECT_THROW(eval_I2(1.0, -1.0), DomainError);
}

TEST(Moments, ZeroOrderClosedForm) {
  for (double w : {0.01, 0.7, 5.0, 80.0}) {
    EXPECT_NEAR(2.0 * bessel_moment(0, w), oracle::cyl_j(1, 0.5 * w) / w, 1e-14) << w;
  }
}

TEST(Moments, SmallFrequencyLimits) {
  const double w = 1e-4;
  EXPECT_NEAR(bessel_moment(1, w) / w, 1.0 / 48.0, 1e-9);
  EXPECT_NEAR(bessel_moment(2, w) / (w * w), 1.0 / 512.0, 1e-9);
}

TEST(Moments, DecayCheckRejectsOutOfRangeOrder) {
  EXPECT_THROW(moment_decay_check(9), DomainError);
  const MomentEnvelope e = moment_decay_check(3, 10);
  EXPECT_EQ(e.omega.size(), e.ratio.size());
  EXPECT_NEAR(e.omega.front(), 1e-3, 1e-15);
  EXPECT_NEAR(e.omega.back(), 1e4, 1e-8);
  EXPECT_GT(e.argmax, e.omega.front());
  EXPECT_LT(e.argmax, e.omega.back());
}

TEST(Moments, SharpProfileMatchesDiskMoment) {
  const SourceSpec p = SourceSpec::modal_indicator({1.0}, 3.0);
  for (int n : {0, 1, 4}) {
    for (double w : {0.3, 7.0, 61.0}) {
      EXPECT_NEAR(profile_moment(n, w, p), bessel_moment(n, w), 1e-13) << n << " " << w;
    }
  }
  EXPECT_THROW(profile_moment(0, 0.0, p), DomainError);
}

TEST(Moments, MollifiedProfileAgainstQuadrature) {
  const SourceSpec p = SourceSpec::modal_indicator({1.0}, 3.0, 0.02);
  const double w = 13.0;
  const double want = oracle::gk_pieces(
      [&](double s) { return oracle::cyl_j(2, w * s) * s * p.radial_profile(s); }, 0.0, 0.51, 51);
  EXPECT_NEAR(profile_moment(2, w, p), want, 1e-12);
}

TEST(RatioScan, ScaledValuesNearTwoFarOut) {
  const RatioScan s = hankel_ratio_scan(0, 1.0, {10.0}, {0.0, 1.0, 10.0});
  ASSERT_EQ(s.samples.size(), 3u);
  for (const auto& x : s.samples) {
    EXPECT_TRUE(std::isfinite(x.scaled));
    EXPECT_NEAR(x.scaled, 2.0, 0.2);
  }
  EXPECT_LE(s.min, s.max);
  EXPECT_THROW(hankel_ratio_scan(0, 0.0, {2.0}, {1.0}), DomainError);
}

namespace {

WParams w_params(std::vector<double> a) {
  WParams p;
  p.a = std::move(a);
  p.L = 3.0;
  p.alpha0 = 1.0;
  p.R = 2.4;
  p.t_max = 4.0;
  p.profile = SourceSpec::modal_indicator({1.0}, 3.0, 0.01);
  return p;
}

}  // namespace

TEST(WEvaluator, LinearInCoefficients) {
  const WEvaluator one(w_params({1.0, 0.5, 0.25}));
  const WEvaluator two(w_params({2.0, 1.0, 0.5}));
  for (double t : {2.5, 3.7}) {
    const WResult a = one(t, 0.4, 0.3);
    const WResult b = two(t, 0.4, 0.3);
    EXPECT_NEAR(b.value, 2.0 * a.value, 1e-12 + 1e-10 * std::abs(a.value));
  }
}

TEST(WEvaluator, StableUnderLongerRange) {
  WParams p = w_params({1.0, 0.5});
  const WEvaluator base(p);
  p.omega_max = 2.0 * base.omega_max();
  const WEvaluator wide(p);
  const WResult a = base(3.0, 0.5, 1.0);
  const WResult b = wide(3.0, 0.5, 1.0);
  EXPECT_NEAR(a.value, b.value, a.error + b.error);
}

TEST(WEvaluator, RadiusRebuildMatchesFreshEvaluator) {
  const WEvaluator base(w_params({1.0, 0.5}));
  WParams p = w_params({1.0, 0.5});
  p.R = 2.8;
  const WEvaluator fresh(p);
  const WEvaluator moved = base.with_radius(2.8);
  EXPECT_NEAR(moved(3.2, 0.2, 0.7).value, fresh(3.2, 0.2, 0.7).value, 1e-12);
  EXPECT_LT(fresh.envelope(), base.envelope());
}

TEST(WEvaluator, Preconditions) {
  WParams p = w_params({1.0});
  p.R = 2.0;
  EXPECT_THROW(WEvaluator{p}, DomainError);
  EXPECT_THROW(WEvaluator{w_params({})}, DomainError);
  const WEvaluator w(w_params({1.0}));
  EXPECT_THROW(w(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(w(4.5, 0.5, 0.0), DomainError);
  EXPECT_THROW(w.with_radius(1.5), DomainError);
}

TEST(DecayFit, RecoversSyntheticSlope) {
  std::vector<double> R, e;
  for (int i = 0; i < 8; ++i) {
    R.push_back(2.0 + 0.2 * i);
    e.push_back(3.0 * std::exp(-4.0 * R.back()));
  }
  const DecayFit f = decay_fit(R, e, 2.0);
  EXPECT_TRUE(f.ok);
  EXPECT_NEAR(f.slope, -4.0, 1e-10);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-9);
  EXPECT_EQ(f.expected_slope, -4.0);
}

TEST(DecayFit, FlagsFloor) {
  std::vector<double> R, e;
  for (int i = 0; i < 8; ++i) {
    R.push_back(2.0 + 0.2 * i);
    e.push_back(std::max(std::exp(-4.0 * R.back()), 1e-5));
  }
  const DecayFit f = decay_fit(R, e, 2.0);
  EXPECT_TRUE(f.ok);
  EXPECT_NEAR(f.slope, -4.0, 1e-10);
  EXPECT_FALSE(f.floor[f.window_end - 1]);
  EXPECT_TRUE(f.floor.back());
}

TEST(DecayFit, ConstantErrorIsAllFloor) {
  const std::vector<double> R{2.0, 2.2, 2.4, 2.6, 2.8, 3.0};
  const std::vector<double> e(6, 1e-5);
  const DecayFit f = decay_fit(R, e, 2.0);
  EXPECT_FALSE(f.ok);
  EXPECT_FALSE(f.message.empty());
}

TEST(DecayFit, TooFewSamples) {
  const DecayFit f = decay_fit({2.0, 2.5, 3.0}, {1e-3, 1e-4, 1e-5}, 2.0);
  EXPECT_FALSE(f.ok);
  EXPECT_FALSE(f.message.empty());
  EXPECT_THROW(decay_fit({2.0, 1.0}, {1.0, 1.0}, 2.0), DomainError);
  EXPECT_THROW(decay_fit({2.0, 3.0}, {1.0, 0.0}, 2.0), DomainError);
}
