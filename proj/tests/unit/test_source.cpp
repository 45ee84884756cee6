#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pmlwave/error.hpp"
#include "pmlwave/source.hpp"

using namespace pmlwave;

TEST(Source, GaussianProfile) {
  const SourceSpec s = SourceSpec::gaussian();
  EXPECT_DOUBLE_EQ(s.radial_profile(0.0), 50.0 / std::numbers::pi);
  EXPECT_DOUBLE_EQ(s.radial_profile(0.3), 50.0 / std::numbers::pi * std::exp(-4.5));
  EXPECT_EQ(s.radial_profile(0.5), 0.0);
  EXPECT_EQ(s.time_factor(0.0), 0.0);
  EXPECT_EQ(s.time_factor(1e3), 1.0);
  EXPECT_TRUE(s.is_radial());
  EXPECT_NO_THROW(s.validate());
}

TEST(Source, MollifiedIndicatorRamp) {
  const SourceSpec s = SourceSpec::indicator(0.25, 0.01, 0.3);
  EXPECT_EQ(s.radial_profile(0.2), 1.0);
  EXPECT_DOUBLE_EQ(s.radial_profile(0.25), 0.5);
  EXPECT_EQ(s.radial_profile(0.2551), 0.0);
  EXPECT_DOUBLE_EQ(s.support_radius(), 0.255);
  EXPECT_DOUBLE_EQ(s.spatial(0.3, 0.0), 1.0);
  EXPECT_EQ(s.spatial(0.0, 0.0), 0.0);
  EXPECT_FALSE(s.is_radial());
}

TEST(Source, ModalIndicatorWindow) {
  const SourceSpec s = SourceSpec::modal_indicator({1.0, 0.0, 0.5}, 3.0);
  EXPECT_EQ(s.time_factor(5.9), 1.0);
  EXPECT_EQ(s.time_factor(6.0), 0.0);
  EXPECT_DOUBLE_EQ(s.spatial(0.0, 0.4), 1.0 - 0.5);  // theta = pi/2
  EXPECT_DOUBLE_EQ(s.spatial(0.4, 0.0), 1.5);
  EXPECT_EQ(s.spatial(0.6, 0.0), 0.0);
}

TEST(Source, SupportMustStayInsideUnitDisk) {
  EXPECT_NO_THROW(SourceSpec::indicator(0.25, 0.0, 0.7).validate());
  EXPECT_THROW(SourceSpec::indicator(0.25, 0.0, 0.75).validate(), ConfigError);
  EXPECT_THROW(SourceSpec::indicator(0.25, 0.3, 0.0).validate(), ConfigError);
}
