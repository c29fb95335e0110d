#include "extgev/lambertw.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace extgev {
namespace {

constexpr double e = std::numbers::e;

TEST(LambertW, FixedValues) {
  EXPECT_EQ(lambert_w(0.0).w, 0.0);
  EXPECT_NEAR(lambert_w(e).w, 1.0, 1e-12);
  EXPECT_NEAR(lambert_w(2.0 * e * e).w, 2.0, 1e-12);
  // omega constant
  EXPECT_NEAR(lambert_w(1.0).w, 0.5671432904097838, 1e-15);
}

TEST(LambertW, ResidualOnLogGrid) {
  std::vector<double> xs{0.0, 1e-300, 1e-20, 1e-8};
  for (int k = 0; k <= 400; ++k) xs.push_back(std::pow(10.0, -6.0 + 18.0 * k / 400.0));
  for (double x : xs) {
    const auto r = lambert_w(x);
    EXPECT_LE(std::abs(r.w * std::exp(r.w) - x), 1e-12 * std::max(x, 1.0)) << x;
    EXPECT_TRUE(residual_certified(r)) << x;
  }
}

TEST(LambertW, Monotone) {
  double prev = -1.0;
  for (int k = 0; k <= 200; ++k) {
    const double w = lambert_w(std::pow(10.0, -3.0 + 15.0 * k / 200.0)).w;
    EXPECT_GT(w, prev);
    prev = w;
  }
}

TEST(LambertW, LongDouble) {
  const auto r = lambert_w<long double>(10.0L);
  EXPECT_LE(std::abs(r.w * std::exp(r.w) - 10.0L), 1e-15L);
}

TEST(LambertW, InfinityAndDomain) {
  EXPECT_TRUE(std::isinf(lambert_w(std::numeric_limits<double>::infinity()).w));
  EXPECT_THROW(lambert_w(-0.1), std::domain_error);
  EXPECT_THROW(lambert_w(std::nan("")), std::domain_error);
}

TEST(LambertBounds, StrictAboveEEqualAtE) {
  std::vector<double> xs{e, 1e6};
  for (int k = 1; k <= 100; ++k) xs.push_back(e * std::pow(1e12 / e, k / 100.0));
  const auto r = check_lambert_bounds(xs);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.records[0].at_e);
  const auto& big = r.records[1];
  EXPECT_LT(big.lower, big.w);
  EXPECT_LT(big.w, big.upper);
}

TEST(LambertBounds, InverseIdentity) {
  for (double x : {2.0, 10.0, 1e3}) {
    const double l = std::log(x);
    EXPECT_NEAR(lambert_w(x * l).w, l, 1e-10 * l) << x;
  }
}

TEST(LambertBounds, RejectsBelowE) {
  const std::vector<double> xs{2.0};
  EXPECT_THROW(check_lambert_bounds(xs), std::domain_error);
}

}  // namespace
}  // namespace extgev
