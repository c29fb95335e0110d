#include "extgev/tfr.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace extgev {
namespace {

constexpr double pi = std::numbers::pi;

const AnalyticFunction& unit() {
  static const AnalyticFunction g = AnalyticFunction::unit_gaussian();
  return g;
}

SampledSignal unit_samples() { return sample(unit(), default_axis()); }

PhaseSpaceGrid small_grid(double step = 0.125, Index count = 33) {
  return {Axis{0.0, step, count}, Axis{0.0, step, count}};
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Axis, PointsAndValidation) {
  const Axis a{0.0, 0.5, 4};
  EXPECT_EQ(a.point(0), -1.0);
  EXPECT_EQ(a.point(2), 0.0);
  EXPECT_THROW((Axis{0.0, 0.0, 4}.validate(false)), std::invalid_argument);
  EXPECT_THROW((Axis{0.0, 1.0, 3}.validate(true)), std::invalid_argument);
  EXPECT_NO_THROW((Axis{0.0, 1.0, 3}.validate(false)));
}

TEST(Dft, FixedPointAndRoundTrip) {
  const auto f = unit_samples();
  const auto fh = fourier(f);
  EXPECT_LE((fh.values - f.values).cwiseAbs().maxCoeff(), 1e-10);
  const auto back = inverse_fourier(fh);
  EXPECT_LE((back.values - f.values).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(back.axis, f.axis);
}

TEST(Dft, TranslationBecomesModulation) {
  const double x0 = 0.75;
  const auto moved = AnalyticFunction::modulated_translated(unit(), x0, 0.0);
  const auto fh = fourier(sample(moved, default_axis()));
  for (Index j = 0; j < fh.axis.count; ++j) {
    const double xi = fh.axis.point(j);
    EXPECT_LE(std::abs(fh.values(j) - std::exp(Complex(0.0, -2.0 * pi * x0 * xi)) * unit()(xi)), 1e-10);
  }
}

TEST(GrossmannRoyer, UnitGaussianValues) {
  const auto r = grossmann_royer(unit(), unit(), small_grid());
  EXPECT_NEAR(std::abs(r.values(16, 16) - 1.0), 0.0, 1e-12);
  for (Index i = 0; i < 33; ++i)
    for (Index j = 0; j < 33; ++j) {
      const double x = r.grid.x.point(i), w = r.grid.omega.point(j);
      EXPECT_LE(std::abs(r.values(i, j) - std::exp(-2.0 * pi * (x * x + w * w))), 1e-12);
    }
  EXPECT_TRUE(property1_holds(r, 1.0, 1.0));
}

TEST(GrossmannRoyer, ClosedFormMatches) {
  const auto f = AnalyticFunction::gaussian(2.0, 1.5);
  const auto g = AnalyticFunction::gaussian(0.8, 0.6);
  const auto cf = grossmann_royer_closed_form(f, g);
  const auto r = grossmann_royer(f, g, small_grid());
  for (Index i = 0; i < 33; i += 4)
    for (Index j = 0; j < 33; j += 4)
      EXPECT_LE(std::abs(r.values(i, j) - cf(r.grid.x.point(i), r.grid.omega.point(j))), 1e-12);
  EXPECT_THROW(grossmann_royer_closed_form(AnalyticFunction::hermite(1), g), std::invalid_argument);
}

TEST(BivariateGaussian, DerivativesAgainstFiniteDifferences) {
  const auto cf = grossmann_royer_closed_form(AnalyticFunction::gaussian(2.0), AnalyticFunction::gaussian(0.8));
  const auto dx = cf.dx();
  const auto dw = cf.dw();
  const double h = 1e-6;
  for (double x : {-0.4, 0.1, 0.7})
    for (double w : {-0.3, 0.0, 0.5}) {
      EXPECT_LE(std::abs((cf(x + h, w) - cf(x - h, w)) / (2 * h) - dx(x, w)), 1e-7);
      EXPECT_LE(std::abs((cf(x, w + h) - cf(x, w - h)) / (2 * h) - dw(x, w)), 1e-7);
    }
}

TEST(Stft, UnitAtOrigin) {
  const auto r = stft(unit(), unit(), small_grid());
  EXPECT_NEAR(std::abs(r.values(16, 16) - 1.0), 0.0, 1e-12);
}

TEST(Stft, NormIsProductOfNorms) {
  const auto s = unit_samples();
  const auto r = stft(Evaluator(s), Evaluator(s), default_grid(TfrKind::stft, s.axis), Method::fast);
  const double cell = r.grid.x.step * r.grid.omega.step;
  EXPECT_NEAR(std::sqrt(r.values.cwiseAbs2().sum() * cell), 1.0, 1e-10);
}

TEST(Wigner, TwoAtOrigin) {
  const auto r = wigner(unit(), unit(), small_grid());
  EXPECT_NEAR(std::abs(r.values(16, 16) - 2.0), 0.0, 1e-12);
  const auto s = unit_samples();
  const auto fast = wigner(Evaluator(s), Evaluator(s), default_grid(TfrKind::wigner, s.axis), Method::fast);
  EXPECT_NEAR(std::abs(fast.values(128, 128) - 2.0), 0.0, 1e-12);
}

TEST(Relations, Pointwise) {
  const auto f = AnalyticFunction::hermite(2);
  const auto g = AnalyticFunction::modulated_translated(unit(), 0.2, -0.1);
  const auto rel = relation_checks(f, g, small_grid());
  EXPECT_LE(rel.wigner, 1e-8);
  EXPECT_LE(rel.stft, 1e-8);
  EXPECT_LE(rel.ambiguity, 1e-8);
}

TEST(Symmetry, AllThree) {
  const auto f = AnalyticFunction::hermite(1);
  const auto g = AnalyticFunction::gaussian(2.0);
  const auto s = symmetry_checks(f, g, small_grid());
  EXPECT_LE(s.conjugate_swap, 1e-10);
  EXPECT_LE(s.fourier_rotation, 1e-8);
  EXPECT_LE(s.operator_pipeline, 1e-10);
}

TEST(Modes, FastMatchesReference) {
  const auto f = sample(AnalyticFunction::hermite(3), default_axis());
  const auto g = sample(AnalyticFunction::gaussian(2.0), default_axis());
  for (auto kind : {TfrKind::grossmann_royer, TfrKind::stft, TfrKind::wigner, TfrKind::ambiguity}) {
    auto grid = default_grid(kind, f.axis);
    grid.x = Axis{0.0, f.axis.step, 16};
    const auto fast = compute(kind, f, g, grid, Method::fast);
    const auto ref = compute(kind, f, g, grid, Method::reference);
    EXPECT_LE(max_abs(fast.values - ref.values), 1e-10) << to_string(kind);
  }
}

TEST(Modes, OffLatticeIsRejected) {
  const auto s = unit_samples();
  auto grid = default_grid(TfrKind::grossmann_royer, s.axis);
  grid.x.step = 0.03;
  EXPECT_THROW(grossmann_royer(s, s, grid, Method::fast), LatticeError);
  EXPECT_THROW(Evaluator(s).at(0.01), LatticeError);
  EXPECT_EQ(Evaluator(s).at(100.0), Complex(0.0));
}

TEST(Moyal, UnitQuadruple) {
  const auto m = moyal_check(unit(), unit(), unit(), unit());
  EXPECT_NEAR(std::abs(m.rhs - 0.25), 0.0, 1e-15);
  EXPECT_LE(m.relative_error, 1e-8);
}

TEST(Moyal, OrthogonalWindows) {
  const auto m = moyal_check(unit(), AnalyticFunction::hermite(1), unit(), unit());
  EXPECT_LE(std::abs(m.rhs), 1e-15);
  EXPECT_LE(std::abs(m.lhs), 1e-8);
}

TEST(Moyal, HermiteCombinations) {
  Eigen::VectorXcd c1(3), c2(4);
  c1 << Complex(1.0, 0.5), Complex(-0.3, 0.0), Complex(0.2, 0.7);
  c2 << Complex(0.4, 0.0), Complex(0.1, -0.2), Complex(0.0, 0.0), Complex(0.9, 0.3);
  const auto f1 = AnalyticFunction::hermite_combination(c1);
  const auto f2 = AnalyticFunction::hermite_combination(c2);
  const auto m = moyal_check(f1, unit(), f2, AnalyticFunction::gaussian(2.0));
  EXPECT_LE(m.relative_error, 1e-8);
}

TEST(Moyal, RefusesTruncatedSignals) {
  const auto wide = AnalyticFunction::gaussian(0.05);
  EXPECT_THROW(moyal_check(wide, unit(), unit(), unit()), std::domain_error);
}

TEST(Inversion, Reconstructs) {
  const auto g2 = AnalyticFunction::gaussian(2.0);
  for (const auto& f : {unit(), AnalyticFunction::hermite(2)}) {
    const auto s = sample(f, default_axis());
    const auto r = grossmann_royer(Evaluator(s), Evaluator(unit_samples()),
                                   default_grid(TfrKind::grossmann_royer, s.axis), Method::fast);
    const auto back = invert(r, Evaluator(unit_samples()), Evaluator(sample(g2, default_axis())));
    EXPECT_LE((back.values - s.values).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Inversion, RefusesOrthogonalWindows) {
  const auto s = unit_samples();
  const auto r = grossmann_royer(s, s, default_grid(TfrKind::grossmann_royer, s.axis), Method::fast);
  EXPECT_THROW(invert(r, Evaluator(s), Evaluator(sample(AnalyticFunction::hermite(1), default_axis()))),
               std::domain_error);
}

TEST(Membership2d, UnitPairFinite) {
  const auto m = tfr_membership(unit(), unit(), 2.0, 6);
  EXPECT_TRUE(std::isfinite(m.fit.tau));
  EXPECT_TRUE(std::isfinite(m.input_fit.tau));
  EXPECT_FALSE(m.flagged);
  const auto z = tfr_membership(AnalyticFunction::zero(), unit(), 2.0, 6);
  EXPECT_EQ(z.fit.tau, 0.0);
  EXPECT_EQ(z.table.maxCoeff(), 0.0);
}

TEST(Parsing, KindsAndMethods) {
  EXPECT_EQ(parse_kind("gr"), TfrKind::grossmann_royer);
  EXPECT_EQ(parse_kind("wigner"), TfrKind::wigner);
  EXPECT_EQ(parse_method("fast"), Method::fast);
  EXPECT_THROW(parse_kind("born-jordan"), std::invalid_argument);
  for (auto k : {TfrKind::grossmann_royer, TfrKind::stft, TfrKind::wigner, TfrKind::ambiguity})
    EXPECT_EQ(parse_kind(to_string(k)), k);
}

}  // namespace
}  // namespace extgev
