#include <gtest/gtest.h>

#include <cmath>

#include "qdpot/geometry.hpp"

using namespace qdpot;

TEST(BuildGrid, UnitCirclePerimeter) {
  const auto g = build_grid(unit_disc(), 16);
  EXPECT_NEAR(g.length(), 2.0 * kPi, 1e-12);
}

TEST(BuildGrid, UnitCircleFirstNode) {
  const auto g = build_grid(unit_disc(), 64);
  EXPECT_NEAR(std::abs(g.z[0] - cplx(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.tangent[0] - kI), 0.0, 1e-15);
}

TEST(BuildGrid, OffsetCirclePerimeter) {
  const auto g = build_grid(disc({1.0, 0.0}, 2.0), 64);
  EXPECT_NEAR(g.length(), 4.0 * kPi, 1e-10);
}

TEST(BuildGrid, UnitTangents) {
  for (const auto& d : {cassini_like(), perturbed_annulus(), annulus(0.5)}) {
    const auto g = build_grid(d, 128);
    for (const auto& t : g.tangent) EXPECT_NEAR(std::abs(t), 1.0, 1e-12);
  }
}

TEST(BuildGrid, RefinementIsSpectral) {
  for (const auto& d : {cassini_like(), ellipse_like()}) {
    const double a = build_grid(d, 64).length();
    const double b = build_grid(d, 128).length();
    EXPECT_LT(std::abs(a - b), 1e-12);
  }
}

TEST(BuildGrid, RejectsBadNodeCounts) {
  EXPECT_THROW(build_grid(unit_disc(), 8), InputError);
  EXPECT_THROW(build_grid(unit_disc(), 33), InputError);
}

TEST(BuildGrid, RejectsNonImmersedCurve) {
  // z(t) = e^{it} + e^{-it}/... degenerates: e^{it} + e^{-it} = 2 cos t has z' = 0 at t = 0
  DomainSpec d{BoundaryCurve::fourier({{1, 1.0}, {-1, 1.0}}), {}, {}, std::nullopt};
  EXPECT_THROW(build_grid(d, 64), InputError);
  EXPECT_THROW(validate(d), InputError);
}

TEST(BuildGrid, HolesAreNegativelyOriented) {
  const auto g = build_grid(annulus(0.5), 64);
  // on the inner circle the tangent at angle 0 points downward
  EXPECT_NEAR(std::abs(g.z[64] - cplx(0.5, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.tangent[64] + kI), 0.0, 1e-15);
}

TEST(Locate, Disc) {
  const auto g = build_grid(unit_disc(), 64);
  EXPECT_EQ(locate(g, 0.0), Location::inside);
  EXPECT_EQ(locate(g, 2.0), Location::outside);
  EXPECT_EQ(locate(g, 0.999), Location::near_boundary);
}

TEST(Locate, Annulus) {
  const auto g = build_grid(annulus(0.5), 256);
  EXPECT_EQ(locate(g, 0.7), Location::inside);
  EXPECT_EQ(locate(g, 0.1), Location::outside);
  EXPECT_EQ(locate(g, 1.5), Location::outside);
}

TEST(Locate, OrientationGivesUnitIndexInside) {
  for (const auto& d : {annulus(0.5), perturbed_annulus(), cassini_like()}) {
    const auto g = build_grid(d, 128);
    for (cplx z : {cplx(0.75, 0.0), cplx(-0.7, 0.2), cplx(0.0, 0.8)}) {
      if (locate(g, z) != Location::inside) continue;
      EXPECT_NEAR(std::abs(winding_number(g, z) - 1.0), 0.0, 1e-10);
    }
  }
}

TEST(Validate, BasePointsAndSzegoPoint) {
  auto d = annulus(0.5);
  EXPECT_NO_THROW(validate(d));
  d.base_points = {cplx(0.8, 0.0)};
  EXPECT_THROW(validate(d), InputError);
  d = annulus(0.5);
  d.szego_point = cplx(0.1, 0.0);
  EXPECT_THROW(validate(d), InputError);
  d.szego_point = cplx(0.75, 0.0);
  EXPECT_NO_THROW(validate(d));
}

TEST(Validate, IntersectingCurves) {
  DomainSpec d{BoundaryCurve::circle(0.0, 1.0), {BoundaryCurve::circle(0.8, 0.5)}, {cplx(0.8, 0.0)}, std::nullopt};
  EXPECT_THROW(validate(d), InputError);
}

TEST(SpectralDerivative, ReproducesTrigonometricDerivative) {
  const auto g = build_grid(annulus(0.5), 64);
  CVector f(g.size()), df(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.t[i];
    f[i] = std::exp(kI * 3.0 * t) + std::sin(5.0 * t);
    df[i] = 3.0 * kI * std::exp(kI * 3.0 * t) + 5.0 * std::cos(5.0 * t);
  }
  const auto d = spectral_derivative(g, f);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(std::abs(d[i] - df[i]), 0.0, 1e-11);
}

TEST(DistanceToCurve, Circle) {
  EXPECT_NEAR(distance_to_curve(BoundaryCurve::circle(0.0, 1.0), cplx(0.3, 0.4)), 0.5, 1e-12);
}

TEST(NamedDomain, Parsing) {
  EXPECT_TRUE(named_domain("unit-disc"));
  const auto a = named_domain("annulus:0.25");
  ASSERT_TRUE(a);
  EXPECT_DOUBLE_EQ(a->holes[0].radius(), 0.25);
  EXPECT_FALSE(named_domain("nope"));
  EXPECT_THROW(named_domain("annulus:x"), InputError);
}
