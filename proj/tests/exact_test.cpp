#include <gtest/gtest.h>

#include <cmath>

#include "qdpot/exact.hpp"
#include "test_corpus.hpp"

using namespace qdpot;

namespace {

BivariateRational zbar() { return BivariateRational::w(); }
BivariateRational zz() { return BivariateRational::z(); }

// -ln|(z-w)/(1-conj(w) z)|
double disc_green(cplx z, cplx w) { return -std::log(std::abs((z - w) / (1.0 - std::conj(w) * z))); }

double max_boundary_error(const BivariateRational& a, const BivariateRational& b, int samples = 64) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const cplx z = std::polar(1.0, 2.0 * kPi * (i + 0.3) / samples);
    worst = std::max(worst, std::abs(a.on_boundary(z) - b.on_boundary(z)));
  }
  return worst;
}

}  // namespace

TEST(Schwarz, UnitDisc) {
  EXPECT_NEAR(std::abs(schwarz_eval(SchwarzModel::disc(0.0, 1.0), 0.5) - 2.0), 0.0, 1e-15);
}

TEST(Schwarz, OffsetDiscBoundaryPoint) {
  EXPECT_NEAR(std::abs(schwarz_eval(SchwarzModel::disc(1.0, 2.0), 3.0) - 3.0), 0.0, 1e-14);
}

TEST(Schwarz, PolynomialImageBoundaryPoint) {
  const auto m = SchwarzModel::polynomial_image(Polynomial(CVector{0.0, 1.0, 0.1}));
  const cplx z = m.map()(std::polar(1.0, kPi / 3.0));
  EXPECT_LT(std::abs(m(z) - std::conj(z)), 1e-10);
}

TEST(Schwarz, BoundaryResidual) {
  EXPECT_LT(schwarz_boundary_residual(SchwarzModel::disc({0.2, -0.1}, 0.7)), 1e-9);
  EXPECT_LT(schwarz_boundary_residual(SchwarzModel::polynomial_image(Polynomial(CVector{0.1, 1.0, 0.2, -0.05}))), 1e-9);
}

TEST(Schwarz, PoleAndOutsideSignals) {
  EXPECT_THROW(SchwarzModel::disc(0.0, 1.0)(0.0), MathError);
  const auto m = SchwarzModel::polynomial_image(Polynomial(CVector{0.0, 1.0, 0.1}));
  EXPECT_THROW(m(0.0), MathError);
  EXPECT_THROW(m(3.0), MathError);
  EXPECT_THROW(SchwarzModel::polynomial_image(Polynomial(CVector{0.0, 1.0, 0.6})), InputError);
}

TEST(Schwarz, InteriorMatchesFunctionalEquation) {
  // S(f(ζ)) = f*(1/ζ) at interior ζ
  const Polynomial f(CVector{0.0, 1.0, 0.1});
  const auto m = SchwarzModel::polynomial_image(f);
  const cplx zeta(0.3, -0.4);
  EXPECT_LT(std::abs(m(f(zeta)) - f.conj_coefficients()(1.0 / zeta)), 1e-12);
}

TEST(GreenDerivativeDisc, FirstOrderAtOrigin) {
  EXPECT_NEAR(std::abs(green_derivative_disc(1, 0.0).on_boundary(0.5) - 0.75), 0.0, 1e-15);
}

TEST(GreenDerivativeDisc, VanishesOnCircle) {
  for (int m = 1; m <= 4; ++m) {
    const auto g = green_derivative_disc(m, {0.3, 0.2});
    for (int i = 0; i < 16; ++i) EXPECT_LT(std::abs(g.on_boundary(std::polar(1.0, 0.4 * i))), 1e-12);
  }
}

TEST(GreenDerivativeDisc, SecondOrderAtOrigin) {
  const auto g = green_derivative_disc(2, 0.0);
  for (cplx z : {cplx(0.5, 0.1), cplx(-0.2, 0.6)}) {
    const cplx zb = std::conj(z);
    const cplx expected = (1.0 - z * zb) / 2.0 * (1.0 / (z * z) + zb / z);
    EXPECT_LT(std::abs(g.on_boundary(z) - expected), 1e-13);
  }
}

TEST(GreenDerivativeDisc, FirstOrderIsWirtingerDerivativeOfGreen) {
  // ∂/∂w = (∂x - i ∂y)/2 by central differences
  const double h = 1e-5;
  for (cplx w : {cplx(0.1, 0.2), cplx(-0.4, 0.3)}) {
    const cplx z(0.5, -0.3);
    const double gx = (disc_green(z, w + h) - disc_green(z, w - h)) / (2 * h);
    const double gy = (disc_green(z, w + kI * h) - disc_green(z, w - kI * h)) / (2 * h);
    const cplx fd = 0.5 * (gx - kI * gy);
    EXPECT_LT(std::abs(green_derivative_disc(1, w).on_boundary(z) - fd), 1e-8);
  }
}

TEST(GreenDerivativeDisc, HigherOrdersAreDerivativesInW) {
  const double h = 1e-4;
  const cplx z(0.3, 0.5), w(-0.2, 0.1);
  for (int m = 1; m <= 4; ++m) {
    // G^(m) is holomorphic in w for m >= 1
    const cplx fd = (green_derivative_disc(m, w + h).on_boundary(z) - green_derivative_disc(m, w - h).on_boundary(z)) / (2 * h);
    const cplx exact = green_derivative_disc(m + 1, w).on_boundary(z);
    EXPECT_LT(std::abs(fd - exact), 1e-6 * std::max(1.0, std::abs(exact))) << "m=" << m;
  }
}

TEST(GreenDerivativeDisc, PrincipalPartConstant) {
  // with the second slot frozen, G^(m)(·, w) has principal part (m-1)!/2 (z-w)^{-m}
  const cplx w(0.2, -0.3);
  double fact = 1.0;
  for (int m = 1; m <= 5; ++m) {
    if (m > 1) fact *= m - 1;
    const auto frozen = substitute_w(green_derivative_disc(m, w), UnivariateRational(cplx(0.4, 0.1)));
    const auto table = partial_fractions(frozen);
    ASSERT_EQ(table.parts.size(), 1u);
    const auto& part = table.parts[0];
    EXPECT_EQ(part.order, m);
    EXPECT_LT(std::abs(part.pole - w), 1e-6);
    EXPECT_LT(std::abs(part.coefficients.back() - fact / 2.0), 1e-8 * fact) << "m=" << m;
    for (int k = 0; k + 1 < m; ++k) EXPECT_LT(std::abs(part.coefficients[k]), 1e-6 * fact) << "m=" << m;
  }
}

TEST(GreenDerivativeDisc, RefusesOrderZero) {
  EXPECT_THROW(green_derivative_disc(0, 0.0), InputError);
  EXPECT_THROW(green_derivative_disc(1, 1.5), InputError);
}

TEST(ExactDirichlet, Zbar) {
  const auto f = exact_dirichlet_disc(zbar());
  ASSERT_EQ(f.inside.parts.size(), 1u);
  EXPECT_LT(std::abs(f.constants[0][0] - 2.0), 1e-14);
  for (cplx z : {cplx(0.3, 0.4), cplx(-0.5, 0.1)}) {
    EXPECT_LT(std::abs(f(z) - std::conj(z)), 1e-14);
    EXPECT_LT(std::abs(f.subtraction_value(z) - std::conj(z)), 1e-14);
  }
}

TEST(ExactDirichlet, ModulusSquared) {
  const auto f = exact_dirichlet_disc(zz() * zbar());
  EXPECT_TRUE(f.inside.parts.empty());
  EXPECT_LT(std::abs(f(cplx(0.2, 0.3)) - 1.0), 1e-15);
}

TEST(ExactDirichlet, ExtensionIsSolution) {
  const BivariateRational r = BivariateRational(1.0) / (zbar() - BivariateRational(0.5));
  const auto f = exact_dirichlet_disc(r);
  EXPECT_TRUE(f.inside.parts.empty());
  const cplx z(0.1, 0.6);
  EXPECT_LT(std::abs(f(z) - 2.0 * z / (2.0 - z)), 1e-14);
}

TEST(ExactDirichlet, BoundaryPoleRejected) {
  EXPECT_THROW(exact_dirichlet_disc(BivariateRational(1.0) / (zz() - BivariateRational(1.0))), MathError);
}

TEST(ExactDirichlet, RandomCorpusInvariants) {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 20; ++trial) {
    const BivariateRational data = corpus::random_boundary_rational(rng);
    const auto f = exact_dirichlet_disc(data);
    EXPECT_LT(max_boundary_error(f.u, data), 1e-9) << to_string(data);
    EXPECT_LT(residual_principal_parts(f), 1e-9) << to_string(data);
    // harmonicity by the 5-point Laplacian
    const double h = 1e-3;
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.4, 0.35), cplx(0.55, -0.3)}) {
      const cplx lap = (f(z + h) + f(z - h) + f(z + kI * h) + f(z - kI * h) - 4.0 * f(z)) / (h * h);
      EXPECT_LT(std::abs(lap), 1e-4) << to_string(data);
      if (std::abs(f.subtraction_value(z)) < 1e6)
        EXPECT_LT(std::abs(f.subtraction_value(z) - f(z)), 1e-8 * std::max(1.0, std::abs(f(z))));
    }
  }
}

TEST(ResidueIntegral, WorkedExamples) {
  EXPECT_NEAR(std::abs(residue_boundary_integral(BivariateRational(1.0)) - 2.0 * kPi), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(residue_boundary_integral(zbar())), 0.0, 1e-14);
  const BivariateRational r = BivariateRational(1.0) / (BivariateRational(2.0) + zz());
  EXPECT_NEAR(std::abs(residue_boundary_integral(r) - kPi), 0.0, 1e-14);
}

TEST(ResidueIntegral, MatchesTrapezoid) {
  std::mt19937_64 rng(99);
  constexpr int n = 512;
  for (int trial = 0; trial < 20; ++trial) {
    const BivariateRational data = corpus::random_boundary_rational(rng);
    cplx trap{};
    for (int i = 0; i < n; ++i) trap += data.on_boundary(std::polar(1.0, 2.0 * kPi * i / n));
    trap *= 2.0 * kPi / n;
    EXPECT_LT(std::abs(residue_boundary_integral(data) - trap), 1e-8) << to_string(data);
  }
}

TEST(Projection, WorkedExamples) {
  EXPECT_TRUE(exact_szego_projection_disc(zbar()).is_zero());
  EXPECT_LT(exact_szego_projection_disc(BivariateRational(1.0)).distance(UnivariateRational(1.0)), 1e-15);
  EXPECT_LT(exact_szego_projection_disc(zz() + zbar()).distance(UnivariateRational(Polynomial::monomial(1))), 1e-15);
}

TEST(Projection, Idempotent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto once = exact_szego_projection_disc(corpus::random_boundary_rational(rng));
    const auto twice = exact_szego_projection_disc(BivariateRational::in_z(once));
    EXPECT_LT(once.distance(twice), 1e-10);
  }
}

TEST(Projection, MatchesCauchyIntegralInside) {
  std::mt19937_64 rng(17);
  constexpr int n = 512;
  for (int trial = 0; trial < 10; ++trial) {
    const BivariateRational data = corpus::random_boundary_rational(rng);
    const auto p = exact_szego_projection_disc(data);
    const cplx z(0.2, -0.1);
    cplx sum{};
    for (int i = 0; i < n; ++i) {
      const cplx w = std::polar(1.0, 2.0 * kPi * i / n);
      sum += data.on_boundary(w) * w / (w - z);
    }
    EXPECT_LT(std::abs(sum / static_cast<double>(n) - p(z)), 1e-9);
  }
}

TEST(CauchyOps, WorkedExamples) {
  EXPECT_TRUE(restrict_to_unit_circle(exact_cauchy_ops_disc(CauchyOperator::cauchy, zbar())).is_zero());
  EXPECT_TRUE(restrict_to_unit_circle(exact_cauchy_ops_disc(CauchyOperator::adjoint, zbar())).is_zero());
  for (const auto& u : {BivariateRational(1.0), zbar(), zz() * zbar()})
    EXPECT_TRUE(restrict_to_unit_circle(exact_cauchy_ops_disc(CauchyOperator::kerzman_stein, u)).is_zero());
}

TEST(CauchyOps, KerzmanSteinVanishesOnCorpus) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 20; ++trial) {
    const BivariateRational data = corpus::random_boundary_rational(rng);
    const auto a = restrict_to_unit_circle(exact_cauchy_ops_disc(CauchyOperator::kerzman_stein, data));
    EXPECT_LT(a.num().norm() / a.den().norm(), 1e-10) << to_string(data);
  }
}

TEST(Quadrature, WorkedExamples) {
  const auto cube = verify_quadrature_identity(UnivariateRational(Polynomial::monomial(3)));
  EXPECT_TRUE(cube.passed());
  EXPECT_LT(std::abs(cube.area), 1e-15);
  const auto g = verify_quadrature_identity(UnivariateRational(Polynomial(1.0), Polynomial(CVector{-2.0, 1.0})));
  EXPECT_LT(std::abs(g.area + kPi / 2.0), 1e-14);
  EXPECT_LT(std::abs(g.arc + kPi), 1e-14);
  const auto one = verify_quadrature_identity(UnivariateRational(1.0));
  EXPECT_LT(std::abs(one.area - kPi), 1e-15);
  EXPECT_LT(std::abs(one.arc - 2.0 * kPi), 1e-15);
}

TEST(Quadrature, AreaMatchesPolarQuadrature) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = corpus::random_holomorphic(rng);
    // Gauss-free check: trapezoid in angle, midpoint in radius, fine enough for 1e-6
    constexpr int nr = 400, nt = 256;
    cplx area{};
    for (int i = 0; i < nr; ++i) {
      const double r = (i + 0.5) / nr;
      for (int k = 0; k < nt; ++k) area += g(std::polar(r, 2.0 * kPi * k / nt)) * r;
    }
    area *= (1.0 / nr) * (2.0 * kPi / nt);
    EXPECT_LT(std::abs(verify_quadrature_identity(g).area - area), 1e-5);
  }
}

TEST(Quadrature, PoleInsideRejected) {
  EXPECT_THROW(verify_quadrature_identity(UnivariateRational(Polynomial(1.0), Polynomial::monomial(1))), MathError);
}
