#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qdpot/partial_fractions.hpp"
#include "qdpot/rational.hpp"

using namespace qdpot;

namespace {

Polynomial lin(cplx root) { return Polynomial(CVector{-root, 1.0}); }

UnivariateRational z_over(cplx root) { return UnivariateRational(Polynomial(1.0), lin(root)); }

void expect_poly_near(const Polynomial& p, const CVector& expected, double tol) {
  ASSERT_EQ(p.coefficients().size(), expected.size()) << to_string(p);
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(std::abs(p[k] - expected[k]), 0.0, tol) << k;
}

// random rational with well separated poles; orders 1..2, total degree <= 8
UnivariateRational random_rational(std::mt19937& rng, std::vector<std::pair<cplx, int>>* poles_out = nullptr) {
  std::uniform_real_distribution<double> u(-1.8, 1.8);
  std::uniform_int_distribution<int> npoles(1, 5), order(1, 2), ndeg(0, 8);
  std::vector<std::pair<cplx, int>> poles;
  int total = 0;
  const int want = npoles(rng);
  while (static_cast<int>(poles.size()) < want) {
    const cplx p(u(rng), u(rng));
    bool ok = true;
    for (const auto& q : poles) ok = ok && std::abs(q.first - p) >= 0.1;
    if (!ok) continue;
    const int m = std::min(order(rng), 8 - total);
    if (m <= 0) break;
    poles.emplace_back(p, m);
    total += m;
  }
  Polynomial den(1.0);
  for (const auto& [p, m] : poles) den *= lin(p).pow(static_cast<unsigned>(m));
  CVector num(static_cast<std::size_t>(ndeg(rng)) + 1);
  for (auto& c : num) c = cplx(u(rng), u(rng));
  if (poles_out) *poles_out = poles;
  return UnivariateRational::unreduced(Polynomial(num), den);
}

}  // namespace

TEST(Polynomial, Arithmetic) {
  const Polynomial p(CVector{1.0, 2.0, 3.0});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_NEAR(std::abs(p(cplx(0.0, 1.0)) - cplx(-2.0, 2.0)), 0.0, 1e-15);
  const auto [q, r] = (p * lin(2.0) + Polynomial(5.0)).divmod(lin(2.0));
  expect_poly_near(q, {1.0, 2.0, 3.0}, 1e-14);
  expect_poly_near(r, {5.0}, 1e-14);
  const auto s = p.taylor_shift(1.0);  // p(z + 1) = 6 + 8z + 3z^2
  expect_poly_near(s, {6.0, 8.0, 3.0}, 1e-14);
}

TEST(Polynomial, RootsWithPolish) {
  const CVector rts{cplx(0.5, 0.1), cplx(-1.0, 2.0), cplx(3.0, 0.0), cplx(0.0, -0.7)};
  const auto p = Polynomial::from_roots(rts, cplx(2.0, 1.0));
  const auto found = roots(p);
  ASSERT_EQ(found.size(), rts.size());
  for (const auto& r : rts) {
    double best = 1e9;
    for (const auto& f : found) best = std::min(best, std::abs(f - r));
    EXPECT_LT(best, 1e-12);
    EXPECT_LT(std::abs(p(r)), 1e-10 * p.norm());
  }
}

TEST(Polynomial, ClusterMultipleRoots) {
  // (z - 0.3)^3 (z + 0.5i)^2 (z - 1)
  const auto p = lin(0.3).pow(3) * lin(cplx(0.0, -0.5)).pow(2) * lin(1.0);
  const auto cl = root_clusters(p);
  ASSERT_EQ(cl.size(), 3u);
  int total = 0;
  for (const auto& c : cl) {
    total += c.multiplicity;
    if (c.multiplicity == 3) EXPECT_NEAR(std::abs(c.center - 0.3), 0.0, 1e-9);
    if (c.multiplicity == 2) EXPECT_NEAR(std::abs(c.center - cplx(0.0, -0.5)), 0.0, 1e-9);
  }
  EXPECT_EQ(total, 6);
}

TEST(UnivariateRational, SumOverCommonDenominator) {
  // 1/(z-1) + 1/(z+1) = 2z / (z^2 - 1), recombined by hand
  const auto r = z_over(1.0) + z_over(-1.0);
  expect_poly_near(r.num(), {0.0, 2.0}, 1e-14);
  expect_poly_near(r.den(), {-1.0, 0.0, 1.0}, 1e-14);
}

TEST(UnivariateRational, DerivativeOfInverse) {
  const auto r = UnivariateRational(Polynomial(1.0), Polynomial::monomial(1)).derivative();
  expect_poly_near(r.num(), {-1.0}, 1e-15);
  expect_poly_near(r.den(), {0.0, 0.0, 1.0}, 1e-15);
}

TEST(UnivariateRational, CancellationToOne) {
  const UnivariateRational z(Polynomial::monomial(1));
  const auto r = z * UnivariateRational(Polynomial(1.0), Polynomial::monomial(1));
  expect_poly_near(r.num(), {1.0}, 1e-15);
  expect_poly_near(r.den(), {1.0}, 1e-15);
}

TEST(UnivariateRational, DivisionByZero) {
  EXPECT_THROW(UnivariateRational(1.0) / UnivariateRational(), MathError);
  EXPECT_THROW(UnivariateRational(Polynomial(1.0), Polynomial()), MathError);
}

TEST(UnivariateRational, CommonFactorsRemoved) {
  const auto num = lin(0.2) * lin(cplx(1.0, 1.0)).pow(2);
  const auto den = lin(cplx(1.0, 1.0)).pow(2) * lin(-3.0);
  const UnivariateRational r(num, den);
  EXPECT_EQ(r.den().degree(), 1);
  EXPECT_NEAR(std::abs(r(0.7) - (0.7 - 0.2) / (0.7 + 3.0)), 0.0, 1e-12);
}

TEST(Bivariate, SwapConjMatchesBoundaryConjugate) {
  // R = (z + 2i zbar^2) / (3 - z zbar)
  const auto z = BivariateRational::z(), w = BivariateRational::w();
  const auto r = (z + cplx(0.0, 2.0) * w * w) / (BivariateRational(3.0) - z * w);
  for (cplx p : {cplx(0.3, 0.2), cplx(-0.5, 0.9)}) {
    EXPECT_NEAR(std::abs(r.swap_conj().on_boundary(p) - std::conj(r.on_boundary(p))), 0.0, 1e-14);
  }
}

TEST(SubstituteW, Examples) {
  const auto z = BivariateRational::z(), w = BivariateRational::w();
  const UnivariateRational inv(Polynomial(1.0), Polynomial::monomial(1));
  {
    const auto r = substitute_w(z * w, inv);
    expect_poly_near(r.num(), {1.0}, 1e-15);
    expect_poly_near(r.den(), {1.0}, 1e-15);
  }
  {
    const auto r = substitute_w(w * w, inv);
    expect_poly_near(r.num(), {1.0}, 1e-15);
    expect_poly_near(r.den(), {0.0, 0.0, 1.0}, 1e-15);
  }
  {
    // 1/(w - 1/2) at w = 1/z is 2z/(2 - z) = -2z/(z - 2)
    const auto r = substitute_w(BivariateRational(1.0) / (w - BivariateRational(0.5)), inv);
    expect_poly_near(r.num(), {0.0, -2.0}, 1e-14);
    expect_poly_near(r.den(), {-2.0, 1.0}, 1e-14);
  }
}

TEST(SubstituteW, Degenerate) {
  const auto z = BivariateRational::z(), w = BivariateRational::w();
  const UnivariateRational inv(Polynomial(1.0), Polynomial::monomial(1));
  EXPECT_THROW(substitute_w(BivariateRational(1.0) / (z * w - BivariateRational(1.0)), inv), MathError);
}

TEST(PartialFractions, SimplePoleInsideDisc) {
  const UnivariateRational r(Polynomial(1.0), Polynomial::monomial(1) * lin(2.0));
  const auto t = partial_fractions(r, Region::unit_disc());
  ASSERT_EQ(t.parts.size(), 1u);
  EXPECT_NEAR(std::abs(t.parts[0].pole), 0.0, 1e-15);
  EXPECT_EQ(t.parts[0].order, 1);
  EXPECT_NEAR(std::abs(t.parts[0].coefficients[0] + 0.5), 0.0, 1e-14);
  // recombination oracle over all poles
  EXPECT_LT(recombine(partial_fractions(r)).distance(r), 1e-13);
}

TEST(PartialFractions, DoublePole) {
  const UnivariateRational r(Polynomial::monomial(1), lin(kI).pow(2));
  const auto t = partial_fractions(r);
  ASSERT_EQ(t.parts.size(), 1u);
  EXPECT_EQ(t.parts[0].order, 2);
  EXPECT_NEAR(std::abs(t.parts[0].coefficients[0] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(t.parts[0].coefficients[1] - kI), 0.0, 1e-12);
  EXPECT_LT(recombine(t).distance(r), 1e-12);
}

TEST(PartialFractions, PoleOutside) {
  const UnivariateRational r(Polynomial(1.0), lin(2.0));
  const auto t = partial_fractions(r, Region::unit_disc());
  EXPECT_TRUE(t.parts.empty());
  EXPECT_TRUE(t.polynomial_part.is_zero());
}

TEST(PartialFractions, BoundaryPoleRejected) {
  const UnivariateRational r(Polynomial(1.0), lin(kI));
  EXPECT_THROW(partial_fractions(r, Region::unit_disc()), MathError);
  EXPECT_THROW(residue_sum(r, Region::unit_disc()), MathError);
}

TEST(PartialFractions, DomainRegion) {
  const UnivariateRational r(Polynomial(1.0), lin(0.75) * lin(0.0) * lin(3.0));
  const auto t = partial_fractions(r, Region(annulus(0.5)));
  ASSERT_EQ(t.parts.size(), 1u);
  EXPECT_NEAR(std::abs(t.parts[0].pole - 0.75), 0.0, 1e-12);
}

TEST(ResidueSum, Examples) {
  const auto disc = Region::unit_disc();
  EXPECT_NEAR(std::abs(residue_sum(UnivariateRational(Polynomial(1.0), Polynomial::monomial(1)), disc) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(residue_sum(z_over(2.0), disc)), 0.0, 1e-15);
  const UnivariateRational r(Polynomial(1.0), Polynomial::monomial(1) * lin(2.0));
  EXPECT_NEAR(std::abs(residue_sum(r, disc) + 0.5), 0.0, 1e-14);
}

TEST(PartialFractionsProperty, Reconstruction) {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = random_rational(rng);
    const auto t = partial_fractions(r);
    // close pole pairs produce large cancelling principal parts; the error is
    // measured against that scale
    const double scale = std::max({1.0, max_coefficient(t), r.num().norm()});
    EXPECT_LT(recombine(t).distance(r) / scale, 1e-8) << "trial " << trial << ": " << to_string(r);
  }
}

TEST(PartialFractionsProperty, ResidueMatchesTrapezoid) {
  std::mt19937 rng(7);
  int tested = 0;
  while (tested < 100) {
    std::vector<std::pair<cplx, int>> poles;
    const auto r = random_rational(rng, &poles);
    bool far = true;
    for (const auto& [p, m] : poles) far = far && std::abs(std::abs(p) - 1.0) >= 0.1;
    if (!far) continue;
    ++tested;
    constexpr int n = 512;
    cplx trap{};
    for (int j = 0; j < n; ++j) {
      const cplx z = std::polar(1.0, 2.0 * kPi * j / n);
      trap += r(z) * kI * z;  // dz = i z dt
    }
    trap *= (2.0 * kPi / n) / (2.0 * kPi * kI);
    EXPECT_NEAR(std::abs(residue_sum(r, Region::unit_disc()) - trap), 0.0, 1e-8) << to_string(r);
  }
}
