#pragma once

#include <vector>

#include "qdpot/geometry.hpp"
#include "qdpot/partial_fractions.hpp"
#include "qdpot/rational.hpp"

namespace qdpot {

/// Schwarz function of a quadrature-domain model: S(z) = conj(z) on the
/// boundary, meromorphic inside.
class SchwarzModel {
 public:
  /// S(z) = conj(c) + r^2 / (z - c)
  static SchwarzModel disc(cplx center, double radius);
  /// Image of the closed unit disc under an injective polynomial f;
  /// S(f(ζ)) = f*(1/ζ).  Injectivity is checked by sampling, not proven.
  static SchwarzModel polynomial_image(Polynomial f);

  bool is_disc() const { return f_.is_zero(); }
  cplx center() const { return center_; }
  double radius() const { return radius_; }
  const Polynomial& map() const { return f_; }

  /// schwarz_eval; throws MathError at a pole or on preimage failure.
  cplx operator()(cplx z) const;
  /// Unique ζ with |ζ| ≤ 1 and f(ζ) = z (polynomial-image models).
  cplx preimage(cplx z) const;
  BoundaryCurve boundary() const;
  /// The disc variant as a rational function of z.
  UnivariateRational as_rational() const;

 private:
  SchwarzModel() = default;
  cplx center_{};
  double radius_ = 1.0;
  Polynomial f_;
};

cplx schwarz_eval(const SchwarzModel& model, cplx z);

/// max |S(z) - conj(z)| over `samples` boundary points.
double schwarz_boundary_residual(const SchwarzModel& model, int samples = 256);

/// G^{(m)}(z, w) = ∂^m/∂w^m of -ln|(z - w)/(1 - conj(w) z)| on the unit disc,
/// as a rational function of (z, zbar):
///   (m-1)!/2 · [ (z - w)^{-m} - zbar^m (1 - w zbar)^{-m} ].
BivariateRational green_derivative_disc(int m, cplx w);

/// Dirichlet solution on the unit disc for boundary data R(z, zbar).
struct HarmonicRationalForm {
  /// Pole-free closed form u(z, zbar) = h(z) + conj(H(z)).
  BivariateRational u;
  /// r(z) = R(z, 1/z), the meromorphic extension of the data.
  UnivariateRational extension;
  /// Principal parts of r inside the disc, a_{jk}.
  PrincipalPartTable inside;
  /// c_{jk} = 2 a_{jk} / (k-1)!, laid out like `inside`.
  std::vector<CVector> constants;
  /// G^{(k)}(·, w_j), laid out like `inside`.
  std::vector<std::vector<BivariateRational>> green_terms;
  UnivariateRational holomorphic;      // h
  UnivariateRational antiholomorphic;  // H, with H(0) = 0

  cplx operator()(cplx z) const { return u.on_boundary(z); }
  /// r(z) - Σ c_{jk} G^{(k)}(z, w_j) evaluated literally (singular at w_j).
  cplx subtraction_value(cplx z) const;
};

HarmonicRationalForm exact_dirichlet_disc(const BivariateRational& data);

/// Largest Laurent coefficient of r - Σ c_{jk} G^{(k)}(·, w_j) at the
/// poles w_j, measured by contour integrals on small circles around them.
double residual_principal_parts(const HarmonicRationalForm& form);

/// ∫_{|z|=1} R(z, zbar) ds by residues.
cplx residue_boundary_integral(const BivariateRational& data);

/// Szegő projection on the unit disc; equals the Cauchy transform there.
UnivariateRational exact_szego_projection_disc(const BivariateRational& data);

enum class CauchyOperator { cauchy, adjoint, kerzman_stein };

/// Boundary rational result of C, C* or A = C - C* on the unit circle.
BivariateRational exact_cauchy_ops_disc(CauchyOperator op, const BivariateRational& data);

/// Restriction of a boundary rational to |z| = 1 (w := 1/z).
UnivariateRational restrict_to_unit_circle(const BivariateRational& data);

struct QuadratureReport {
  cplx area;
  cplx area_expected;
  cplx arc;
  cplx arc_expected;
  double tolerance;
  double area_error() const { return std::abs(area - area_expected); }
  double arc_error() const { return std::abs(arc - arc_expected); }
  bool passed() const { return area_error() <= tolerance && arc_error() <= tolerance; }
};

/// Area and arc-length one-point identities of the unit disc for g
/// holomorphic on the closed disc.
QuadratureReport verify_quadrature_identity(const UnivariateRational& g, double tolerance = 1e-8);

}  // namespace qdpot
