#include "qdpot/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdpot {

namespace {

const UnivariateRational& inverse_z() {
  static const UnivariateRational r(Polynomial(1.0), Polynomial::monomial(1));
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Full principal-part table of r with every pole classified against |z| = 1.
struct UnitCircleSplit {
  PrincipalPartTable inside;
  PrincipalPartTable outside;  // carries the polynomial part
  std::vector<cplx> all_poles;
};

UnitCircleSplit split_unit_circle(const UnivariateRational& r) {
  PrincipalPartTable all = partial_fractions(r);
  UnitCircleSplit s;
  s.outside.polynomial_part = all.polynomial_part;
  for (auto& part : all.parts) {
    const double d = std::abs(part.pole);
    if (std::abs(d - 1.0) < kBoundaryPoleTol) throw MathError("pole on boundary at " + format_complex(part.pole));
    s.all_poles.push_back(part.pole);
    (d < 1.0 ? s.inside : s.outside).parts.push_back(std::move(part));
  }
  return s;
}

// r minus its principal parts inside the disc
UnivariateRational regular_part(const UnivariateRational& r, const UnitCircleSplit& s) {
  if (s.inside.parts.empty()) return r;
  return recombine(s.outside);
}

}  // namespace

SchwarzModel SchwarzModel::disc(cplx center, double radius) {
  if (!(radius > 0.0)) throw InputError("disc radius must be positive");
  SchwarzModel m;
  m.center_ = center;
  m.radius_ = radius;
  return m;
}

SchwarzModel SchwarzModel::polynomial_image(Polynomial f) {
  if (f.degree() < 1) throw InputError("polynomial-image model needs degree >= 1");
  // local injectivity: no critical point in the closed disc
  const Polynomial df = f.derivative();
  if (df.degree() >= 1)
    for (cplx c : roots(df))
      if (std::abs(c) <= 1.0 + 1e-9) throw InputError("polynomial map has a critical point in the closed disc");
  // global injectivity on the boundary by sampling
  constexpr int samples = 512;
  CVector pts(samples);
  for (int i = 0; i < samples; ++i) pts[i] = f(std::polar(1.0, 2.0 * kPi * i / samples));
  const double step = std::abs(pts[1] - pts[0]);
  for (int i = 0; i < samples; ++i)
    for (int j = i + 2; j < samples; ++j) {
      if (i == 0 && j == samples - 1) continue;
      if (std::abs(pts[i] - pts[j]) < 0.25 * step) throw InputError("polynomial map is not injective on the unit circle");
    }
  SchwarzModel m;
  m.f_ = std::move(f);
  return m;
}

cplx SchwarzModel::preimage(cplx z) const {
  if (is_disc()) return (z - center_) / radius_;
  // start from the best sample of the closed disc
  cplx best{};
  double best_res = std::numeric_limits<double>::infinity();
  for (int ri = 0; ri <= 16; ++ri) {
    const double rad = ri / 16.0;
    const int na = ri == 0 ? 1 : 64;
    for (int k = 0; k < na; ++k) {
      const cplx zeta = std::polar(rad, 2.0 * kPi * k / na);
      const double res = std::abs(f_(zeta) - z);
      if (res < best_res) best_res = res, best = zeta;
    }
  }
  const Polynomial df = f_.derivative();
  const double scale = std::max(1.0, f_.norm());
  cplx zeta = best;
  bool converged = false;
  for (int it = 0; it < 60; ++it) {
    const cplx step = (f_(zeta) - z) / df(zeta);
    zeta -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(zeta))) {
      converged = true;
      break;
    }
  }
  if (!converged && std::abs(f_(zeta) - z) > 1e-13 * scale)
    throw MathError("preimage Newton iteration did not converge at " + format_complex(z));
  if (std::abs(zeta) > 1.0 + 1e-8) throw MathError("point " + format_complex(z) + " is outside the model domain");
  return zeta;
}

cplx SchwarzModel::operator()(cplx z) const {
  if (is_disc()) {
    if (std::abs(z - center_) < 1e-14 * std::max(1.0, radius_)) throw MathError("pole of the Schwarz function at " + format_complex(z));
    return std::conj(center_) + radius_ * radius_ / (z - center_);
  }
  const cplx zeta = preimage(z);
  if (std::abs(zeta) < 1e-12) throw MathError("pole of the Schwarz function at " + format_complex(z));
  return f_.conj_coefficients()(1.0 / zeta);
}

BoundaryCurve SchwarzModel::boundary() const {
  if (is_disc()) return BoundaryCurve::circle(center_, radius_);
  return BoundaryCurve::polynomial_image(f_.coefficients());
}

UnivariateRational SchwarzModel::as_rational() const {
  if (!is_disc()) throw InputError("only the disc model has a rational Schwarz function in z");
  const Polynomial lin(CVector{-center_, 1.0});
  return {std::conj(center_) * lin + Polynomial(radius_ * radius_), lin};
}

cplx schwarz_eval(const SchwarzModel& model, cplx z) { return model(z); }

double schwarz_boundary_residual(const SchwarzModel& model, int samples) {
  const BoundaryCurve c = model.boundary();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const cplx z = c.point(2.0 * kPi * i / samples);
    worst = std::max(worst, std::abs(model(z) - std::conj(z)));
  }
  return worst;
}

BivariateRational green_derivative_disc(int m, cplx w) {
  if (m < 1) throw InputError("G^(0) is the logarithmic Green function, not a rational; order must be >= 1");
  if (std::abs(w) >= 1.0) throw InputError("source point must lie in the open unit disc");
  const auto mu = static_cast<unsigned>(m);
  const BivariateRational pole(BivariatePolynomial(1.0),
                               BivariatePolynomial::in_z(Polynomial(CVector{-w, 1.0}).pow(mu)));
  const BivariateRational reflected(BivariatePolynomial::in_w(Polynomial::monomial(mu)),
                                    BivariatePolynomial::in_w(Polynomial(CVector{1.0, -w}).pow(mu)));
  return BivariateRational(factorial(m - 1) / 2.0) * (pole - reflected);
}

cplx HarmonicRationalForm::subtraction_value(cplx z) const {
  cplx v = extension(z);
  for (std::size_t j = 0; j < green_terms.size(); ++j)
    for (std::size_t k = 0; k < green_terms[j].size(); ++k) v -= constants[j][k] * green_terms[j][k].on_boundary(z);
  return v;
}

HarmonicRationalForm exact_dirichlet_disc(const BivariateRational& data) {
  HarmonicRationalForm form;
  form.extension = substitute_w(data, inverse_z());
  const UnitCircleSplit split = split_unit_circle(form.extension);
  form.inside = split.inside;
  form.holomorphic = regular_part(form.extension, split);

  UnivariateRational anti;
  for (const auto& part : split.inside.parts) {
    CVector c(part.coefficients.size());
    std::vector<BivariateRational> g;
    const Polynomial reflect(CVector{1.0, -std::conj(part.pole)});
    for (int k = 1; k <= part.order; ++k) {
      const cplx a = part.coefficients[static_cast<std::size_t>(k - 1)];
      c[static_cast<std::size_t>(k - 1)] = 2.0 * a / factorial(k - 1);
      g.push_back(green_derivative_disc(k, part.pole));
      const auto ku = static_cast<unsigned>(k);
      anti = anti + UnivariateRational(Polynomial::monomial(ku, std::conj(a)), reflect.pow(ku));
    }
    form.constants.push_back(std::move(c));
    form.green_terms.push_back(std::move(g));
  }
  form.antiholomorphic = anti;
  form.u = BivariateRational::in_z(form.holomorphic) + BivariateRational::in_w(anti.conj_coefficients());
  return form;
}

double residual_principal_parts(const HarmonicRationalForm& form) {
  // a fixed second slot turns each G^(k)(·, w_j) into a meromorphic function of z
  const cplx v0(0.37, 0.21);
  const auto residual = [&](cplx z) {
    cplx v = form.extension(z);
    for (std::size_t j = 0; j < form.green_terms.size(); ++j)
      for (std::size_t k = 0; k < form.green_terms[j].size(); ++k) v -= form.constants[j][k] * form.green_terms[j][k](z, v0);
    return v;
  };
  std::vector<cplx> poles;
  for (const auto& part : partial_fractions(form.extension).parts) poles.push_back(part.pole);

  constexpr int nodes = 128;
  double worst = 0.0;
  for (const auto& part : form.inside.parts) {
    double rho = 0.5;
    for (cplx p : poles)
      if (std::abs(p - part.pole) > 1e-12) rho = std::min(rho, 0.4 * std::abs(p - part.pole));
    for (int k = 1; k <= part.order; ++k) {
      // a_k = (1/2πi)∮ f (z-w)^{k-1} dz on |z-w| = rho
      cplx sum{};
      for (int i = 0; i < nodes; ++i) {
        const cplx e = std::polar(1.0, 2.0 * kPi * i / nodes);
        sum += residual(part.pole + rho * e) * std::pow(rho * e, k);
      }
      worst = std::max(worst, std::abs(sum / static_cast<double>(nodes)));
    }
  }
  return worst;
}

cplx residue_boundary_integral(const BivariateRational& data) {
  const UnivariateRational r = substitute_w(data, inverse_z()) * inverse_z();
  return 2.0 * kPi * residue_sum(r, Region::unit_disc());
}

UnivariateRational exact_szego_projection_disc(const BivariateRational& data) {
  const UnivariateRational r = substitute_w(data, inverse_z());
  return regular_part(r, split_unit_circle(r));
}

UnivariateRational restrict_to_unit_circle(const BivariateRational& data) { return substitute_w(data, inverse_z()); }

BivariateRational exact_cauchy_ops_disc(CauchyOperator op, const BivariateRational& data) {
  const BivariateRational cauchy = BivariateRational::in_z(exact_szego_projection_disc(data));
  if (op == CauchyOperator::cauchy) return cauchy;
  // C*u = u - conj(C(conj(uT)) T) with T = iz, conj(T) = -i zbar
  const BivariateRational conj_uT = data.swap_conj() * (BivariateRational(-kI) * BivariateRational::w());
  const UnivariateRational inner = exact_szego_projection_disc(conj_uT);
  const BivariateRational term = (BivariateRational::in_z(inner) * (BivariateRational(kI) * BivariateRational::z())).swap_conj();
  const BivariateRational adjoint = data - term;
  if (op == CauchyOperator::adjoint) return adjoint;
  return cauchy - adjoint;
}

QuadratureReport verify_quadrature_identity(const UnivariateRational& g, double tolerance) {
  for (const auto& part : partial_fractions(g, Region::unit_disc()).parts)
    throw MathError("pole inside the domain at " + format_complex(part.pole));
  const cplx res = residue_sum(g * inverse_z(), Region::unit_disc());
  const cplx g0 = g(0.0);
  // ∫ g dA = (1/2i)∮ g zbar dz with zbar = 1/z; ∫ g ds = ∮ g dz/(iz)
  return {kPi * res, kPi * g0, 2.0 * kPi * res, 2.0 * kPi * g0, tolerance};
}

}  // namespace qdpot
