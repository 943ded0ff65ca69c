#include "qdpot/partial_fractions.hpp"

#include <algorithm>
#include <cmath>

namespace qdpot {

bool Region::contains(cplx p) const {
  if (const auto* d = std::get_if<DiscRegion>(&region_)) return std::abs(p - d->center) < d->radius;
  const auto& dom = std::get<DomainSpec>(region_);
  // inside the outer curve and outside every hole
  const auto inside_curve = [&](const BoundaryCurve& c) {
    constexpr std::size_t samples = 4096;
    cplx sum{};
    for (std::size_t i = 0; i < samples; ++i) {
      const double t = 2.0 * kPi * i / samples;
      sum += c.derivative(t) / (c.point(t) - p);
    }
    return std::abs(sum.imag() / samples) > 0.5;
  };
  if (!inside_curve(dom.outer)) return false;
  return std::none_of(dom.holes.begin(), dom.holes.end(), inside_curve);
}

double Region::boundary_distance(cplx p) const {
  if (const auto* d = std::get_if<DiscRegion>(&region_)) return std::abs(std::abs(p - d->center) - d->radius);
  const auto& dom = std::get<DomainSpec>(region_);
  double dist = distance_to_curve(dom.outer, p);
  for (const auto& h : dom.holes) dist = std::min(dist, distance_to_curve(h, p));
  return dist;
}

cplx PrincipalPart::operator()(cplx z) const {
  const cplx inv = 1.0 / (z - pole);
  cplx acc{}, pw = inv;
  for (const auto& a : coefficients) {
    acc += a * pw;
    pw *= inv;
  }
  return acc;
}

namespace {

// first n Taylor coefficients of num/den about the origin (den(0) != 0)
CVector series_quotient(const Polynomial& num, const Polynomial& den, std::size_t n) {
  CVector out(n, cplx{});
  const cplx d0 = den[0];
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = num[k];
    for (std::size_t j = 1; j <= k; ++j) s -= den[j] * out[k - j];
    out[k] = s / d0;
  }
  return out;
}

}  // namespace

PrincipalPartTable partial_fractions(const UnivariateRational& r) {
  PrincipalPartTable table;
  const Polynomial& num = r.num();
  const Polynomial& den = r.den();
  table.polynomial_part = num.divmod(den).first;
  if (den.degree() < 1) return table;

  const auto clusters = root_clusters(den);
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    const auto& [pole, order] = clusters[j];
    // den / (z - pole)^order rebuilt from the other clusters
    Polynomial rest(den.leading());
    for (std::size_t l = 0; l < clusters.size(); ++l) {
      if (l == j) continue;
      rest *= Polynomial(CVector{-clusters[l].center, 1.0}).pow(static_cast<unsigned>(clusters[l].multiplicity));
    }
    const CVector g = series_quotient(num.taylor_shift(pole), rest.taylor_shift(pole),
                                      static_cast<std::size_t>(order));
    PrincipalPart part{pole, order, CVector(static_cast<std::size_t>(order))};
    for (int k = 1; k <= order; ++k) part.coefficients[static_cast<std::size_t>(k - 1)] = g[static_cast<std::size_t>(order - k)];
    table.parts.push_back(std::move(part));
  }
  return table;
}

PrincipalPartTable partial_fractions(const UnivariateRational& r, const Region& region) {
  PrincipalPartTable all = partial_fractions(r);
  PrincipalPartTable inside;
  inside.polynomial_part = all.polynomial_part;
  for (auto& part : all.parts) {
    if (region.boundary_distance(part.pole) < kBoundaryPoleTol)
      throw MathError("pole on boundary at " + format_complex(part.pole));
    if (region.contains(part.pole)) inside.parts.push_back(std::move(part));
  }
  return inside;
}

UnivariateRational recombine(const PrincipalPartTable& table) {
  // common denominator Π (z - p_j)^{m_j}
  Polynomial den(1.0);
  for (const auto& part : table.parts)
    den *= Polynomial(CVector{-part.pole, 1.0}).pow(static_cast<unsigned>(part.order));
  Polynomial num = table.polynomial_part * den;
  for (const auto& part : table.parts) {
    Polynomial others(1.0);
    for (const auto& q : table.parts)
      if (&q != &part) others *= Polynomial(CVector{-q.pole, 1.0}).pow(static_cast<unsigned>(q.order));
    // a_k (z-p)^{m-k} for k = 1..m
    const Polynomial lin(CVector{-part.pole, 1.0});
    Polynomial local;
    for (int k = 1; k <= part.order; ++k)
      local += part.coefficients[static_cast<std::size_t>(k - 1)] * lin.pow(static_cast<unsigned>(part.order - k));
    num += local * others;
  }
  return UnivariateRational::unreduced(std::move(num), std::move(den));
}

cplx residue_sum(const UnivariateRational& r, const Region& region) {
  cplx s{};
  for (const auto& part : partial_fractions(r, region).parts) s += part.residue();
  return s;
}

double max_coefficient(const PrincipalPartTable& table) {
  double m = 0.0;
  for (const auto& part : table.parts)
    for (const auto& a : part.coefficients) m = std::max(m, std::abs(a));
  return m;
}

}  // namespace qdpot
