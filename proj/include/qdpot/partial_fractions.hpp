#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qdpot/geometry.hpp"
#include "qdpot/rational.hpp"

namespace qdpot {

struct DiscRegion {
  cplx center{0.0, 0.0};
  double radius = 1.0;
};

/// Either a disc or a general domain; used to select poles.
class Region {
 public:
  Region(DiscRegion d) : region_(d) {}  // NOLINT(google-explicit-constructor)
  Region(DomainSpec d) : region_(std::move(d)) {}  // NOLINT(google-explicit-constructor)

  static Region unit_disc() { return Region(DiscRegion{}); }

  bool contains(cplx p) const;
  double boundary_distance(cplx p) const;

 private:
  std::variant<DiscRegion, DomainSpec> region_;
};

/// Pole closer than this to the region boundary is rejected.
inline constexpr double kBoundaryPoleTol = 1e-8;

struct PrincipalPart {
  cplx pole;
  int order;
  /// coefficients[k-1] multiplies (z - pole)^{-k}, k = 1..order
  CVector coefficients;

  cplx operator()(cplx z) const;
  cplx residue() const { return coefficients.front(); }
};

struct PrincipalPartTable {
  Polynomial polynomial_part;
  std::vector<PrincipalPart> parts;
};

/// Full decomposition r = polynomial part + Σ principal parts over all poles.
PrincipalPartTable partial_fractions(const UnivariateRational& r);

/// Principal parts at poles inside the region only.  A pole within 1e-8 of
/// the region boundary throws MathError("pole on boundary").
PrincipalPartTable partial_fractions(const UnivariateRational& r, const Region& region);

/// Rebuilds polynomial part + Σ principal parts as one rational.
UnivariateRational recombine(const PrincipalPartTable& table);

/// Σ residues of r at poles strictly inside the region.
cplx residue_sum(const UnivariateRational& r, const Region& region);

/// Largest |a_{j,k}| in the table (0 for an empty table).
double max_coefficient(const PrincipalPartTable& table);

}  // namespace qdpot
