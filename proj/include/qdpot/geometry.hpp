#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdpot/common.hpp"

namespace qdpot {

enum class CurveKind { circle, polynomial_image, fourier };
enum class Orientation { positive, negative };

/// A smooth 2π-periodic closed curve z(t).
///
/// Every kind is stored internally as a finite Fourier series
/// z(t) = Σ c_k e^{ikt}; a circle is c + r e^{it} and a polynomial image
/// f(e^{it}) has only non-negative modes.  Negative orientation traverses
/// the same trace as z(-t).
class BoundaryCurve {
 public:
  static BoundaryCurve circle(cplx center, double radius,
                              Orientation orientation = Orientation::positive);
  static BoundaryCurve polynomial_image(CVector coefficients,
                                        Orientation orientation = Orientation::positive);
  static BoundaryCurve fourier(std::vector<std::pair<int, cplx>> modes,
                               Orientation orientation = Orientation::positive);

  CurveKind kind() const { return kind_; }
  Orientation orientation() const { return orientation_; }
  BoundaryCurve with_orientation(Orientation o) const;

  cplx point(double t) const;
  cplx derivative(double t) const;

  // circle data (meaningful for kind() == circle)
  cplx center() const { return center_; }
  double radius() const { return radius_; }
  // polynomial-image coefficients (meaningful for kind() == polynomial_image)
  const CVector& coefficients() const { return poly_; }
  const std::vector<std::pair<int, cplx>>& modes() const { return modes_; }

  /// Minimum of |z'(t)| over a fine sample.
  double min_speed(std::size_t samples = 4096) const;

 private:
  BoundaryCurve() = default;
  CurveKind kind_ = CurveKind::fourier;
  Orientation orientation_ = Orientation::positive;
  std::vector<std::pair<int, cplx>> modes_;
  cplx center_{};
  double radius_ = 0.0;
  CVector poly_;
};

/// A bounded domain: one outer curve and zero or more holes.
struct DomainSpec {
  BoundaryCurve outer;
  std::vector<BoundaryCurve> holes;
  std::vector<cplx> base_points;  // one per hole, strictly inside it
  std::optional<cplx> szego_point;

  std::size_t connectivity() const { return holes.size() + 1; }
  /// outer first, then holes; orientation normalized (outer positive, holes negative).
  std::vector<BoundaryCurve> curves() const;
};

/// Checks the domain invariants: immersion, disjoint curves, base points
/// inside their holes and the Szegő point (if set) inside the domain.
/// Throws InputError on violation.
void validate(const DomainSpec& domain);

struct BoundaryGrid {
  std::size_t nodes_per_curve = 0;
  std::size_t curve_count = 0;
  std::vector<double> t;
  CVector z;
  CVector tangent;    // unit tangent T
  CVector velocity;   // z'(t)
  std::vector<double> ds;

  std::size_t size() const { return z.size(); }
  std::size_t curve_of(std::size_t i) const { return i / nodes_per_curve; }
  std::size_t offset(std::size_t curve) const { return curve * nodes_per_curve; }
  double parameter_step() const;
  double length() const;
};

/// Equispaced-parameter trapezoid grid, N nodes per curve (N ≥ 16, even).
BoundaryGrid build_grid(const DomainSpec& domain, std::size_t nodes_per_curve);

enum class Location { inside, outside, near_boundary };

inline constexpr double kNearBoundaryFactor = 5.0;

/// Winding-number classification; points within 5 local node spacings of
/// the boundary are reported as near_boundary.
Location locate(const BoundaryGrid& grid, cplx z);

/// (1/2πi) Σ T_j ds_j / (z_j - z) over the whole grid.
cplx winding_number(const BoundaryGrid& grid, cplx z);

/// Distance from z to the nearest node and that node's index.
std::pair<double, std::size_t> nearest_node(const BoundaryGrid& grid, cplx z);

/// Distance from z to the curve trace (sampled, then refined by Newton).
double distance_to_curve(const BoundaryCurve& curve, cplx z);

/// Trigonometric differentiation d/dt of periodic nodal values, curve by curve.
CVector spectral_derivative(const BoundaryGrid& grid, const CVector& values);

std::string to_string(CurveKind kind);

// Named domains used by the CLI and the test suites.
DomainSpec unit_disc();
DomainSpec disc(cplx center, double radius);
DomainSpec annulus(double inner_radius);  // inner_radius < |z| < 1
/// Elongated smooth Fourier curve r(t) = 1 + 0.25 cos 2t.
DomainSpec cassini_like();
/// Domain bounded by z(t) = e^{it} + eps e^{-it} (an ellipse).
DomainSpec ellipse_like(double eps = 0.2);
/// Perturbed outer curve with an off-center circular hole.
DomainSpec perturbed_annulus();

/// Resolves "unit-disc", "annulus:<r>", "cassini-like", "ellipse-like",
/// "perturbed-annulus", "disc:<re>,<im>,<r>".
std::optional<DomainSpec> named_domain(const std::string& name);

}  // namespace qdpot
