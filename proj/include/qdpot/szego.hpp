#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qdpot/geometry.hpp"

namespace qdpot {

/// A(z_i, z_j) = H(z_i, z_j) - conj(H(z_j, z_i)) with the Cauchy kernel
/// H(z, w) = (1/2πi) T(w)/(w - z).  The diagonal is the smooth limit, which
/// is zero.  Throws MathError on coincident nodes.
Eigen::MatrixXcd assemble_kerzman_stein(const BoundaryGrid& grid);

/// Barycentric Cauchy integral of nodal values of a function holomorphic in
/// the domain.  Throws NearBoundaryError within 5 node spacings of the
/// boundary and InputError outside the domain.
cplx interior_eval(const BoundaryGrid& grid, const CVector& values, cplx z);

/// L_a = i conj(S_a) / T at every node.
CVector garabedian_from_szego(const BoundaryGrid& grid, const CVector& szego);

/// Discretized Kerzman–Stein system (I - A W) with W = diag(ds), factored
/// once; carries the Szegő and Garabedian tables for one base point a.
/// With A = C - C*, the Szegő kernel solves (I - A) S_a = g_a.
class SzegoSystem {
 public:
  /// Without `a`, the domain's szego_point or the default rule is used.
  SzegoSystem(DomainSpec domain, std::size_t nodes_per_curve, std::optional<cplx> a = std::nullopt);

  const DomainSpec& domain() const { return domain_; }
  const BoundaryGrid& grid() const { return grid_; }
  const Eigen::MatrixXcd& kernel() const { return kernel_; }
  cplx base_point() const { return a_; }
  /// Number of base-point re-picks used by the default rule.
  int repicks() const { return repicks_; }

  const CVector& szego() const { return szego_; }
  const CVector& garabedian() const { return garabedian_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  /// Argument-principle count of zeros of S_a.
  double zero_count() const { return zero_count_; }
  /// Relative residual of the solve for S_a.
  double residual() const { return residual_; }
  /// 1-norm condition estimate of I - A W.
  double condition_estimate() const { return condition_; }

  /// Boundary table of S(·, b) for another interior point b.
  CVector solve_szego(cplx b) const;
  /// Solves (I - A W) x = rhs.
  CVector solve(const CVector& rhs) const;
  /// Boundary values (from inside) of the Cauchy transform of nodal data.
  CVector cauchy_boundary(const CVector& values) const;
  CVector adjoint_cauchy_boundary(const CVector& values) const;
  /// Szegő projection P = (I - A)^{-1} C* at the nodes.
  CVector project(const CVector& values) const;
  /// d/dz of boundary values of a holomorphic function, (d/dt) / z'(t).
  CVector complex_derivative(const CVector& values) const;

  cplx interior(const CVector& values, cplx z) const { return interior_eval(grid_, values, z); }
  cplx szego_at(cplx z) const;
  /// L(z, a), including its pole 1/(2π(z - a)).
  cplx garabedian_at(cplx z) const;
  cplx ahlfors(cplx z) const;

 private:
  void factor();
  void solve_base_point(cplx a);
  void find_zeros();

  DomainSpec domain_;
  BoundaryGrid grid_;
  Eigen::MatrixXcd kernel_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_ = 0.0;
  cplx a_{};
  int repicks_ = 0;
  CVector szego_;
  CVector garabedian_;
  CVector garabedian_smooth_;  // L_a - 1/(2π(z - a))
  std::vector<cplx> zeros_;
  double zero_count_ = 0.0;
  double residual_ = 0.0;
};

/// Right-hand side g_a(z) = (1/2πi) conj(T(z)) / (conj(a) - conj(z)).
CVector szego_rhs(const BoundaryGrid& grid, cplx a);

/// Default base point: the node centroid when it is well inside, otherwise
/// the interior sample farthest from the boundary.
cplx default_base_point(const DomainSpec& domain, const BoundaryGrid& grid);

// Free-function entry points.
CVector solve_szego(const SzegoSystem& system, cplx a);
std::vector<cplx> szego_zeros(const SzegoSystem& system);
CVector szego_projection(const SzegoSystem& system, const CVector& values);
cplx ahlfors_map(const SzegoSystem& system, cplx z);

}  // namespace qdpot
