#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "qdpot/szego.hpp"

namespace qdpot {

/// u = h + conj(H) + Σ c_j ln|z - b_j| with h = P(S_a φ)/S_a and
/// H = P(L_a conj φ)/L_a, φ = ψ - Σ c_j ln|z - b_j|.
/// Keeps a pointer to the system, which must outlive the solution.
struct DirichletSolution {
  const SzegoSystem* system = nullptr;
  CVector data;       // ψ at the nodes
  CVector corrected;  // φ at the nodes
  std::vector<cplx> base_points;
  CVector constants;  // c_j
  CVector h;          // boundary table of h
  CVector H;          // boundary table of H
  CVector h_prime;    // boundary table of h'
  /// max |u - ψ| at the nodes
  double boundary_residual = 0.0;
  /// max_k |P(S_a φ)(z_k)| / max |P(S_a φ)| over the zeros z_k of S_a
  double zero_residual = 0.0;

  /// Exact node (table lookup) or interior point (Cauchy evaluation).
  cplx operator()(cplx z) const;
  cplx h_at(cplx z) const;
  cplx H_at(cplx z) const;
  /// Σ c_j ln|z - b_j|
  cplx log_part(cplx z) const;
  /// Wirtinger ∂u/∂z = h'(z) + Σ c_j / (2(z - b_j))
  cplx dz(cplx z) const;
};

/// Base points default to the domain's hole base points.
DirichletSolution dirichlet_solve(const SzegoSystem& system, const CVector& data,
                                  std::vector<cplx> base_points = {});

/// Nodal samples of a function of z.
template <class F>
CVector sample(const BoundaryGrid& grid, F&& f) {
  CVector v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.z[i]);
  return v;
}

/// Indicator data of boundary component k (0 = outer).
CVector indicator(const BoundaryGrid& grid, std::size_t k);

struct BoundaryDecomposition {
  CVector f;  // P(S_a u)/S_a
  CVector F;  // P(L_a conj u)/L_a
  double residual = 0.0;     // max |f + conj F - u|
  double zero_residual = 0.0;  // relative size of P(S_a u) at the zeros of S_a
  double tolerance = 0.0;
  bool ok() const { return residual <= tolerance && zero_residual <= tolerance; }
};

BoundaryDecomposition decompose_boundary(const SzegoSystem& system, const CVector& u, double tolerance = 1e-7);

/// Green's function G(z, w) = -ln|z - w| + u_w(z), u_w the Dirichlet
/// solution with data ln|ζ - w|, and its w-derivatives.  One solve per
/// source point and order, cached; the cache is safe for concurrent use.
class GreenEvaluator {
 public:
  explicit GreenEvaluator(const SzegoSystem& system) : system_(system) {}

  const SzegoSystem& system() const { return system_; }

  double operator()(cplx z, cplx w) const;
  /// G^{(m)}(z, w) = ∂^m G/∂w^m = (m-1)!/2 (z - w)^{-m} - v_m(z), v_m the
  /// Dirichlet solution with data (m-1)!/2 (ζ - w)^{-m}.
  cplx w_derivative(cplx z, cplx w, int m = 1) const;
  /// p(z, w_i) = -(1/π) Re(∂G/∂w (z, w_i) n_i), n_i = -i T_i the outer normal.
  double poisson(cplx z, std::size_t node) const;

  /// Dirichlet solution for data ln|ζ - w|.
  const DirichletSolution& log_solution(cplx w) const;

 private:
  const DirichletSolution& cached(cplx w, int order) const;

  const SzegoSystem& system_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<double, double, int>, std::unique_ptr<DirichletSolution>> cache_;
};

double green(const GreenEvaluator& g, cplx z, cplx w);
cplx green_w_derivative(const GreenEvaluator& g, cplx z, cplx w, int m = 1);
double poisson_kernel(const GreenEvaluator& g, cplx z, std::size_t node);

/// ω_k: data 1 on component k, 0 elsewhere.
DirichletSolution harmonic_measure(const SzegoSystem& system, std::size_t k);
/// F_k'(z) = 2 ∂ω_k/∂z
cplx harmonic_measure_gradient(const DirichletSolution& omega, cplx z);
/// λ_k(z) = (1/S(z,z)) Σ_{γ_k} |S(z, w_j)|² ds_j with S(z,z) the full sum.
double nonharmonic_measure(const SzegoSystem& system, std::size_t k, cplx z);

}  // namespace qdpot
