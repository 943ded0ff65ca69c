#include "qdpot/potential.hpp"

#include <algorithm>
#include <cmath>

#include "qdpot/format.hpp"

namespace qdpot {

namespace {

constexpr double kNodeMatch = 1e-13;

double max_abs(const CVector& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

void require_interior(const BoundaryGrid& grid, cplx z, const char* what) {
  switch (locate(grid, z)) {
    case Location::near_boundary:
      throw NearBoundaryError(std::string(what) + " " + format_pair(z) + " is within 5 node spacings of the boundary");
    case Location::outside:
      throw InputError(std::string(what) + " " + format_pair(z) + " is outside the domain");
    case Location::inside:
      break;
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

CVector indicator(const BoundaryGrid& grid, std::size_t k) {
  if (k >= grid.curve_count) throw InputError("boundary component " + std::to_string(k) + " does not exist");
  CVector v(grid.size(), 0.0);
  for (std::size_t i = grid.offset(k); i < grid.offset(k) + grid.nodes_per_curve; ++i) v[i] = 1.0;
  return v;
}

cplx DirichletSolution::log_part(cplx z) const {
  cplx s{};
  for (std::size_t j = 0; j < constants.size(); ++j) s += constants[j] * std::log(std::abs(z - base_points[j]));
  return s;
}

cplx DirichletSolution::h_at(cplx z) const { return system->interior(h, z); }
cplx DirichletSolution::H_at(cplx z) const { return system->interior(H, z); }

cplx DirichletSolution::operator()(cplx z) const {
  const auto [d, i] = nearest_node(system->grid(), z);
  if (d < kNodeMatch) return h[i] + std::conj(H[i]) + log_part(z);
  return h_at(z) + std::conj(H_at(z)) + log_part(z);
}

cplx DirichletSolution::dz(cplx z) const {
  cplx s = system->interior(h_prime, z);
  for (std::size_t j = 0; j < constants.size(); ++j) s += constants[j] / (2.0 * (z - base_points[j]));
  return s;
}

DirichletSolution dirichlet_solve(const SzegoSystem& system, const CVector& data, std::vector<cplx> base_points) {
  const BoundaryGrid& grid = system.grid();
  if (data.size() != grid.size())
    throw InputError("boundary data has " + std::to_string(data.size()) + " values, grid has " + std::to_string(grid.size()));
  const std::size_t holes = system.domain().connectivity() - 1;
  if (base_points.empty()) base_points = system.domain().base_points;
  if (base_points.size() != holes)
    throw InputError("need " + std::to_string(holes) + " hole base points, got " + std::to_string(base_points.size()));

  const CVector& S = system.szego();
  const CVector& L = system.garabedian();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (std::abs(S[i]) < 1e-12) throw MathError("Szegő kernel vanishes on the boundary; inconsistent zero set");
  const auto numerator = [&](const CVector& phi) {
    CVector v(phi.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = S[i] * phi[i];
    return system.project(v);
  };

  DirichletSolution sol;
  sol.system = &system;
  sol.data = data;
  sol.base_points = base_points;

  CVector num = numerator(data);
  // φ may project to (nearly) zero, so the raw numerator also sets the scale
  double scale = max_abs(num);
  std::vector<CVector> logs(holes);
  if (holes > 0) {
    const auto& zeros = system.zeros();
    if (zeros.size() != holes) throw MathError("Szegő kernel zeros are not available; re-pick a");
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(holes), static_cast<Eigen::Index>(holes));
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(holes));
    std::vector<CVector> log_nums(holes);
    for (std::size_t j = 0; j < holes; ++j) {
      logs[j] = sample(grid, [&](cplx z) { return cplx(std::log(std::abs(z - base_points[j]))); });
      log_nums[j] = numerator(logs[j]);
    }
    for (std::size_t k = 0; k < holes; ++k) {
      rhs[static_cast<Eigen::Index>(k)] = system.interior(num, zeros[k]);
      for (std::size_t j = 0; j < holes; ++j)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = system.interior(log_nums[j], zeros[k]);
    }
    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    if (lu.rank() < static_cast<Eigen::Index>(holes) || lu.rcond() < 1e-12)
      throw MathError("singular system for the logarithmic constants; re-pick a");
    const Eigen::VectorXcd c = lu.solve(rhs);
    sol.constants.assign(c.data(), c.data() + c.size());
    for (std::size_t j = 0; j < holes; ++j)
      for (std::size_t i = 0; i < num.size(); ++i) num[i] -= sol.constants[j] * log_nums[j][i];
  }

  sol.corrected = data;
  for (std::size_t j = 0; j < holes; ++j)
    for (std::size_t i = 0; i < grid.size(); ++i) sol.corrected[i] -= sol.constants[j] * logs[j][i];

  sol.h.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) sol.h[i] = num[i] / S[i];
  CVector anti(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) anti[i] = L[i] * std::conj(sol.corrected[i]);
  sol.H = system.project(anti);
  for (std::size_t i = 0; i < grid.size(); ++i) sol.H[i] /= L[i];
  sol.h_prime = system.complex_derivative(sol.h);

  scale = std::max({scale, max_abs(num), 1e-300});
  for (cplx zk : system.zeros()) sol.zero_residual = std::max(sol.zero_residual, std::abs(system.interior(num, zk)) / scale);
  for (std::size_t i = 0; i < grid.size(); ++i)
    sol.boundary_residual = std::max(sol.boundary_residual, std::abs(sol(grid.z[i]) - data[i]));
  return sol;
}

BoundaryDecomposition decompose_boundary(const SzegoSystem& system, const CVector& u, double tolerance) {
  const BoundaryGrid& grid = system.grid();
  if (u.size() != grid.size()) throw InputError("boundary data size does not match the grid");
  const CVector& S = system.szego();
  const CVector& L = system.garabedian();
  CVector su(u.size()), lu(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    su[i] = S[i] * u[i];
    lu[i] = L[i] * std::conj(u[i]);
  }
  BoundaryDecomposition d;
  d.tolerance = tolerance;
  const CVector num = system.project(su);
  d.F = system.project(lu);
  d.f.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    d.f[i] = num[i] / S[i];
    d.F[i] /= L[i];
    d.residual = std::max(d.residual, std::abs(d.f[i] + std::conj(d.F[i]) - u[i]));
  }
  // f has a pole at a zero of S_a unless the numerator vanishes there
  const double scale = std::max(max_abs(num), 1e-300);
  for (cplx zk : system.zeros()) d.zero_residual = std::max(d.zero_residual, std::abs(system.interior(num, zk)) / scale);
  return d;
}

const DirichletSolution& GreenEvaluator::cached(cplx w, int order) const {
  const auto key = std::make_tuple(w.real(), w.imag(), order);
  {
    const std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  }
  const BoundaryGrid& grid = system_.grid();
  CVector data;
  if (order == 0) {
    data = sample(grid, [&](cplx z) { return cplx(std::log(std::abs(z - w))); });
  } else {
    const double f = factorial(order - 1) / 2.0;
    data = sample(grid, [&](cplx z) { return f * std::pow(z - w, -order); });
  }
  auto sol = std::make_unique<DirichletSolution>(dirichlet_solve(system_, data));
  const std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.try_emplace(key, std::move(sol));
  return *it->second;
}

const DirichletSolution& GreenEvaluator::log_solution(cplx w) const {
  require_interior(system_.grid(), w, "source point");
  return cached(w, 0);
}

double GreenEvaluator::operator()(cplx z, cplx w) const {
  if (std::abs(z - w) < 1e-14) throw MathError("Green's function has a logarithmic singularity at z = w");
  const DirichletSolution& u = log_solution(w);
  return -std::log(std::abs(z - w)) + u(z).real();
}

cplx GreenEvaluator::w_derivative(cplx z, cplx w, int m) const {
  if (m < 1) throw InputError("derivative order must be >= 1");
  require_interior(system_.grid(), w, "source point");
  if (std::abs(z - w) < 1e-14) throw MathError("G^(m) has a pole at z = w");
  const DirichletSolution& v = cached(w, m);
  return factorial(m - 1) / 2.0 * std::pow(z - w, -m) - v(z);
}

double GreenEvaluator::poisson(cplx z, std::size_t node) const {
  const BoundaryGrid& grid = system_.grid();
  if (node >= grid.size()) throw InputError("node index out of range");
  const DirichletSolution& u = log_solution(z);
  // G(ζ, z) = -ln|ζ - z| + u_z(ζ); ∂/∂ζ at the boundary node
  const cplx zeta = grid.z[node];
  cplx d = -1.0 / (2.0 * (zeta - z)) + u.h_prime[node];
  for (std::size_t j = 0; j < u.constants.size(); ++j) d += u.constants[j] / (2.0 * (zeta - u.base_points[j]));
  const cplx normal = -kI * grid.tangent[node];
  return -(d * normal).real() / kPi;
}

double green(const GreenEvaluator& g, cplx z, cplx w) { return g(z, w); }
cplx green_w_derivative(const GreenEvaluator& g, cplx z, cplx w, int m) { return g.w_derivative(z, w, m); }
double poisson_kernel(const GreenEvaluator& g, cplx z, std::size_t node) { return g.poisson(z, node); }

DirichletSolution harmonic_measure(const SzegoSystem& system, std::size_t k) {
  return dirichlet_solve(system, indicator(system.grid(), k));
}

cplx harmonic_measure_gradient(const DirichletSolution& omega, cplx z) { return 2.0 * omega.dz(z); }

double nonharmonic_measure(const SzegoSystem& system, std::size_t k, cplx z) {
  const BoundaryGrid& grid = system.grid();
  if (k >= grid.curve_count) throw InputError("boundary component " + std::to_string(k) + " does not exist");
  require_interior(grid, z, "point");
  // |S(z, w_j)| = |S(w_j, z)|, the boundary table with base point z
  const CVector s = system.solve_szego(z);
  double total = 0.0, part = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m = std::norm(s[i]) * grid.ds[i];
    total += m;
    if (grid.curve_of(i) == k) part += m;
  }
  return part / total;
}

}  // namespace qdpot
