#include "qdpot/szego.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qdpot/format.hpp"
#include "qdpot/rational.hpp"

namespace qdpot {

namespace {

constexpr double kResidualTol = 1e-10;

Eigen::Map<const Eigen::VectorXcd> as_eigen(const CVector& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

CVector to_cvector(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

const BoundaryGrid& checked_grid(const DomainSpec& domain, std::size_t nodes, BoundaryGrid& out) {
  validate(domain);
  out = build_grid(domain, nodes);
  return out;
}

}  // namespace

Eigen::MatrixXcd assemble_kerzman_stein(const BoundaryGrid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const cplx c = 1.0 / (2.0 * kPi * kI);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx zi = grid.z[static_cast<std::size_t>(i)];
    const cplx ti = grid.tangent[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        a(i, j) = 0.0;
        continue;
      }
      const cplx zj = grid.z[static_cast<std::size_t>(j)];
      const cplx tj = grid.tangent[static_cast<std::size_t>(j)];
      const cplx d = zj - zi;
      if (std::abs(d) < 1e-14) throw MathError("coincident boundary nodes " + std::to_string(i) + " and " + std::to_string(j));
      a(i, j) = c * tj / d - std::conj(c * ti / (-d));
    }
  }
  return a;
}

cplx interior_eval(const BoundaryGrid& grid, const CVector& values, cplx z) {
  switch (locate(grid, z)) {
    case Location::near_boundary:
      throw NearBoundaryError("point " + format_pair(z) + " is within 5 node spacings of the boundary");
    case Location::outside:
      throw InputError("point " + format_pair(z) + " is outside the domain");
    case Location::inside:
      break;
  }
  cplx num{}, den{};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const cplx w = grid.velocity[j] / (grid.z[j] - z);
    num += values[j] * w;
    den += w;
  }
  return num / den;
}

CVector garabedian_from_szego(const BoundaryGrid& grid, const CVector& szego) {
  CVector l(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) l[i] = kI * std::conj(szego[i]) / grid.tangent[i];
  return l;
}

CVector szego_rhs(const BoundaryGrid& grid, cplx a) {
  CVector g(grid.size());
  const cplx c = 1.0 / (2.0 * kPi * kI);
  for (std::size_t i = 0; i < grid.size(); ++i)
    g[i] = c * std::conj(grid.tangent[i]) / (std::conj(a) - std::conj(grid.z[i]));
  return g;
}

cplx default_base_point(const DomainSpec& domain, const BoundaryGrid& grid) {
  cplx centroid{};
  for (std::size_t i = 0; i < grid.nodes_per_curve; ++i) centroid += grid.z[i];
  centroid /= static_cast<double>(grid.nodes_per_curve);
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (std::size_t i = 0; i < grid.nodes_per_curve; ++i) {
    xmin = std::min(xmin, grid.z[i].real()), xmax = std::max(xmax, grid.z[i].real());
    ymin = std::min(ymin, grid.z[i].imag()), ymax = std::max(ymax, grid.z[i].imag());
  }
  const double diam = std::max(xmax - xmin, ymax - ymin);
  if (locate(grid, centroid) == Location::inside && nearest_node(grid, centroid).first > 0.2 * diam) return centroid;
  // farthest-from-boundary interior sample
  constexpr int m = 48;
  cplx best = centroid;
  double best_d = -1.0;
  for (int i = 1; i < m; ++i)
    for (int j = 1; j < m; ++j) {
      const cplx p(xmin + (xmax - xmin) * i / m, ymin + (ymax - ymin) * j / m);
      if (locate(grid, p) != Location::inside) continue;
      const double d = nearest_node(grid, p).first;
      if (d > best_d + 1e-12) best_d = d, best = p;
    }
  if (best_d < 0.0) throw InputError("no interior sample point found for the Szegő base point in " +
                                     std::to_string(domain.connectivity()) + "-connected domain");
  return best;
}

SzegoSystem::SzegoSystem(DomainSpec domain, std::size_t nodes_per_curve, std::optional<cplx> a)
    : domain_(std::move(domain)) {
  checked_grid(domain_, nodes_per_curve, grid_);
  kernel_ = assemble_kerzman_stein(grid_);
  factor();

  const std::optional<cplx> chosen = a ? a : domain_.szego_point;
  if (chosen) {
    if (locate(grid_, *chosen) != Location::inside)
      throw InputError("Szegő base point " + format_pair(*chosen) + " is not well inside the domain");
    solve_base_point(*chosen);
    find_zeros();
    return;
  }
  const cplx base = default_base_point(domain_, grid_);
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  cplx candidate = base;
  for (int attempt = 0;; ++attempt) {
    try {
      solve_base_point(candidate);
      find_zeros();
      return;
    } catch (const MathError&) {
      if (attempt == 5) throw;
    }
    do {
      candidate = base + cplx(u(rng), u(rng));
    } while (std::abs(candidate - base) > 0.1 || locate(grid_, candidate) != Location::inside);
    ++repicks_;
  }
}

void SzegoSystem::factor() {
  const auto n = kernel_.rows();
  Eigen::MatrixXcd m = -kernel_;
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) *= grid_.ds[static_cast<std::size_t>(j)];
  m += Eigen::MatrixXcd::Identity(n, n);
  lu_.compute(m);
  const double rc = lu_.rcond();
  if (!(rc > 1e-14)) throw MathError("singular Kerzman-Stein system (degenerate grid)");
  condition_ = 1.0 / rc;
}

CVector SzegoSystem::solve(const CVector& rhs) const {
  return to_cvector(lu_.solve(as_eigen(rhs)));
}

CVector SzegoSystem::solve_szego(cplx b) const {
  const CVector g = szego_rhs(grid_, b);
  return solve(g);
}

void SzegoSystem::solve_base_point(cplx a) {
  a_ = a;
  const CVector g = szego_rhs(grid_, a);
  szego_ = solve(g);
  Eigen::VectorXcd ws = as_eigen(szego_);
  for (std::size_t j = 0; j < grid_.size(); ++j) ws[static_cast<Eigen::Index>(j)] *= grid_.ds[j];
  const Eigen::VectorXcd r = as_eigen(szego_) - kernel_ * ws - as_eigen(g);
  residual_ = r.norm() / as_eigen(g).norm();
  if (residual_ > kResidualTol) throw MathError("Szegő solve residual " + format_double(residual_) + " exceeds 1e-10");
  garabedian_ = garabedian_from_szego(grid_, szego_);
  garabedian_smooth_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i)
    garabedian_smooth_[i] = garabedian_[i] - 1.0 / (2.0 * kPi * (grid_.z[i] - a));
}

CVector SzegoSystem::complex_derivative(const CVector& values) const {
  CVector d = spectral_derivative(grid_, values);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] /= grid_.velocity[i];
  return d;
}

void SzegoSystem::find_zeros() {
  const std::size_t expected = domain_.connectivity() - 1;
  const CVector ds_dt = spectral_derivative(grid_, szego_);
  const double h = grid_.parameter_step();
  const cplx c = h / (2.0 * kPi * kI);
  // power sums Σ z_k^p of the zeros, p = 0..expected
  CVector sums(expected + 1, cplx{});
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const cplx q = c * ds_dt[i] / szego_[i];
    cplx zp = 1.0;
    for (std::size_t p = 0; p <= expected; ++p) {
      sums[p] += q * zp;
      zp *= grid_.z[i];
    }
  }
  zero_count_ = sums[0].real();
  zeros_.clear();
  if (std::abs(sums[0] - static_cast<double>(expected)) > 0.01)
    throw MathError("Szegő kernel zero count " + format_double(zero_count_) + " differs from " +
                    std::to_string(expected) + "; choose a different base point");
  if (expected == 0) return;

  // Newton identities: elementary symmetric polynomials from power sums
  CVector e(expected + 1, cplx{});
  e[0] = 1.0;
  for (std::size_t k = 1; k <= expected; ++k) {
    cplx s{};
    for (std::size_t i = 1; i <= k; ++i) s += ((i % 2) ? 1.0 : -1.0) * e[k - i] * sums[i];
    e[k] = s / static_cast<double>(k);
  }
  CVector coeffs(expected + 1);
  for (std::size_t k = 0; k <= expected; ++k) coeffs[expected - k] = ((k % 2) ? -1.0 : 1.0) * e[k];
  const CVector guesses = roots(Polynomial(coeffs));

  const CVector dS = complex_derivative(szego_);
  for (cplx z : guesses) {
    if (locate(grid_, z) != Location::inside)
      throw MathError("Szegő kernel zero near " + format_pair(z) + " is not well inside; choose a different base point");
    for (int it = 0; it < 30; ++it) {
      const cplx step = interior(szego_, z) / interior(dS, z);
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    if (std::abs(interior(dS, z)) <= 1e-8)
      throw MathError("Szegő kernel zero at " + format_pair(z) + " is not simple; choose a different base point");
    for (cplx other : zeros_)
      if (std::abs(other - z) < 1e-6) throw MathError("clustered Szegő kernel zeros; choose a different base point");
    zeros_.push_back(z);
  }
}

CVector SzegoSystem::cauchy_boundary(const CVector& values) const {
  const CVector dv = complex_derivative(values);
  const double h = grid_.parameter_step();
  const cplx c = h / (2.0 * kPi * kI);
  CVector out(values.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    cplx s = dv[i] * grid_.velocity[i];
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      if (j == i) continue;
      s += (values[j] - values[i]) * grid_.velocity[j] / (grid_.z[j] - grid_.z[i]);
    }
    out[i] = values[i] + c * s;
  }
  return out;
}

CVector SzegoSystem::adjoint_cauchy_boundary(const CVector& values) const {
  // C*u = u - conj(C(conj(u T))) conj(T)
  CVector w(values.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::conj(values[i] * grid_.tangent[i]);
  const CVector cw = cauchy_boundary(w);
  CVector out(values.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = values[i] - std::conj(cw[i] * grid_.tangent[i]);
  return out;
}

// P = C (I + A)^{-1} = (I - A)^{-1} C*, so one factorization serves both
CVector SzegoSystem::project(const CVector& values) const { return solve(adjoint_cauchy_boundary(values)); }

cplx SzegoSystem::szego_at(cplx z) const { return interior(szego_, z); }

cplx SzegoSystem::garabedian_at(cplx z) const {
  if (std::abs(z - a_) < 1e-14) throw MathError("Garabedian kernel pole at the base point");
  return interior(garabedian_smooth_, z) + 1.0 / (2.0 * kPi * (z - a_));
}

cplx SzegoSystem::ahlfors(cplx z) const {
  // S / L with L = 1/(2π(z-a)) + ℓ, rewritten to stay finite at z = a
  const cplx d = 2.0 * kPi * (z - a_);
  return szego_at(z) * d / (1.0 + d * interior(garabedian_smooth_, z));
}

CVector solve_szego(const SzegoSystem& system, cplx a) { return system.solve_szego(a); }
std::vector<cplx> szego_zeros(const SzegoSystem& system) { return system.zeros(); }
CVector szego_projection(const SzegoSystem& system, const CVector& values) { return system.project(values); }
cplx ahlfors_map(const SzegoSystem& system, cplx z) { return system.ahlfors(z); }

}  // namespace qdpot
