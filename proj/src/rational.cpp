#include "qdpot/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qdpot/format.hpp"

namespace qdpot {

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(CVector coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(cplx constant) {
  if (constant != cplx(0.0)) c_.push_back(constant);
}

Polynomial Polynomial::monomial(std::size_t degree, cplx coefficient) {
  CVector c(degree + 1, cplx{});
  c[degree] = coefficient;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(const CVector& roots, cplx lead) {
  Polynomial p(lead);
  for (const auto& r : roots) p *= Polynomial(CVector{-r, 1.0});
  return p;
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

double Polynomial::norm() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  CVector d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(cplx center) const {
  // repeated synthetic division (Horner's scheme for all derivatives)
  CVector a = c_;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) a[j - 1] += center * a[j];
  return Polynomial(std::move(a));
}

Polynomial Polynomial::conj_coefficients() const {
  CVector c = c_;
  for (auto& x : c) x = std::conj(x);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * norm();
  CVector c = c_;
  while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
  return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  CVector r(c_.size() + o.c_.size() - 1, cplx{});
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw MathError("polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial{}, *this};
  CVector rem = c_;
  const std::size_t dn = divisor.c_.size();
  CVector q(c_.size() - dn + 1, cplx{});
  const cplx lead = divisor.leading();
  for (std::size_t k = q.size(); k-- > 0;) {
    const cplx f = rem[k + dn - 1] / lead;
    q[k] = f;
    for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= f * divisor.c_[j];
    rem[k + dn - 1] = 0.0;
  }
  rem.resize(dn - 1);
  return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::deflate(cplx r) const {
  if (c_.size() <= 1) return {};
  CVector q(c_.size() - 1);
  cplx acc = c_.back();
  for (std::size_t k = c_.size() - 1; k-- > 0;) {
    q[k] = acc;
    acc = c_[k] + acc * r;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial r(1.0);
  for (unsigned k = 0; k < n; ++k) r *= *this;
  return r;
}

CVector roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  const auto& c = p.coefficients();
  // zero roots are factored out exactly
  std::size_t zeros = 0;
  while (c[zeros] == cplx(0.0)) ++zeros;
  CVector out(zeros, cplx{});
  const int m = n - static_cast<int>(zeros);
  if (m == 0) return out;
  if (m == 1) {
    out.push_back(-c[zeros] / c[zeros + 1]);
    return out;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
  const cplx lead = c.back();
  for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) comp(i, m - 1) = -c[zeros + i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw MathError("companion eigenvalue solve failed");
  const Polynomial dp = p.derivative();
  for (int i = 0; i < m; ++i) {
    cplx r = es.eigenvalues()(i);
    // Newton polish, kept only while the residual improves
    for (int it = 0; it < 3; ++it) {
      const cplx f = p(r), df = dp(r);
      if (std::abs(df) == 0.0) break;
      const cplx next = r - f / df;
      if (!(std::abs(p(next)) < std::abs(f))) break;
      r = next;
    }
    out.push_back(r);
  }
  return out;
}

namespace {

constexpr int kMaxScatterMultiplicity = 6;

// Expected displacement of the roots of an m-fold root at c under
// coefficient roundoff: |p^{(m)}(c)/m!| δ^m ≈ ε Σ|c_k||c|^k.
double scatter_radius(const std::vector<Polynomial>& derivs, const Polynomial& p, cplx c, int m) {
  double noise = 0.0, pw = 1.0;
  for (const auto& ck : p.coefficients()) {
    noise += std::abs(ck) * pw;
    pw *= std::abs(c);
  }
  noise *= 4.0 * std::numeric_limits<double>::epsilon() * (p.degree() + 1);
  double fact = 1.0;
  for (int k = 2; k <= m; ++k) fact *= k;
  const double lead = std::abs(derivs[static_cast<std::size_t>(m)](c)) / fact;
  if (lead == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(noise / lead, 1.0 / m);
}

}  // namespace

std::vector<RootCluster> cluster_roots(const Polynomial& p, const CVector& r, double base_tol) {
  std::vector<Polynomial> derivs{p};
  for (int k = 1; k <= kMaxScatterMultiplicity; ++k) derivs.push_back(derivs.back().derivative());
  std::vector<bool> used(r.size(), false);
  std::vector<RootCluster> out;
  // multiple roots first: the m-1 nearest neighbours of a root together with
  // it form an m-fold root if they all sit within the m-fold scatter radius
  for (int m = std::min<int>(kMaxScatterMultiplicity, static_cast<int>(r.size())); m >= 2; --m) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (used[i]) continue;
      std::vector<std::pair<double, std::size_t>> nb;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (j != i && !used[j]) nb.emplace_back(std::abs(r[j] - r[i]), j);
      if (static_cast<int>(nb.size()) < m - 1) continue;
      std::partial_sort(nb.begin(), nb.begin() + (m - 1), nb.end());
      cplx centroid = r[i];
      for (int k = 0; k < m - 1; ++k) centroid += r[nb[k].second];
      centroid /= static_cast<double>(m);
      const double tol = std::max(base_tol * std::max(1.0, std::abs(centroid)),
                                  10.0 * scatter_radius(derivs, p, centroid, m));
      bool tight = std::abs(r[i] - centroid) <= tol;
      for (int k = 0; k < m - 1 && tight; ++k) tight = std::abs(r[nb[k].second] - centroid) <= tol;
      if (!tight) continue;
      used[i] = true;
      for (int k = 0; k < m - 1; ++k) used[nb[k].second] = true;
      out.push_back({centroid, m});
    }
  }
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!used[i]) out.push_back({r[i], 1});
  // exact or near-exact coincidences beyond the scatter model
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < out.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < out.size() && !merged; ++j) {
        const double tol = base_tol * std::max(1.0, std::abs(out[i].center));
        if (std::abs(out[i].center - out[j].center) > tol) continue;
        const double mi = out[i].multiplicity, mj = out[j].multiplicity;
        out[i].center = (mi * out[i].center + mj * out[j].center) / (mi + mj);
        out[i].multiplicity += out[j].multiplicity;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
  }
  return out;
}

std::vector<RootCluster> root_clusters(const Polynomial& p) {
  auto cl = cluster_roots(p, roots(p));
  for (auto& c : cl) {
    if (c.multiplicity < 2) continue;
    Polynomial d = p;
    for (int k = 1; k < c.multiplicity; ++k) d = d.derivative();
    const Polynomial dd = d.derivative();
    cplx x = c.center;
    for (int it = 0; it < 4; ++it) {
      const cplx f = d(x), df = dd(x);
      if (std::abs(df) == 0.0) break;
      const cplx next = x - f / df;
      if (std::abs(next - c.center) > 1e-3 * std::max(1.0, std::abs(c.center))) break;
      x = next;
    }
    c.center = x;
  }
  return cl;
}

// -------------------------------------------------------- UnivariateRational

namespace {

constexpr double kTrimTol = 1e-14;

// a shared factor is recognised when both polynomials place an m-fold
// root cluster within their combined roundoff scatter of each other
double match_tolerance(const Polynomial& a, const Polynomial& b, cplx c, int m) {
  std::vector<Polynomial> da{a}, db{b};
  for (int k = 1; k <= m; ++k) {
    da.push_back(da.back().derivative());
    db.push_back(db.back().derivative());
  }
  const double ra = scatter_radius(da, a, c, m), rb = scatter_radius(db, b, c, m);
  const double s = std::isfinite(ra) && std::isfinite(rb) ? std::max(ra, rb) : 0.0;
  return std::max(kClusterTol * std::max(1.0, std::abs(c)), 10.0 * s);
}

}  // namespace

UnivariateRational::UnivariateRational(Polynomial num) : num_(std::move(num)), den_(1.0) {
  normalize(false);
}

UnivariateRational::UnivariateRational(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize(true);
}

UnivariateRational UnivariateRational::unreduced(Polynomial num, Polynomial den) {
  UnivariateRational r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize(false);
  return r;
}

void UnivariateRational::normalize(bool reduce) {
  den_ = den_.trimmed(kTrimTol);
  if (den_.is_zero()) throw MathError("division by zero rational");
  num_ = num_.trimmed(kTrimTol);
  if (num_.is_zero()) {
    den_ = Polynomial(1.0);
    return;
  }
  const cplx lead = den_.leading();
  den_ *= 1.0 / lead;
  num_ *= 1.0 / lead;
  if (!reduce || den_.degree() < 1 || num_.degree() < 1) return;

  auto dc = root_clusters(den_);
  auto nc = root_clusters(num_);
  for (auto& d : dc) {
    for (auto& n : nc) {
      if (n.multiplicity == 0 || d.multiplicity == 0) continue;
      const int k = std::min(n.multiplicity, d.multiplicity);
      const double tol = match_tolerance(num_, den_, n.center, std::max(n.multiplicity, d.multiplicity));
      if (std::abs(n.center - d.center) > tol) continue;
      for (int i = 0; i < k; ++i) {
        num_ = num_.deflate(n.center);
        den_ = den_.deflate(d.center);
      }
      n.multiplicity -= k;
      d.multiplicity -= k;
    }
  }
  if (num_.is_zero()) den_ = Polynomial(1.0);
}

cplx UnivariateRational::operator()(cplx z) const { return num_(z) / den_(z); }

UnivariateRational UnivariateRational::derivative() const {
  return UnivariateRational(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

UnivariateRational UnivariateRational::conj_coefficients() const {
  return unreduced(num_.conj_coefficients(), den_.conj_coefficients());
}

UnivariateRational operator+(const UnivariateRational& a, const UnivariateRational& b) {
  if (a.den_.degree() == 0 && b.den_.degree() == 0) return UnivariateRational(a.num_ + b.num_);
  return UnivariateRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

UnivariateRational operator-(const UnivariateRational& a, const UnivariateRational& b) {
  if (a.den_.degree() == 0 && b.den_.degree() == 0) return UnivariateRational(a.num_ - b.num_);
  return UnivariateRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

UnivariateRational operator*(const UnivariateRational& a, const UnivariateRational& b) {
  return UnivariateRational(a.num_ * b.num_, a.den_ * b.den_);
}

UnivariateRational operator/(const UnivariateRational& a, const UnivariateRational& b) {
  if (b.is_zero()) throw MathError("division by zero rational");
  return UnivariateRational(a.num_ * b.den_, a.den_ * b.num_);
}

UnivariateRational UnivariateRational::operator-() const { return unreduced(-num_, den_); }

double UnivariateRational::distance(const UnivariateRational& o) const {
  double d = 0.0;
  const auto diff = [&d](const Polynomial& p, const Polynomial& q) {
    const std::size_t n = std::max(p.coefficients().size(), q.coefficients().size());
    for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(p[k] - q[k]));
  };
  diff(num_, o.num_);
  diff(den_, o.den_);
  return d;
}

// ------------------------------------------------------- BivariatePolynomial

BivariatePolynomial::BivariatePolynomial(std::vector<CVector> coefficients) : c_(std::move(coefficients)) {
  trim();
}

BivariatePolynomial::BivariatePolynomial(cplx constant) {
  if (constant != cplx(0.0)) c_.push_back({constant});
}

BivariatePolynomial BivariatePolynomial::in_z(const Polynomial& p) {
  std::vector<CVector> c;
  for (const auto& x : p.coefficients()) c.push_back({x});
  return BivariatePolynomial(std::move(c));
}

BivariatePolynomial BivariatePolynomial::in_w(const Polynomial& p) {
  return BivariatePolynomial(std::vector<CVector>{p.coefficients()});
}

void BivariatePolynomial::trim() {
  for (auto& row : c_)
    while (!row.empty() && row.back() == cplx(0.0)) row.pop_back();
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

int BivariatePolynomial::degree_w() const {
  int d = -1;
  for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

cplx BivariatePolynomial::coefficient(std::size_t i, std::size_t j) const {
  if (i >= c_.size() || j >= c_[i].size()) return {};
  return c_[i][j];
}

double BivariatePolynomial::norm() const {
  double m = 0.0;
  for (const auto& row : c_)
    for (const auto& x : row) m = std::max(m, std::abs(x));
  return m;
}

cplx BivariatePolynomial::operator()(cplx z, cplx w) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    cplx inner{};
    for (auto jt = it->rbegin(); jt != it->rend(); ++jt) inner = inner * w + *jt;
    acc = acc * z + inner;
  }
  return acc;
}

Polynomial BivariatePolynomial::w_coefficient(std::size_t j) const {
  CVector p(c_.size(), cplx{});
  for (std::size_t i = 0; i < c_.size(); ++i) p[i] = coefficient(i, j);
  return Polynomial(std::move(p));
}

BivariatePolynomial BivariatePolynomial::swap_conj() const {
  const int dw = degree_w();
  std::vector<CVector> r(static_cast<std::size_t>(dw + 1), CVector(c_.size(), cplx{}));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_[i].size(); ++j) r[j][i] = std::conj(c_[i][j]);
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial BivariatePolynomial::partial_z() const {
  if (c_.size() <= 1) return {};
  std::vector<CVector> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    r[i - 1] = c_[i];
    for (auto& x : r[i - 1]) x *= static_cast<double>(i);
  }
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial BivariatePolynomial::partial_w() const {
  std::vector<CVector> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 1; j < c_[i].size(); ++j) {
      r[i].resize(j);
      r[i][j - 1] = c_[i][j] * static_cast<double>(j);
    }
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    if (o.c_[i].size() > c_[i].size()) c_[i].resize(o.c_[i].size());
    for (std::size_t j = 0; j < o.c_[i].size(); ++j) c_[i][j] += o.c_[i][j];
  }
  trim();
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    if (o.c_[i].size() > c_[i].size()) c_[i].resize(o.c_[i].size());
    for (std::size_t j = 0; j < o.c_[i].size(); ++j) c_[i][j] -= o.c_[i][j];
  }
  trim();
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(cplx s) {
  for (auto& row : c_)
    for (auto& x : row) x *= s;
  trim();
  return *this;
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t nz = a.c_.size() + b.c_.size() - 1;
  const std::size_t nw = static_cast<std::size_t>(a.degree_w() + b.degree_w() + 1);
  std::vector<CVector> r(nz, CVector(nw, cplx{}));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < a.c_[i].size(); ++j)
      for (std::size_t k = 0; k < b.c_.size(); ++k)
        for (std::size_t l = 0; l < b.c_[k].size(); ++l) r[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
  return BivariatePolynomial(std::move(r));
}

// --------------------------------------------------------- BivariateRational

BivariateRational::BivariateRational(BivariatePolynomial num) : num_(std::move(num)), den_(1.0) {}

BivariateRational::BivariateRational(BivariatePolynomial num, BivariatePolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void BivariateRational::normalize() {
  if (den_.is_zero()) throw MathError("bivariate rational with zero denominator");
  if (num_.is_zero()) {
    den_ = BivariatePolynomial(1.0);
    return;
  }
  // scale so the largest denominator coefficient has modulus one
  const double s = den_.norm();
  num_ *= 1.0 / s;
  den_ *= 1.0 / s;
}

BivariateRational BivariateRational::z() {
  return BivariateRational(BivariatePolynomial(std::vector<CVector>{{}, {1.0}}));
}

BivariateRational BivariateRational::w() {
  return BivariateRational(BivariatePolynomial(std::vector<CVector>{{0.0, 1.0}}));
}

BivariateRational BivariateRational::in_z(const UnivariateRational& r) {
  return BivariateRational(BivariatePolynomial::in_z(r.num()), BivariatePolynomial::in_z(r.den()));
}

BivariateRational BivariateRational::in_w(const UnivariateRational& r) {
  return BivariateRational(BivariatePolynomial::in_w(r.num()), BivariatePolynomial::in_w(r.den()));
}

cplx BivariateRational::operator()(cplx z, cplx w) const { return num_(z, w) / den_(z, w); }

BivariateRational BivariateRational::swap_conj() const {
  return BivariateRational(num_.swap_conj(), den_.swap_conj());
}

BivariateRational BivariateRational::partial_z() const {
  return BivariateRational(num_.partial_z() * den_ - num_ * den_.partial_z(), den_ * den_);
}

BivariateRational BivariateRational::partial_w() const {
  return BivariateRational(num_.partial_w() * den_ - num_ * den_.partial_w(), den_ * den_);
}

BivariateRational BivariateRational::pow(unsigned n) const {
  BivariateRational r(1.0);
  for (unsigned k = 0; k < n; ++k) r = r * *this;
  return r;
}

namespace {
bool is_constant(const BivariatePolynomial& p) {
  return p.degree_z() <= 0 && p.degree_w() <= 0;
}
}  // namespace

BivariateRational operator+(const BivariateRational& a, const BivariateRational& b) {
  if (is_constant(a.den_) && is_constant(b.den_)) {
    const cplx da = a.den_.coefficient(0, 0), db = b.den_.coefficient(0, 0);
    return BivariateRational(a.num_ * (1.0 / da) + b.num_ * (1.0 / db));
  }
  if (a.num_.is_zero()) return b;
  if (b.num_.is_zero()) return a;
  return BivariateRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

BivariateRational operator-(const BivariateRational& a, const BivariateRational& b) { return a + (-b); }

BivariateRational operator*(const BivariateRational& a, const BivariateRational& b) {
  return BivariateRational(a.num_ * b.num_, a.den_ * b.den_);
}

BivariateRational operator/(const BivariateRational& a, const BivariateRational& b) {
  if (b.num_.is_zero()) throw MathError("division by zero rational");
  return BivariateRational(a.num_ * b.den_, a.den_ * b.num_);
}

BivariateRational BivariateRational::operator-() const {
  BivariateRational r = *this;
  r.num_ *= -1.0;
  return r;
}

// ------------------------------------------------------------ substitution

UnivariateRational substitute_w(const BivariateRational& r, const UnivariateRational& s) {
  const Polynomial& p = s.num();
  const Polynomial& q = s.den();
  const int d = std::max(r.num().degree_w(), r.den().degree_w());
  // Σ_j P_j(z) p^j q^{d-j}; scale accumulates term sizes for the degeneracy test
  auto clear = [&](const BivariatePolynomial& b, double& scale) {
    Polynomial acc;
    for (int j = 0; j <= b.degree_w(); ++j) {
      const Polynomial pj = b.w_coefficient(static_cast<std::size_t>(j));
      if (pj.is_zero()) continue;
      const Polynomial term = pj * p.pow(static_cast<unsigned>(j)) * q.pow(static_cast<unsigned>(d - j));
      scale += term.norm();
      acc += term;
    }
    return acc;
  };
  double num_scale = 0.0, den_scale = 0.0;
  Polynomial num = clear(r.num(), num_scale);
  Polynomial den = clear(r.den(), den_scale);
  if (den.norm() <= 1e-13 * den_scale)
    throw MathError("degenerate substitution: denominator vanishes identically");
  // cancellation residue below roundoff is dropped
  if (num.norm() <= 1e-14 * num_scale) num = Polynomial{};
  return UnivariateRational(std::move(num), std::move(den));
}

// ----------------------------------------------------------------- printing

std::string format_complex(cplx c) {
  const bool re = c.real() != 0.0, im = c.imag() != 0.0;
  if (!im) return format_double(c.real());
  if (!re) return format_double(c.imag()) + "i";
  std::string s = "(" + format_double(c.real());
  s += c.imag() < 0 ? " - " : " + ";
  s += format_double(std::abs(c.imag())) + "i)";
  return s;
}

std::string to_string(const Polynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string s;
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == cplx(0.0)) continue;
    if (!s.empty()) s += " + ";
    const bool unit = c[k] == cplx(1.0);
    if (!unit || k == 0) s += format_complex(c[k]);
    if (k > 0) {
      if (!unit) s += " ";
      s += var;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

std::string to_string(const UnivariateRational& r) {
  if (r.den().degree() == 0) return to_string(r.num());
  // factored denominator
  std::string den;
  for (const auto& cl : root_clusters(r.den())) {
    if (!den.empty()) den += " ";
    den += "(z - " + format_complex(cl.center) + ")";
    if (cl.multiplicity > 1) den += "^" + std::to_string(cl.multiplicity);
  }
  return "(" + to_string(r.num()) + ") / " + den;
}

std::string to_string(const BivariateRational& r) {
  auto poly = [](const BivariatePolynomial& b) {
    if (b.is_zero()) return std::string("0");
    std::string s;
    for (std::size_t i = 0; i < b.coefficients().size(); ++i)
      for (std::size_t j = 0; j < b.coefficients()[i].size(); ++j) {
        const cplx c = b.coefficient(i, j);
        if (c == cplx(0.0)) continue;
        if (!s.empty()) s += " + ";
        s += format_complex(c);
        if (i > 0) s += " z" + (i > 1 ? "^" + std::to_string(i) : std::string());
        if (j > 0) s += " zbar" + (j > 1 ? "^" + std::to_string(j) : std::string());
      }
    return s;
  };
  const auto& d = r.den();
  if (d.degree_z() == 0 && d.degree_w() == 0) {
    const cplx c = d.coefficient(0, 0);
    if (c == cplx(1.0)) return poly(r.num());
    return "(" + poly(r.num()) + ") / " + format_complex(c);
  }
  return "(" + poly(r.num()) + ") / (" + poly(d) + ")";
}

}  // namespace qdpot
