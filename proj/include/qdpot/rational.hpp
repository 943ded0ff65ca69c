#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qdpot/common.hpp"

namespace qdpot {

/// Dense polynomial with complex coefficients, lowest power first.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(CVector coefficients);
  Polynomial(cplx constant);  // NOLINT(google-explicit-constructor)

  static Polynomial monomial(std::size_t degree, cplx coefficient = 1.0);
  /// lead · Π (z - r_k)
  static Polynomial from_roots(const CVector& roots, cplx lead = 1.0);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const CVector& coefficients() const { return c_; }
  cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx{}; }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }
  double norm() const;  // max |c_k|

  cplx operator()(cplx z) const;
  Polynomial derivative() const;
  /// Coefficients of p(z + center) in powers of z.
  Polynomial taylor_shift(cplx center) const;
  /// f*(z): conjugated coefficients.
  Polynomial conj_coefficients() const;
  /// Drops leading coefficients below rel_tol · norm().
  Polynomial trimmed(double rel_tol) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(cplx s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return *this * cplx(-1.0); }

  /// Euclidean division; throws MathError on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  /// Synthetic division by (z - r), remainder discarded.
  Polynomial deflate(cplx r) const;

  Polynomial pow(unsigned n) const;

 private:
  void trim();
  CVector c_;
};

/// Companion-matrix eigenvalues followed by Newton polishing.
CVector roots(const Polynomial& p);

struct RootCluster {
  cplx center;
  int multiplicity;
};

/// Base pole clustering tolerance.
inline constexpr double kClusterTol = 1e-7;

/// Merges roots r of p that are numerically one multiple root.  A group of
/// m roots (m ≤ 6) is accepted when it lies within ten times the roundoff
/// scatter radius of an m-fold root of p, or within 1e-7·max(1, |center|).
std::vector<RootCluster> cluster_roots(const Polynomial& p, const CVector& r,
                                       double base_tol = kClusterTol);

/// Roots of p grouped into clusters; each m-fold center is refined by
/// Newton's method on p^{(m-1)}, where it is a simple root.
std::vector<RootCluster> root_clusters(const Polynomial& p);

/// num/den in lowest terms with a monic denominator.
class UnivariateRational {
 public:
  UnivariateRational() : num_(), den_(1.0) {}
  UnivariateRational(Polynomial num);  // NOLINT(google-explicit-constructor)
  UnivariateRational(cplx constant) : UnivariateRational(Polynomial(constant)) {}  // NOLINT
  UnivariateRational(Polynomial num, Polynomial den);

  /// No common-factor removal; only the denominator is made monic.
  static UnivariateRational unreduced(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  cplx operator()(cplx z) const;
  UnivariateRational derivative() const;
  UnivariateRational conj_coefficients() const;

  friend UnivariateRational operator+(const UnivariateRational& a, const UnivariateRational& b);
  friend UnivariateRational operator-(const UnivariateRational& a, const UnivariateRational& b);
  friend UnivariateRational operator*(const UnivariateRational& a, const UnivariateRational& b);
  friend UnivariateRational operator/(const UnivariateRational& a, const UnivariateRational& b);
  UnivariateRational operator-() const;

  /// max coefficient difference after both are normalized.
  double distance(const UnivariateRational& o) const;

 private:
  void normalize(bool reduce);
  Polynomial num_;
  Polynomial den_;
};

/// Σ c_{ij} z^i w^j; coefficients indexed [z-power][w-power].
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<CVector> coefficients);
  BivariatePolynomial(cplx constant);  // NOLINT(google-explicit-constructor)

  static BivariatePolynomial in_z(const Polynomial& p);
  static BivariatePolynomial in_w(const Polynomial& p);

  bool is_zero() const { return c_.empty(); }
  int degree_z() const { return static_cast<int>(c_.size()) - 1; }
  int degree_w() const;
  const std::vector<CVector>& coefficients() const { return c_; }
  cplx coefficient(std::size_t i, std::size_t j) const;
  double norm() const;

  cplx operator()(cplx z, cplx w) const;
  /// Coefficient polynomial in z of w^j.
  Polynomial w_coefficient(std::size_t j) const;
  /// (z, w) -> conj-coefficients with z and w exchanged, so that
  /// swap_conj(P)(z, conj z) = conj(P(z, conj z)).
  BivariatePolynomial swap_conj() const;
  BivariatePolynomial partial_z() const;
  BivariatePolynomial partial_w() const;

  BivariatePolynomial& operator+=(const BivariatePolynomial& o);
  BivariatePolynomial& operator-=(const BivariatePolynomial& o);
  BivariatePolynomial& operator*=(cplx s);
  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a -= b; }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(BivariatePolynomial a, cplx s) { return a *= s; }

 private:
  void trim();
  std::vector<CVector> c_;
};

/// R(z, w) = num/den.  On a boundary w stands for conj(z); after
/// extension it stands for the Schwarz function S(z).
class BivariateRational {
 public:
  BivariateRational() : num_(), den_(1.0) {}
  BivariateRational(BivariatePolynomial num);  // NOLINT(google-explicit-constructor)
  BivariateRational(cplx constant) : BivariateRational(BivariatePolynomial(constant)) {}  // NOLINT
  BivariateRational(BivariatePolynomial num, BivariatePolynomial den);

  static BivariateRational z();
  static BivariateRational w();
  static BivariateRational in_z(const UnivariateRational& r);
  static BivariateRational in_w(const UnivariateRational& r);

  const BivariatePolynomial& num() const { return num_; }
  const BivariatePolynomial& den() const { return den_; }

  cplx operator()(cplx z, cplx w) const;
  /// R(z, conj z)
  cplx on_boundary(cplx z) const { return (*this)(z, std::conj(z)); }
  BivariateRational swap_conj() const;
  BivariateRational partial_z() const;
  BivariateRational partial_w() const;
  BivariateRational pow(unsigned n) const;

  friend BivariateRational operator+(const BivariateRational& a, const BivariateRational& b);
  friend BivariateRational operator-(const BivariateRational& a, const BivariateRational& b);
  friend BivariateRational operator*(const BivariateRational& a, const BivariateRational& b);
  friend BivariateRational operator/(const BivariateRational& a, const BivariateRational& b);
  BivariateRational operator-() const;

 private:
  void normalize();
  BivariatePolynomial num_;
  BivariatePolynomial den_;
};

/// R(z, s(z)) in lowest terms.  Throws MathError("degenerate substitution")
/// when the substituted denominator vanishes identically.
UnivariateRational substitute_w(const BivariateRational& r, const UnivariateRational& s);

/// Human-readable form, e.g. "(2 z) / (z^2 - 1)".
std::string to_string(const Polynomial& p, const std::string& var = "z");
std::string to_string(const UnivariateRational& r);
std::string to_string(const BivariateRational& r);
std::string format_complex(cplx c);

}  // namespace qdpot
