#include "qdpot/geometry.hpp"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace qdpot {

namespace {

constexpr double kMinSpeed = 1e-10;

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("bad number in domain name: '" + s + "'");
  return v;
}

}  // namespace

BoundaryCurve BoundaryCurve::circle(cplx center, double radius, Orientation orientation) {
  if (!(radius > 0.0)) throw InputError("circle radius must be positive");
  BoundaryCurve c;
  c.kind_ = CurveKind::circle;
  c.orientation_ = orientation;
  c.center_ = center;
  c.radius_ = radius;
  c.modes_ = {{0, center}, {1, cplx(radius, 0.0)}};
  return c;
}

BoundaryCurve BoundaryCurve::polynomial_image(CVector coefficients, Orientation orientation) {
  while (!coefficients.empty() && coefficients.back() == cplx(0.0)) coefficients.pop_back();
  if (coefficients.size() < 2) throw InputError("polynomial-image curve needs degree >= 1");
  BoundaryCurve c;
  c.kind_ = CurveKind::polynomial_image;
  c.orientation_ = orientation;
  c.poly_ = coefficients;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    if (coefficients[k] != cplx(0.0)) c.modes_.emplace_back(static_cast<int>(k), coefficients[k]);
  return c;
}

BoundaryCurve BoundaryCurve::fourier(std::vector<std::pair<int, cplx>> modes, Orientation orientation) {
  if (modes.empty()) throw InputError("fourier curve needs at least one mode");
  BoundaryCurve c;
  c.kind_ = CurveKind::fourier;
  c.orientation_ = orientation;
  c.modes_ = std::move(modes);
  return c;
}

BoundaryCurve BoundaryCurve::with_orientation(Orientation o) const {
  BoundaryCurve c = *this;
  c.orientation_ = o;
  return c;
}

cplx BoundaryCurve::point(double t) const {
  const double s = orientation_ == Orientation::positive ? t : -t;
  cplx z{};
  for (const auto& [k, c] : modes_) z += c * std::polar(1.0, k * s);
  return z;
}

cplx BoundaryCurve::derivative(double t) const {
  const double sign = orientation_ == Orientation::positive ? 1.0 : -1.0;
  const double s = sign * t;
  cplx dz{};
  for (const auto& [k, c] : modes_) dz += c * kI * static_cast<double>(k) * std::polar(1.0, k * s);
  return sign * dz;
}

double BoundaryCurve::min_speed(std::size_t samples) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i)
    m = std::min(m, std::abs(derivative(2.0 * kPi * static_cast<double>(i) / samples)));
  return m;
}

std::vector<BoundaryCurve> DomainSpec::curves() const {
  std::vector<BoundaryCurve> out;
  out.reserve(holes.size() + 1);
  out.push_back(outer.with_orientation(Orientation::positive));
  for (const auto& h : holes) out.push_back(h.with_orientation(Orientation::negative));
  return out;
}

namespace {

// winding number of a single curve about z, by a fine trapezoid sum
double curve_winding(const BoundaryCurve& c, cplx z, std::size_t samples = 2048) {
  cplx sum{};
  const double dt = 2.0 * kPi / samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = dt * i;
    sum += c.derivative(t) / (c.point(t) - z);
  }
  return (sum * dt / (2.0 * kPi * kI)).real();
}

}  // namespace

void validate(const DomainSpec& domain) {
  const auto curves = domain.curves();
  for (std::size_t k = 0; k < curves.size(); ++k)
    if (curves[k].min_speed() < kMinSpeed)
      throw InputError("curve " + std::to_string(k) + " is not immersed (|z'| vanishes)");

  constexpr std::size_t samples = 512;
  std::vector<CVector> pts(curves.size());
  for (std::size_t k = 0; k < curves.size(); ++k)
    for (std::size_t i = 0; i < samples; ++i)
      pts[k].push_back(curves[k].point(2.0 * kPi * i / samples));
  for (std::size_t a = 0; a < curves.size(); ++a)
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& p : pts[a])
        for (const auto& q : pts[b]) dmin = std::min(dmin, std::abs(p - q));
      if (!(dmin > 0.0) || dmin < 1e-8)
        throw InputError("curves " + std::to_string(a) + " and " + std::to_string(b) + " intersect");
    }

  // curves must lie inside the outer curve
  for (std::size_t k = 1; k < curves.size(); ++k)
    if (std::abs(curve_winding(curves[0], pts[k][0]) - 1.0) > 0.5)
      throw InputError("hole " + std::to_string(k - 1) + " is not inside the outer curve");

  if (domain.base_points.size() != domain.holes.size())
    throw InputError("need exactly one base point per hole");
  for (std::size_t j = 0; j < domain.holes.size(); ++j) {
    const auto& b = domain.base_points[j];
    if (std::abs(curve_winding(domain.holes[j], b)) < 0.5)
      throw InputError("base point " + std::to_string(j) + " is not inside its hole");
  }
  if (domain.szego_point) {
    const cplx a = *domain.szego_point;
    double w = curve_winding(curves[0], a);
    for (std::size_t k = 1; k < curves.size(); ++k) w += curve_winding(curves[k], a);
    if (std::abs(w - 1.0) > 0.5) throw InputError("Szego point is not inside the domain");
  }
}

double BoundaryGrid::parameter_step() const {
  return 2.0 * kPi / static_cast<double>(nodes_per_curve);
}

double BoundaryGrid::length() const {
  double s = 0.0;
  for (double d : ds) s += d;
  return s;
}

BoundaryGrid build_grid(const DomainSpec& domain, std::size_t n) {
  if (n < 16 || n % 2 != 0) throw InputError("nodes per curve must be even and >= 16");
  const auto curves = domain.curves();
  BoundaryGrid g;
  g.nodes_per_curve = n;
  g.curve_count = curves.size();
  const double dt = 2.0 * kPi / static_cast<double>(n);
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = dt * static_cast<double>(i);
      const cplx dz = c.derivative(t);
      const double speed = std::abs(dz);
      if (speed < kMinSpeed) throw InputError("curve is not immersed: |z'(t)| below 1e-10");
      g.t.push_back(t);
      g.z.push_back(c.point(t));
      g.velocity.push_back(dz);
      g.tangent.push_back(dz / speed);
      g.ds.push_back(speed * dt);
    }
  }
  return g;
}

cplx winding_number(const BoundaryGrid& grid, cplx z) {
  cplx sum{};
  for (std::size_t j = 0; j < grid.size(); ++j)
    sum += grid.tangent[j] * grid.ds[j] / (grid.z[j] - z);
  return sum / (2.0 * kPi * kI);
}

std::pair<double, std::size_t> nearest_node(const BoundaryGrid& grid, cplx z) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double d = std::abs(grid.z[j] - z);
    if (d < best) {
      best = d;
      idx = j;
    }
  }
  return {best, idx};
}

Location locate(const BoundaryGrid& grid, cplx z) {
  const auto [d, j] = nearest_node(grid, z);
  if (d < kNearBoundaryFactor * grid.ds[j]) return Location::near_boundary;
  const double w = winding_number(grid, z).real();
  return std::abs(w - 1.0) < 0.5 ? Location::inside : Location::outside;
}

double distance_to_curve(const BoundaryCurve& curve, cplx z) {
  constexpr std::size_t samples = 1024;
  double best = std::numeric_limits<double>::infinity();
  double tbest = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    const double d = std::abs(curve.point(t) - z);
    if (d < best) {
      best = d;
      tbest = t;
    }
  }
  // golden-section refinement on the bracketing interval
  double lo = tbest - 2.0 * kPi / samples, hi = tbest + 2.0 * kPi / samples;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double t) { return std::abs(curve.point(t) - z); };
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo); f1 = f(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo); f2 = f(x2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

CVector spectral_derivative(const BoundaryGrid& grid, const CVector& values) {
  if (values.size() != grid.size()) throw InputError("nodal table size does not match grid");
  const std::size_t n = grid.nodes_per_curve;
  CVector out(values.size());
  CVector buf(n);
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (std::size_t c = 0; c < grid.curve_count; ++c) {
    std::copy_n(values.begin() + grid.offset(c), n, buf.begin());
    fftw_execute(fwd);
    for (std::size_t k = 0; k < n; ++k) {
      // wavenumber; the Nyquist mode has no well-defined derivative
      long m = static_cast<long>(k);
      if (k > n / 2) m -= static_cast<long>(n);
      if (k == n / 2) m = 0;
      buf[k] *= kI * static_cast<double>(m) / static_cast<double>(n);
    }
    fftw_execute(bwd);
    std::copy_n(buf.begin(), n, out.begin() + grid.offset(c));
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  return out;
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::circle: return "circle";
    case CurveKind::polynomial_image: return "polynomial-image";
    case CurveKind::fourier: return "fourier";
  }
  return "unknown";
}

DomainSpec unit_disc() { return disc({0.0, 0.0}, 1.0); }

DomainSpec disc(cplx center, double radius) {
  return DomainSpec{BoundaryCurve::circle(center, radius), {}, {}, std::nullopt};
}

DomainSpec annulus(double inner_radius) {
  if (!(inner_radius > 0.0 && inner_radius < 1.0)) throw InputError("annulus radius must be in (0,1)");
  return DomainSpec{BoundaryCurve::circle({0.0, 0.0}, 1.0),
                    {BoundaryCurve::circle({0.0, 0.0}, inner_radius, Orientation::negative)},
                    {cplx(0.0, 0.0)},
                    std::nullopt};
}

DomainSpec cassini_like() {
  // (1 + 0.25 cos 2t) e^{it}
  return DomainSpec{BoundaryCurve::fourier({{1, 1.0}, {3, 0.125}, {-1, 0.125}}), {}, {}, std::nullopt};
}

DomainSpec ellipse_like(double eps) {
  return DomainSpec{BoundaryCurve::fourier({{1, 1.0}, {-1, eps}}), {}, {}, std::nullopt};
}

DomainSpec perturbed_annulus() {
  return DomainSpec{BoundaryCurve::fourier({{1, 1.0}, {-2, 0.08}, {3, 0.05}}),
                    {BoundaryCurve::circle({0.15, -0.1}, 0.3, Orientation::negative)},
                    {cplx(0.15, -0.1)},
                    std::nullopt};
}

std::optional<DomainSpec> named_domain(const std::string& name) {
  if (name == "unit-disc") return unit_disc();
  if (name == "cassini-like") return cassini_like();
  if (name == "ellipse-like") return ellipse_like();
  if (name == "perturbed-annulus") return perturbed_annulus();
  if (name.rfind("annulus:", 0) == 0) return annulus(parse_double(name.substr(8)));
  if (name.rfind("disc:", 0) == 0) {
    std::vector<double> v;
    std::stringstream ss(name.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_double(item));
    if (v.size() != 3) throw InputError("disc:<re>,<im>,<r> expected");
    return disc({v[0], v[1]}, v[2]);
  }
  return std::nullopt;
}

}  // namespace qdpot
