#include "qdpot/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qdpot/format.hpp"
#include "qdpot/potential.hpp"

namespace qdpot::io {

namespace {

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

CVector complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of [re, im]");
  CVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_complex(j[i], where + "/" + std::to_string(i)));
  return v;
}

Orientation parse_orientation(const json& j, const std::string& where) {
  const auto it = j.find("orientation");
  if (it == j.end()) return Orientation::positive;
  if (*it == "positive") return Orientation::positive;
  if (*it == "negative") return Orientation::negative;
  throw InputError(where + "/orientation: expected \"positive\" or \"negative\"");
}

BoundaryCurve parse_curve(const json& j, const std::string& where) {
  const json& kind = member(j, "kind", where);
  const Orientation o = parse_orientation(j, where);
  if (kind == "circle") {
    const cplx c = parse_complex(member(j, "center", where), where + "/center");
    const double r = number_at(member(j, "radius", where), where + "/radius");
    if (!(r > 0.0)) throw InputError(where + "/radius: must be positive");
    return BoundaryCurve::circle(c, r, o);
  }
  if (kind == "polynomial_image")
    return BoundaryCurve::polynomial_image(complex_list(member(j, "coefficients", where), where + "/coefficients"), o);
  if (kind == "fourier") {
    const json& modes = member(j, "modes", where);
    if (!modes.is_array()) throw InputError(where + "/modes: expected an array of [k, re, im]");
    std::vector<std::pair<int, cplx>> m;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string at = where + "/modes/" + std::to_string(i);
      const json& e = modes[i];
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer())
        throw InputError(at + ": expected [k, re, im] with integer k");
      m.emplace_back(e[0].get<int>(), cplx(number_at(e[1], at + "/1"), number_at(e[2], at + "/2")));
    }
    return BoundaryCurve::fourier(std::move(m), o);
  }
  throw InputError(where + "/kind: unknown curve kind " + kind.dump());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Recursive descent over BivariateRational.
class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : s_(text) {}

  BivariateRational parse() {
    BivariateRational r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression \"" + s_ + "\", column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '(';
  }

  BivariateRational expr() {
    BivariateRational r = term();
    for (;;) {
      if (accept('+')) r = r + term();
      else if (accept('-')) r = r - term();
      else return r;
    }
  }

  BivariateRational term() {
    BivariateRational r = unary();
    for (;;) {
      if (accept('*')) {
        r = r * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        BivariateRational d = unary();
        if (d.num().is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        r = r / d;
      } else if (starts_primary()) {
        r = r * power();
      } else {
        return r;
      }
    }
  }

  BivariateRational unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  BivariateRational power() {
    BivariateRational base = primary();
    if (!accept('^')) return base;
    skip();
    bool paren = accept('(');
    bool negative = accept('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    unsigned n = 0;
    std::from_chars(s_.data() + start, s_.data() + pos_, n);
    if (n > 64) fail("exponent too large");
    if (paren && !accept(')')) fail("expected ')'");
    BivariateRational p = base.pow(n);
    if (negative) {
      if (p.num().is_zero()) fail("zero raised to a negative power");
      p = BivariateRational(1.0) / p;
    }
    return p;
  }

  BivariateRational primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BivariateRational r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "z") return BivariateRational::z();
      if (id == "zbar" || id == "w") return BivariateRational::w();
      if (id == "i") return BivariateRational(kI);
      if (id == "conj") {
        if (!accept('(')) fail("expected '(' after conj");
        BivariateRational r = expr();
        if (!accept(')')) fail("expected ')'");
        return r.swap_conj();
      }
      pos_ = start;
      fail("unknown name '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  BivariateRational number() {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("bad number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return BivariateRational(cplx(v));
  }

  std::string s_;
  std::size_t pos_ = 0;
};

json coefficient_list(const CVector& c) {
  json a = json::array();
  for (cplx x : c) a.push_back(to_json(x));
  return a;
}

json coefficient_matrix(const BivariatePolynomial& p) {
  json a = json::array();
  for (const auto& row : p.coefficients()) a.push_back(coefficient_list(row));
  return a;
}

double max_abs_diff(const CVector& a, const CVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

cplx parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(where + ": expected [re, im] or a number");
}

cplx parse_point(const std::string& text) {
  const auto comma = text.find(',');
  const auto num = [&](const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("bad point '" + text + "': expected re,im");
    return v;
  };
  if (comma == std::string::npos) return {num(text), 0.0};
  return {num(text.substr(0, comma)), num(text.substr(comma + 1))};
}

DomainSpec parse_domain(const json& j) {
  if (!j.is_object()) throw InputError("domain: expected an object");
  DomainSpec d{parse_curve(member(j, "outer", ""), "/outer"), {}, {}, std::nullopt};
  if (const auto it = j.find("holes"); it != j.end()) {
    if (!it->is_array()) throw InputError("/holes: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) d.holes.push_back(parse_curve((*it)[i], "/holes/" + std::to_string(i)));
  }
  if (const auto it = j.find("base_points"); it != j.end()) {
    const CVector b = complex_list(*it, "/base_points");
    d.base_points.assign(b.begin(), b.end());
  }
  if (const auto it = j.find("szego_point"); it != j.end()) d.szego_point = parse_complex(*it, "/szego_point");
  validate(d);
  return d;
}

DomainSpec load_domain(const std::string& name_or_path) {
  if (auto d = named_domain(name_or_path)) return *d;
  return parse_domain(parse_json_text(read_file(name_or_path), name_or_path));
}

BivariateRational parse_rational(const json& j) {
  if (j.is_string()) return parse_expression(j.get<std::string>());
  if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) return BivariateRational(parse_complex(j, "rational"));
  if (!j.is_object()) throw InputError("rational: expected {\"num\": ..., \"den\": ...} or {\"R\": \"...\"}");
  if (const auto it = j.find("R"); it != j.end()) {
    if (!it->is_string()) throw InputError("/R: expected an expression string");
    return parse_expression(it->get<std::string>());
  }
  const auto poly = [&](const char* key) -> BivariatePolynomial {
    const std::string where = std::string("/") + key;
    const json& c = member(j, key, "rational");
    if (!c.is_array() || c.empty()) throw InputError(where + ": expected a non-empty coefficient array");
    // a list of complex numbers is univariate in z; a list of lists is [z][w]
    if (c[0].is_number() || (c[0].is_array() && !c[0].empty() && c[0][0].is_number())) {
      std::vector<CVector> rows;
      for (cplx x : complex_list(c, where)) rows.push_back({x});
      return BivariatePolynomial(rows);
    }
    std::vector<CVector> rows;
    for (std::size_t i = 0; i < c.size(); ++i) rows.push_back(complex_list(c[i], where + "/" + std::to_string(i)));
    return BivariatePolynomial(rows);
  };
  const BivariatePolynomial num = poly("num");
  const BivariatePolynomial den = j.contains("den") ? poly("den") : BivariatePolynomial(1.0);
  if (den.is_zero()) throw InputError("/den: zero denominator");
  return BivariateRational(num, den);
}

BivariateRational parse_expression(const std::string& text) { return ExpressionParser(text).parse(); }

UnivariateRational as_univariate(const BivariateRational& r) {
  if (r.num().degree_w() > 0 || r.den().degree_w() > 0)
    throw InputError("expected a holomorphic rational in z, got " + to_string(r));
  return {r.num().w_coefficient(0), r.den().w_coefficient(0)};
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" + e.what() + ")");
  }
}

json load_json(const std::string& inline_or_path) {
  const auto first = inline_or_path.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (inline_or_path[first] == '{' || inline_or_path[first] == '['))
    return parse_json_text(inline_or_path, "<inline>");
  return parse_json_text(read_file(inline_or_path), inline_or_path);
}

json to_json(cplx c) { return json::array({c.real(), c.imag()}); }
json to_json(const Polynomial& p) { return coefficient_list(p.coefficients()); }

json to_json(const UnivariateRational& r) {
  return json{{"num", to_json(r.num())}, {"den", to_json(r.den())}, {"text", to_string(r)}};
}

json to_json(const BivariateRational& r) {
  return json{{"num", coefficient_matrix(r.num())}, {"den", coefficient_matrix(r.den())}, {"text", to_string(r)}};
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

bool RunReport::check(const std::string& name, double value, double tolerance) {
  const bool ok = value <= tolerance;
  checks.push_back({name, value, tolerance, ok});
  return ok;
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["domain"] = domain;
  json tol = json::object();
  for (const auto& [k, v] : tolerances) tol[k] = v;
  j["tolerances"] = tol;
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back(json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  j["checks"] = cs;
  j["passed"] = passed();
  j["results"] = results;
  json t = json::object();
  for (const auto& [k, v] : timings_ms) t[k] = v;
  j["timings_ms"] = t;
  return j;
}

double Stopwatch::elapsed_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

void Stopwatch::stop(RunReport& report, const std::string& name) const { report.timings_ms.emplace_back(name, elapsed_ms()); }

std::vector<cplx> cross_validation_probes() {
  std::vector<cplx> p;
  for (int k = 0; k < 20; ++k) p.push_back(std::polar(0.15 + 0.65 * k / 19.0, 2.399963229728653 * k));
  return p;
}

CrossValidation cross_validate_deltas(const SzegoSystem& sys, const BivariateRational& r) {
  const BoundaryGrid& grid = sys.grid();
  const auto& outer = sys.domain().outer;
  if (sys.domain().connectivity() != 1 || outer.kind() != CurveKind::circle || std::abs(outer.center()) > 0.0 ||
      outer.radius() != 1.0)
    throw InputError("cross validation needs the unit disc");
  const CVector data = sample(grid, [&](cplx z) { return r.on_boundary(z); });

  CrossValidation cv;
  const HarmonicRationalForm exact = exact_dirichlet_disc(r);
  const DirichletSolution numeric = dirichlet_solve(sys, data);
  for (cplx z : cross_validation_probes()) cv.dirichlet_delta = std::max(cv.dirichlet_delta, std::abs(exact(z) - numeric(z)));

  const UnivariateRational p = exact_szego_projection_disc(r);
  const CVector exact_p = sample(grid, [&](cplx z) { return p(z); });
  cv.projection_delta = max_abs_diff(exact_p, szego_projection(sys, data));

  cplx trapezoid{};
  for (std::size_t i = 0; i < grid.size(); ++i) trapezoid += data[i] * grid.ds[i];
  cv.integral_delta = std::abs(residue_boundary_integral(r) - trapezoid);
  return cv;
}

RunReport cross_validate(const BivariateRational& r, std::size_t nodes, double tolerance) {
  RunReport report;
  report.command = "cross_validate " + to_string(r);
  report.domain = "unit-disc, N=" + std::to_string(nodes);
  report.tolerances.emplace_back("delta", tolerance);
  const Stopwatch total;
  const SzegoSystem sys(unit_disc(), nodes, cplx(0.0));
  const CrossValidation cv = cross_validate_deltas(sys, r);
  report.check("dirichlet exact vs numeric", cv.dirichlet_delta, tolerance);
  report.check("projection exact vs numeric", cv.projection_delta, tolerance);
  report.check("integral residues vs trapezoid", cv.integral_delta, tolerance);
  total.stop(report, "total");
  return report;
}

}  // namespace qdpot::io
