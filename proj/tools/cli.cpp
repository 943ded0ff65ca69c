#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qdpot/exact.hpp"
#include "qdpot/format.hpp"
#include "qdpot/io.hpp"
#include "qdpot/potential.hpp"
#include "qdpot/szego.hpp"

namespace qdpot::cli {

namespace {

using io::json;
using io::RunReport;

struct Options {
  std::string domain = "unit-disc";
  std::size_t n = 256;
  std::string a;
  double tol = 1e-7;
  std::string out;
  std::string format = "csv";
  std::string report;
  std::string data;
  std::vector<std::string> probes;
  std::string z;
  std::string w;
  std::size_t k = 1;
  int m = 0;
  std::string suite = "disc";
  std::string map;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Result {
  RunReport report;
  std::optional<Table> table;
};

bool is_unit_disc(const DomainSpec& d) {
  return d.connectivity() == 1 && d.outer.kind() == CurveKind::circle && d.outer.center() == cplx(0.0) &&
         d.outer.radius() == 1.0;
}

std::optional<cplx> base_point(const Options& o) {
  if (o.a.empty()) return std::nullopt;
  return io::parse_point(o.a);
}

std::vector<cplx> probes(const Options& o) {
  std::vector<cplx> p;
  for (const auto& s : o.probes) {
    if (!std::filesystem::exists(s)) {
      p.push_back(io::parse_point(s));
      continue;
    }
    std::ifstream in(s);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || std::isalpha(static_cast<unsigned char>(line[0]))) continue;  // header
      try {
        p.push_back(io::parse_point(line));
      } catch (const InputError& e) {
        throw InputError(s + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  return p;
}

// Inline JSON, a JSON file, or an expression.
json data_json(const std::string& text) {
  if (text.empty()) throw InputError("--data is required");
  const auto first = text.find_first_not_of(" \t\r\n");
  if ((first != std::string::npos && (text[first] == '{' || text[first] == '[')) || std::filesystem::exists(text))
    return io::load_json(text);
  return json(text);
}

BivariateRational rational_data(const Options& o) { return io::parse_rational(data_json(o.data)); }

CVector nodal_data(const Options& o, const SzegoSystem& sys) {
  const BoundaryGrid& grid = sys.grid();
  if (o.data == "indicator-outer") return indicator(grid, 0);
  if (o.data == "indicator-inner") {
    if (grid.curve_count != 2) throw InputError("indicator-inner needs a doubly connected domain");
    return indicator(grid, 1);
  }
  if (o.data.rfind("indicator:", 0) == 0) return indicator(grid, static_cast<std::size_t>(std::stoul(o.data.substr(10))));
  const json j = data_json(o.data);
  if (j.is_object() && j.contains("samples")) {
    const json& s = j["samples"];
    if (!s.is_array() || s.size() != grid.size())
      throw InputError("/samples: expected " + std::to_string(grid.size()) + " nodal values");
    CVector v;
    for (std::size_t i = 0; i < s.size(); ++i) v.push_back(io::parse_complex(s[i], "/samples/" + std::to_string(i)));
    return v;
  }
  const BivariateRational r = io::parse_rational(j);
  return sample(grid, [&](cplx z) { return r.on_boundary(z); });
}

RunReport new_report(const std::string& command, const Options& o, const DomainSpec& d) {
  RunReport r;
  r.command = command;
  r.domain = o.domain + ": " + std::to_string(d.connectivity()) + " boundary curve(s), N=" + std::to_string(o.n);
  r.tolerances.emplace_back("tol", o.tol);
  return r;
}

void describe_system(RunReport& r, const SzegoSystem& sys) {
  r.results["base_point"] = io::to_json(sys.base_point());
  json zeros = json::array();
  for (cplx z : sys.zeros()) zeros.push_back(io::to_json(z));
  r.results["szego_zeros"] = zeros;
  r.results["condition_estimate"] = sys.condition_estimate();
  r.results["base_point_repicks"] = sys.repicks();
  r.check("szego residual", sys.residual(), 1e-10);
}

Result cmd_grid(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  const BoundaryGrid g = build_grid(d, o.n);
  Result res{new_report("grid", o, d), Table{{"curve", "t", "re_z", "im_z", "re_T", "im_T", "ds"}, {}}};
  for (std::size_t i = 0; i < g.size(); ++i)
    res.table->rows.push_back({double(g.curve_of(i)), g.t[i], g.z[i].real(), g.z[i].imag(), g.tangent[i].real(),
                               g.tangent[i].imag(), g.ds[i]});
  res.report.results["length"] = g.length();
  return res;
}

Result cmd_szego(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  const io::Stopwatch sw;
  const SzegoSystem sys(d, o.n, base_point(o));
  Result res{new_report("szego", o, d), Table{{"curve", "t", "re_z", "im_z", "re_S", "im_S", "re_L", "im_L"}, {}}};
  sw.stop(res.report, "solve");
  describe_system(res.report, sys);
  const double count = sys.zero_count();
  res.report.check("zero count integrality", std::abs(count - std::round(count)), 0.01);
  const auto& g = sys.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    res.table->rows.push_back({double(g.curve_of(i)), g.t[i], g.z[i].real(), g.z[i].imag(), sys.szego()[i].real(),
                               sys.szego()[i].imag(), sys.garabedian()[i].real(), sys.garabedian()[i].imag()});
  return res;
}

Result cmd_project(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  const SzegoSystem sys(d, o.n, base_point(o));
  const CVector u = nodal_data(o, sys);
  const CVector pu = szego_projection(sys, u);
  Result res{new_report("project", o, d), Table{{"curve", "t", "re_z", "im_z", "re_Pu", "im_Pu"}, {}}};
  const auto& g = sys.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    res.table->rows.push_back({double(g.curve_of(i)), g.t[i], g.z[i].real(), g.z[i].imag(), pu[i].real(), pu[i].imag()});
  if (is_unit_disc(d) && o.data.rfind("indicator", 0) != 0) {
    const json j = data_json(o.data);
    if (!(j.is_object() && j.contains("samples"))) {
      const UnivariateRational p = exact_szego_projection_disc(io::parse_rational(j));
      res.report.results["projection"] = io::to_json(p);
      double delta = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) delta = std::max(delta, std::abs(p(g.z[i]) - pu[i]));
      res.report.check("exact vs numeric projection", delta, o.tol);
    }
  }
  return res;
}

void dirichlet_checks(RunReport& r, const DirichletSolution& sol, double tol) {
  json c = json::array();
  for (cplx x : sol.constants) c.push_back(io::to_json(x));
  r.results["log_constants"] = c;
  r.check("boundary residual", sol.boundary_residual, tol);
  r.check("zero residual", sol.zero_residual, tol);
}

Result cmd_dirichlet(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  const io::Stopwatch sw;
  const SzegoSystem sys(d, o.n, base_point(o));
  const DirichletSolution sol = dirichlet_solve(sys, nodal_data(o, sys));
  Result res{new_report("dirichlet", o, d), Table{{"re_z", "im_z", "re_u", "im_u"}, {}}};
  describe_system(res.report, sys);
  dirichlet_checks(res.report, sol, o.tol);
  for (cplx z : probes(o)) {
    const cplx u = sol(z);
    res.table->rows.push_back({z.real(), z.imag(), u.real(), u.imag()});
  }
  sw.stop(res.report, "total");
  return res;
}

Result cmd_green(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  if (o.z.empty() || o.w.empty()) throw InputError("green needs --z and --w");
  const cplx z = io::parse_point(o.z), w = io::parse_point(o.w);
  const SzegoSystem sys(d, o.n, base_point(o));
  const GreenEvaluator g(sys);
  Result res{new_report("green", o, d), Table{{"re_z", "im_z", "re_w", "im_w", "re_G", "im_G"}, {}}};
  describe_system(res.report, sys);
  const cplx v = o.m == 0 ? cplx(green(g, z, w)) : green_w_derivative(g, z, w, o.m);
  res.report.results["order"] = o.m;
  dirichlet_checks(res.report, g.log_solution(w), o.tol);
  res.table->rows.push_back({z.real(), z.imag(), w.real(), w.imag(), v.real(), v.imag()});
  return res;
}

Result cmd_poisson(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  if (o.z.empty()) throw InputError("poisson needs --z");
  const cplx z = io::parse_point(o.z);
  const SzegoSystem sys(d, o.n, base_point(o));
  const GreenEvaluator g(sys);
  Result res{new_report("poisson", o, d), Table{{"curve", "t", "re_w", "im_w", "p"}, {}}};
  describe_system(res.report, sys);
  const auto& grid = sys.grid();
  double mass = 0.0, lowest = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = poisson_kernel(g, z, i);
    mass += p * grid.ds[i];
    lowest = std::min(lowest, p);
    res.table->rows.push_back({double(grid.curve_of(i)), grid.t[i], grid.z[i].real(), grid.z[i].imag(), p});
  }
  res.report.results["mass"] = mass;
  res.report.results["min"] = lowest;
  res.report.check("unit mass", std::abs(mass - 1.0), std::max(o.tol, 1e-5));
  res.report.check("positivity", lowest > 0.0 ? 0.0 : -lowest, 0.0);
  return res;
}

Result cmd_hmeasure(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  const SzegoSystem sys(d, o.n, base_point(o));
  const DirichletSolution omega = harmonic_measure(sys, o.k);
  Result res{new_report("hmeasure", o, d), Table{{"re_z", "im_z", "omega", "re_dF", "im_dF"}, {}}};
  describe_system(res.report, sys);
  res.report.results["component"] = o.k;
  dirichlet_checks(res.report, omega, o.tol);
  for (cplx z : probes(o)) {
    const cplx f = harmonic_measure_gradient(omega, z);
    res.table->rows.push_back({z.real(), z.imag(), omega(z).real(), f.real(), f.imag()});
  }
  return res;
}

Result cmd_lambda(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  const SzegoSystem sys(d, o.n, base_point(o));
  Result res{new_report("lambda", o, d), Table{{"re_z", "im_z", "lambda"}, {}}};
  res.report.results["component"] = o.k;
  double sum_error = 0.0;
  for (cplx z : probes(o)) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d.connectivity(); ++j) sum += nonharmonic_measure(sys, j, z);
    sum_error = std::max(sum_error, std::abs(sum - 1.0));
    res.table->rows.push_back({z.real(), z.imag(), nonharmonic_measure(sys, o.k, z)});
  }
  res.report.check("sum over components", sum_error, o.tol);
  return res;
}

Result cmd_exact_dirichlet(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  if (!is_unit_disc(d)) throw InputError("exact-dirichlet works on the unit disc only");
  const BivariateRational r = rational_data(o);
  const HarmonicRationalForm f = exact_dirichlet_disc(r);
  Result res{new_report("exact-dirichlet", o, d), std::nullopt};
  res.report.results["data"] = io::to_json(r);
  res.report.results["u"] = io::to_json(f.u);
  res.report.results["h"] = io::to_json(f.holomorphic);
  res.report.results["H"] = io::to_json(f.antiholomorphic);
  res.report.results["extension"] = io::to_json(f.extension);
  double boundary = 0.0;
  for (int i = 0; i < 256; ++i) {
    const cplx z = std::polar(1.0, 2.0 * kPi * i / 256.0);
    boundary = std::max(boundary, std::abs(f(z) - r.on_boundary(z)));
  }
  res.report.check("boundary error", boundary, o.tol);
  res.report.check("residual principal parts", residual_principal_parts(f), o.tol);
  const auto p = probes(o);
  if (!p.empty()) {
    res.table = Table{{"re_z", "im_z", "re_u", "im_u"}, {}};
    for (cplx z : p) {
      const cplx u = f(z);
      res.table->rows.push_back({z.real(), z.imag(), u.real(), u.imag()});
    }
  }
  return res;
}

Result cmd_integrate(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  const BivariateRational r = rational_data(o);
  Result res{new_report("integrate", o, d), Table{{"re", "im"}, {}}};
  const BoundaryGrid g = build_grid(d, o.n);
  cplx trapezoid{};
  for (std::size_t i = 0; i < g.size(); ++i) trapezoid += r.on_boundary(g.z[i]) * g.ds[i];
  cplx value = trapezoid;
  if (is_unit_disc(d)) {
    value = residue_boundary_integral(r);
    res.report.check("residues vs trapezoid", std::abs(value - trapezoid), o.tol);
    res.report.results["method"] = "residues";
  } else {
    res.report.results["method"] = "trapezoid";
  }
  res.report.results["integral"] = io::to_json(value);
  res.table->rows.push_back({value.real(), value.imag()});
  return res;
}

Result cmd_qd_check(const Options& o) {
  const DomainSpec d = io::load_domain(o.domain);
  Result res{new_report("qd-check", o, d), std::nullopt};
  if (!o.data.empty()) {
    if (!is_unit_disc(d)) throw InputError("quadrature identities are checked on the unit disc");
    const QuadratureReport q = verify_quadrature_identity(io::as_univariate(rational_data(o)), o.tol);
    res.report.results["area"] = io::to_json(q.area);
    res.report.results["area_expected"] = io::to_json(q.area_expected);
    res.report.results["arc"] = io::to_json(q.arc);
    res.report.results["arc_expected"] = io::to_json(q.arc_expected);
    res.report.check("area identity", q.area_error(), o.tol);
    res.report.check("arc-length identity", q.arc_error(), o.tol);
  }
  std::optional<SchwarzModel> model;
  if (!o.map.empty()) {
    const json j = io::load_json(o.map);
    CVector c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(io::parse_complex(j[i], "/map/" + std::to_string(i)));
    model = SchwarzModel::polynomial_image(Polynomial(c));
  } else if (d.connectivity() == 1 && d.outer.kind() == CurveKind::circle) {
    model = SchwarzModel::disc(d.outer.center(), d.outer.radius());
  }
  if (model) res.report.check("Schwarz boundary identity", schwarz_boundary_residual(*model), o.tol);
  return res;
}

Result cmd_validate(const Options& o) {
  if (o.suite != "disc") throw InputError("unknown suite '" + o.suite + "' (available: disc)");
  Result res{RunReport{}, std::nullopt};
  RunReport& r = res.report;
  r.command = "validate --suite disc";
  r.domain = "unit-disc, N=" + std::to_string(o.n);
  r.tolerances.emplace_back("tol", o.tol);
  const io::Stopwatch sw;
  const SzegoSystem sys(unit_disc(), o.n, cplx(0.0));
  double szego = 0.0;
  for (cplx a : {cplx(0.0), cplx(0.3), cplx(0.0, 0.5)}) {
    const CVector s = sys.solve_szego(a);
    for (std::size_t i = 0; i < s.size(); ++i)
      szego = std::max(szego, std::abs(s[i] - 1.0 / (2.0 * kPi * (1.0 - sys.grid().z[i] * std::conj(a)))));
  }
  r.check("szego closed form", szego, o.tol);
  r.check("kerzman-stein vanishing", sys.kernel().cwiseAbs().maxCoeff(), o.tol);
  r.check("schwarz identity", schwarz_boundary_residual(SchwarzModel::disc(0.0, 1.0)), o.tol);
  for (const char* e : {"1", "zbar", "z*zbar", "zbar^2", "1/(2+z) + conj(1/(2+z))", "1/(zbar - 1/2)"}) {
    const io::CrossValidation cv = io::cross_validate_deltas(sys, io::parse_expression(e));
    const std::string tag = std::string(" [") + e + "]";
    r.check("dirichlet exact vs numeric" + tag, cv.dirichlet_delta, o.tol);
    r.check("projection exact vs numeric" + tag, cv.projection_delta, o.tol);
    r.check("integral residues vs trapezoid" + tag, cv.integral_delta, o.tol);
  }
  sw.stop(r, "total");
  return res;
}

void emit(const Result& res, const Options& o, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw InputError("cannot write '" + o.out + "'");
    os = &file;
  }
  if (o.format == "csv" && res.table) {
    io::write_csv(*os, res.table->header, res.table->rows);
  } else {
    json j = res.report.to_json();
    if (res.table) {
      json rows = json::array();
      for (const auto& row : res.table->rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[res.table->header[i]] = row[i];
        rows.push_back(obj);
      }
      j["table"] = rows;
    }
    *os << j.dump(2) << '\n';
  }
  if (!o.report.empty()) {
    std::ofstream rep(o.report, std::ios::binary);
    if (!rep) throw InputError("cannot write '" + o.report + "'");
    rep << res.report.to_json().dump(2) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadrature domains, Szegő kernels and planar potential theory"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, std::function<Result(const Options&)>> commands;

  const auto add = [&](const std::string& name, const std::string& help, std::function<Result(const Options&)> f) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--domain", o.domain, "domain JSON file or built-in name")->capture_default_str();
    s->add_option("--n", o.n, "nodes per boundary curve")->capture_default_str()->check(CLI::Range(16, 1 << 14));
    s->add_option("--a", o.a, "Szegő base point re,im");
    s->add_option("--tol", o.tol, "check tolerance")->capture_default_str();
    s->add_option("--out", o.out, "output path (default stdout)");
    s->add_option("--format", o.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--report", o.report, "also write the JSON run report here");
    commands[s] = std::move(f);
    return s;
  };

  add("grid", "boundary nodes, tangents and arc-length weights", cmd_grid);
  add("szego", "Szegő and Garabedian kernel tables", cmd_szego);
  add("project", "Szegő projection of boundary data", cmd_project)->add_option("--data", o.data, "boundary data");
  {
    auto* s = add("dirichlet", "Dirichlet problem with boundary data", cmd_dirichlet);
    s->add_option("--data", o.data, "rational, {\"samples\": ...} or indicator-inner|indicator-outer|indicator:k");
    s->add_option("--probe", o.probes, "re,im point or CSV file of points");
  }
  {
    auto* s = add("green", "Green's function or its w-derivatives", cmd_green);
    s->add_option("--z", o.z, "re,im");
    s->add_option("--w", o.w, "re,im");
    s->add_option("--m", o.m, "derivative order in w (0 = G)")->capture_default_str()->check(CLI::Range(0, 12));
  }
  add("poisson", "Poisson kernel at the boundary nodes", cmd_poisson)->add_option("--z", o.z, "interior point re,im");
  {
    auto* s = add("hmeasure", "harmonic measure of a boundary component", cmd_hmeasure);
    s->add_option("--k", o.k, "component (0 = outer)")->capture_default_str();
    s->add_option("--probe", o.probes, "re,im point or CSV file of points");
  }
  {
    auto* s = add("lambda", "non-harmonic measure of a boundary component", cmd_lambda);
    s->add_option("--k", o.k, "component (0 = outer)")->capture_default_str();
    s->add_option("--probe", o.probes, "re,im point or CSV file of points");
  }
  {
    auto* s = add("exact-dirichlet", "closed-form Dirichlet solution on the unit disc", cmd_exact_dirichlet);
    s->add_option("--data", o.data, "boundary rational");
    s->add_option("--probe", o.probes, "re,im point or CSV file of points");
  }
  add("integrate", "boundary integral of a rational in z and zbar", cmd_integrate)
      ->add_option("--data", o.data, "boundary rational");
  {
    auto* s = add("qd-check", "quadrature and Schwarz identities", cmd_qd_check);
    s->add_option("--data", o.data, "holomorphic rational g");
    s->add_option("--map", o.map, "polynomial image model, JSON list of [re, im] coefficients");
  }
  add("validate", "exact against numeric cross-checks", cmd_validate)
      ->add_option("--suite", o.suite, "suite name")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    for (auto& [sub, f] : commands) {
      if (!sub->parsed()) continue;
      Result res = f(o);
      res.report.command.clear();
      for (const auto& a : args) res.report.command += (res.report.command.empty() ? "" : " ") + a;
      emit(res, o, out);
      for (const auto& c : res.report.checks)
        if (!c.passed)
          err << "check failed: " << c.name << " = " << format_double(c.value) << " > " << format_double(c.tolerance)
              << '\n';
      return res.report.passed() ? kExitOk : kExitCheckFailed;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const MathError& e) {
    err << "math error: " << e.what() << '\n';
    return kExitMath;
  } catch (const std::logic_error& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace qdpot::cli
