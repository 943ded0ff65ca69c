#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qdpot/exact.hpp"
#include "qdpot/geometry.hpp"
#include "qdpot/rational.hpp"
#include "qdpot/szego.hpp"

namespace qdpot::io {

using json = nlohmann::ordered_json;

/// Complex value from [re, im] or a plain number; `where` names the JSON
/// location for error messages.
cplx parse_complex(const json& j, const std::string& where);
/// "re,im" or "re".
cplx parse_point(const std::string& text);

/// Domain file contents.  Curves:
///   {"kind": "circle", "center": [re, im], "radius": r}
///   {"kind": "polynomial_image", "coefficients": [[re, im], ...]}
///   {"kind": "fourier", "modes": [[k, re, im], ...]}
/// with optional "orientation": "positive" | "negative".
DomainSpec parse_domain(const json& j);
/// A built-in name (see named_domain) or a path to a JSON file.
DomainSpec load_domain(const std::string& name_or_path);

/// Rational literal: {"num": [...], "den": [...]} with a coefficient list
/// (univariate in z) or a coefficient matrix [z-power][w-power], or
/// {"R": "<expression>"}.
BivariateRational parse_rational(const json& j);
/// Expression in z, zbar (or w), conj(...), i, numbers, + - * / ^ and
/// parentheses; juxtaposition multiplies ("2z").  InputError carries the
/// column of the offending character.
BivariateRational parse_expression(const std::string& text);
/// Throws InputError if the rational depends on zbar.
UnivariateRational as_univariate(const BivariateRational& r);

/// Parses JSON text; syntax errors become InputError with line and column.
json parse_json_text(const std::string& text, const std::string& source);
/// Inline JSON (starting with '{' or '[') or a file path.
json load_json(const std::string& inline_or_path);

json to_json(cplx c);
json to_json(const Polynomial& p);
json to_json(const UnivariateRational& r);
json to_json(const BivariateRational& r);

/// Rows of numbers under a header, written with format_double.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct RunReport {
  std::string command;
  std::string domain;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings_ms;
  json results = json::object();

  /// Records value ≤ tolerance.
  bool check(const std::string& name, double value, double tolerance);
  bool passed() const;
  json to_json() const;
};

/// Wall-clock timer that adds its elapsed time to a report on stop().
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const;
  void stop(RunReport& report, const std::string& name) const;

 private:
  std::chrono::steady_clock::time_point start_;
};

struct CrossValidation {
  double dirichlet_delta = 0.0;   // max over interior probes
  double projection_delta = 0.0;  // max over nodes
  double integral_delta = 0.0;    // residues vs trapezoid
};

/// The 20 interior probes used by cross_validate.
std::vector<cplx> cross_validation_probes();

/// Exact disc layer against the numeric layer on a unit-disc system.
CrossValidation cross_validate_deltas(const SzegoSystem& disc_system, const BivariateRational& r);
/// Same, as a report with the three deltas checked against `tolerance`.
RunReport cross_validate(const BivariateRational& r, std::size_t nodes = 256, double tolerance = 1e-7);

}  // namespace qdpot::io
