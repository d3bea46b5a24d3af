#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softiga/assembly.hpp"
#include "softiga/eigensolver.hpp"
#include "softiga/error.hpp"
#include "softiga/problem.hpp"

namespace softiga::experiments {

/// Malformed or out-of-range study configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A study needs reference eigenvalues and none are available.
class ReferenceMissing : public Error {
public:
  using Error::Error;
};

enum class StudyKind { solve, reference, eta_sweep, convergence, domain_study, three_body, bench };

std::string_view to_string(StudyKind kind);
StudyKind parse_study_kind(std::string_view name);

/// Degree, element count per direction and grading of a tensor mesh.
struct Discretization {
  int p = 2;
  std::size_t n = 400;
  double growth = 0.0;  // 0: uniform
  int quad_order = 0;
  int quad_order_potential = 0;
};

/// Where reference eigenvalues come from: a file, or an inline fine solve.
struct ReferenceSource {
  std::optional<std::filesystem::path> file;
  int p = 7;
  std::size_t n = 5000;
  double growth = 0.0;
  std::optional<double> half_width;  // defaults to the problem's
  std::filesystem::path cache_dir;   // empty: <output>/cache
};

/// Named method of the three-body table.
struct MethodSpec {
  std::string name;
  int p = 1;
  double eta = 0.0;
};

struct BenchSettings {
  std::vector<std::size_t> n_1d{80, 400, 800};
  std::vector<std::size_t> n_2d{20, 40};
  int repeats = 5;
  ProblemSpec problem_1d;
  ProblemSpec problem_2d;
  double eta_fem_1d = 1.0 / 12.0;
  double eta_iga_1d = 1.0 / 720.0;
  double eta_fem_2d = 1.0 / 48.0;
  double eta_iga_2d = 1.0 / 1440.0;
};

/// Everything a study needs. Loaded from a JSON document, then overridden
/// from the command line.
struct StudyConfig {
  StudyKind kind = StudyKind::solve;
  ProblemSpec problem;
  Discretization disc;
  double eta = 0.0;
  std::vector<double> eta_grid;
  std::vector<std::size_t> n_list;
  std::vector<double> half_widths;
  std::vector<double> h_list;
  std::vector<MethodSpec> methods;
  int k = 2;
  std::optional<ReferenceSource> reference;
  SolverOptions solver;
  std::size_t max_unknowns = 400000;
  std::filesystem::path output = "out";
  std::size_t grid_points = 81;
  bool export_matrices = false;
  double error_floor = 5e-12;
  BenchSettings bench;

  /// Throws ConfigError on out-of-range fields.
  void validate() const;

  AssemblyOptions assembly_options() const;
};

/// Defaults of each study kind: the two-body LorentzianCube problem for 1D
/// studies, the R=1 Gaussian problem for three-body.
StudyConfig default_config(StudyKind kind);

/// Reads a JSON document on top of default_config(kind). The "study" key, if
/// present, must agree with `kind` when one is given.
StudyConfig load_config(const std::filesystem::path& path,
                        std::optional<StudyKind> kind = std::nullopt);
StudyConfig parse_config(std::string_view json_text, std::optional<StudyKind> kind = std::nullopt);

/// Parses a softness value given as a number or a fraction string such as "1/720".
double parse_eta(std::string_view text);

/// FEM, softFEM, IGA, softIGA with the given soft eta values.
std::vector<MethodSpec> standard_methods(double eta_fem, double eta_iga);

} // namespace softiga::experiments
