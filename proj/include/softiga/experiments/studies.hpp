#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "softiga/eigensolver.hpp"
#include "softiga/experiments/config.hpp"
#include "softiga/experiments/csv.hpp"
#include "softiga/experiments/fit.hpp"
#include "softiga/mesh.hpp"
#include "softiga/spline_space.hpp"

namespace softiga::experiments {

/// Uniform mesh when growth == 0, otherwise the graded mesh.
Mesh1D make_mesh(double half_width, std::size_t n, double growth);
SplineSpace make_space(int p, double half_width, std::size_t n, double growth);

/// Assemble and solve one problem (1D or 2D tensor) on one discretization.
EigenResult solve_problem(const ProblemSpec& problem, const Discretization& disc, double eta,
                          int k, const AssemblyOptions& assembly, const SolverOptions& solver);

/// Errors |computed_j - reference_j| of the first min(k, reference) values.
std::vector<double> errors_against(std::span<const double> computed,
                                   std::span<const double> reference);

struct SolveOutput {
  EigenResult result;
  std::vector<double> errors;  // empty without a reference
  int p = 0;
  double eta = 0.0;
  std::vector<CsvTable> modes;  // x,value (1D) or x,y,value (2D) per eigenvector

  void write(const StudyConfig& cfg, const std::filesystem::path& dir) const;
};

/// With cfg.export_matrices the stiffness and mass matrices are written to
/// cfg.output as coordinate text.
SolveOutput run_solve(const StudyConfig& cfg, std::span<const double> reference = {});

struct EtaSweepRow {
  double eta = 0.0;
  bool failed = false;  // SoftnessTooLarge or NoConvergence
  std::vector<double> errors;
};

struct EtaSweepResult {
  int k = 0;
  std::vector<EtaSweepRow> rows;

  /// eta,err1,...,errk; failed rows carry nan errors.
  CsvTable table() const;
  void write(const std::filesystem::path& dir) const;
};

EtaSweepResult eta_sweep(const StudyConfig& cfg, std::span<const double> reference);

struct ConvergenceRow {
  std::size_t n = 0;
  double h = 0.0;
  double eta = 0.0;
  bool failed = false;
  std::vector<double> errors;
};

struct ConvergenceFitEntry {
  double eta = 0.0;
  int index = 1;  // eigenvalue number
  ConvergenceFit fit;
};

struct ConvergenceResult {
  int k = 0;
  std::vector<ConvergenceRow> rows;
  std::vector<ConvergenceFitEntry> fits;

  /// n,h,eta,err1,...,errk
  CsvTable table() const;
  const ConvergenceFit& fit(double eta, int index = 1) const;
  void write(const std::filesystem::path& dir) const;
};

ConvergenceResult convergence_study(const StudyConfig& cfg, std::span<const double> reference);

struct DomainRow {
  double half_width = 0.0;
  double h = 0.0;
  bool failed = false;
  double error = 0.0;
};

struct DomainResult {
  std::vector<DomainRow> rows;
  std::vector<double> envelope_x;
  std::vector<double> envelope_error;      // min over h at each half width
  std::vector<bool> truncation_dominated;  // h-converged and above the floor
  LinearFit fit;                           // log10 e = slope * x + intercept

  /// x_eps,h,err1
  CsvTable table() const;
  CsvTable envelope_table() const;
  void write(const std::filesystem::path& dir) const;
};

/// Errors of lambda_1 against the reference on every (half width, h) pair.
/// A point is truncation dominated when refining from the second-finest to
/// the finest h changes its error by less than 25% and it lies above ten
/// times the error floor.
DomainResult domain_study(const StudyConfig& cfg, std::span<const double> reference);

struct MethodRow {
  MethodSpec method;
  std::vector<double> eigenvalues;
  std::vector<double> errors;
  int iterations = 0;
  double seconds = 0.0;
};

struct ModeGrid {
  std::string method;
  int mode = 1;
  CsvTable samples;  // x,y,value
};

struct ThreeBodyResult {
  int k = 0;
  std::vector<MethodRow> rows;
  std::vector<ModeGrid> grids;

  /// method,p,eta,lambda1..k,err1..k
  CsvTable table() const;
  /// [{method, p, eta, eigenvalues[], errors[]}]
  std::string json() const;
  void write(const std::filesystem::path& dir) const;
};

ThreeBodyResult three_body(const StudyConfig& cfg, std::span<const double> reference);

struct BenchRow {
  std::string method;
  int dimension = 1;
  std::size_t n = 0;
  double seconds = 0.0;  // fastest of the repeats
  double mean = 0.0;
  double rel_std = 0.0;
  int iterations = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;

  /// method,dimension,n,seconds,mean,rel_std,iterations
  CsvTable table() const;
  void write(const std::filesystem::path& dir) const;
  const BenchRow& row(const std::string& method, int dimension, std::size_t n) const;
};

/// Serial timings of FEM, softFEM, IGA and softIGA (assembly plus solve).
BenchResult bench(const StudyConfig& cfg);

} // namespace softiga::experiments
