#include "softiga/experiments/studies.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <optional>

#include <json.hpp>

#include "softiga/assembly.hpp"
#include "softiga/sampling.hpp"

namespace softiga::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Operators of one discretization at eta = 0, plus the softness matrix so
/// that any eta can be applied without reassembly.
struct Assembled {
  int dimension = 1;
  SplineSpace sx;
  std::optional<SplineSpace> sy;
  SparseMatrix base;
  SparseMatrix softness;
  SparseMatrix mass;
  double gamma0 = 0.0;

  SparseMatrix stiffness(double eta) const {
    if (eta == 0.0)
      return base;
    if (softness.rows() == 0)
      throw InvalidArgument("softness is only available for p = 1, 2");
    return SparseMatrix(base - eta * softness);
  }
};

Assembled assemble(const ProblemSpec& problem, const Discretization& disc,
                   const AssemblyOptions& opts) {
  Assembled a{problem.dimension,
              make_space(disc.p, problem.half_width, disc.n, disc.growth),
              std::nullopt,
              {},
              {},
              {},
              0.0};
  if (problem.dimension == 1) {
    const Operators1D ops = assemble_1d(a.sx, problem, {0.0}, opts);
    a.base = ops.stiffness.to_sparse();
    a.mass = ops.mass.to_sparse();
    if (ops.softness.size() > 0)
      a.softness = ops.softness.to_sparse();
    a.gamma0 = ops.gamma0;
  } else {
    a.sy = a.sx;
    Operators2D ops = assemble_2d(a.sx, *a.sy, problem, {0.0}, opts);
    a.base = std::move(ops.stiffness);
    a.mass = std::move(ops.mass);
    a.softness = std::move(ops.softness);
    a.gamma0 = ops.gamma0;
  }
  return a;
}

AssemblyOptions row_options(AssemblyOptions o) {
  // Rows already run in parallel; keep each row's kernels serial.
  o.execution = Execution::serial;
  return o;
}

bool is_solver_failure(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const SoftnessTooLarge&) {
    return true;
  } catch (const NoConvergence&) {
    return true;
  } catch (...) {
    return false;
  }
}

/// Runs fn(i) for i in [0, count) across OpenMP threads. The first exception
/// is rethrown once all rows are done.
template <class Fn>
void parallel_rows(std::size_t count, Fn fn) {
  std::exception_ptr first;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(softiga_rows)
      if (!first)
        first = std::current_exception();
    }
  }
  if (first)
    std::rethrow_exception(first);
}

/// Solve that turns SoftnessTooLarge / NoConvergence into an empty result.
std::optional<EigenResult> try_solve(const Assembled& a, double eta, int k,
                                     const SolverOptions& solver) {
  try {
    return solve_smallest(a.stiffness(eta), a.mass, k, a.gamma0, solver);
  } catch (...) {
    if (is_solver_failure(std::current_exception()))
      return std::nullopt;
    throw;
  }
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  x.back() = b;
  return x;
}

CsvTable sample_mode(const Assembled& a, const EigenResult& r, int mode, std::size_t points,
                     double half_width) {
  const auto col = static_cast<Eigen::Index>(mode);
  const std::vector<double> coeffs(r.vectors.col(col).data(),
                                   r.vectors.col(col).data() + r.vectors.rows());
  const std::vector<double> axis = linspace(-half_width, half_width, points);
  CsvTable t;
  if (a.dimension == 1) {
    t.header = {"x", "value"};
    const std::vector<double> u = sample_eigenfunction(a.sx, coeffs, axis);
    for (std::size_t i = 0; i < axis.size(); ++i)
      t.add_numeric_row({axis[i], u[i]});
  } else {
    t.header = {"x", "y", "value"};
    std::vector<std::pair<double, double>> grid;
    grid.reserve(points * points);
    for (double x : axis)
      for (double y : axis)
        grid.emplace_back(x, y);
    const std::vector<double> u = sample_eigenfunction(a.sx, *a.sy, coeffs, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      t.add_numeric_row({grid[i].first, grid[i].second, u[i]});
  }
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  out << text << '\n';
}

nlohmann::json json_numbers(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v)
    a.push_back(std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr));
  return a;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

Mesh1D make_mesh(double half_width, std::size_t n, double growth) {
  if (growth == 0.0)
    return uniform_mesh(half_width, n);
  return graded_mesh({half_width, n, growth});
}

SplineSpace make_space(int p, double half_width, std::size_t n, double growth) {
  return SplineSpace(p, make_mesh(half_width, n, growth));
}

EigenResult solve_problem(const ProblemSpec& problem, const Discretization& disc, double eta,
                          int k, const AssemblyOptions& assembly, const SolverOptions& solver) {
  const Assembled a = assemble(problem, disc, assembly);
  return solve_smallest(a.stiffness(eta), a.mass, k, a.gamma0, solver);
}

std::vector<double> errors_against(std::span<const double> computed,
                                   std::span<const double> reference) {
  const std::size_t n = std::min(computed.size(), reference.size());
  std::vector<double> e;
  for (const auto& rec : eigen_error(computed.first(n), reference))
    e.push_back(rec.error);
  return e;
}

// ---------------------------------------------------------------- solve

SolveOutput run_solve(const StudyConfig& cfg, std::span<const double> reference) {
  const Assembled a = assemble(cfg.problem, cfg.disc, cfg.assembly_options());
  SolveOutput out;
  out.p = cfg.disc.p;
  out.eta = cfg.eta;
  const SparseMatrix k = a.stiffness(cfg.eta);
  if (cfg.export_matrices) {
    write_coordinate(k, (cfg.output / "stiffness.coo").string());
    write_coordinate(a.mass, (cfg.output / "mass.coo").string());
  }
  out.result = solve_smallest(k, a.mass, cfg.k, a.gamma0, cfg.solver);
  if (!reference.empty())
    out.errors = errors_against(out.result.eigenvalues, reference);
  for (int j = 0; j < cfg.k; ++j)
    out.modes.push_back(sample_mode(a, out.result, j, cfg.grid_points, cfg.problem.half_width));
  return out;
}

void SolveOutput::write(const StudyConfig& cfg, const std::filesystem::path& dir) const {
  CsvTable t;
  t.header = {"index", "eigenvalue", "residual"};
  if (!errors.empty())
    t.header.push_back("error");
  for (std::size_t j = 0; j < result.eigenvalues.size(); ++j) {
    std::vector<double> row{static_cast<double>(j + 1), result.eigenvalues[j],
                            result.residuals[j]};
    if (!errors.empty())
      row.push_back(j < errors.size() ? errors[j] : kNaN);
    t.add_numeric_row(row);
  }
  write_csv(dir / "eigenvalues.csv", t);

  nlohmann::json j;
  j["method"] = std::string(p == 1 ? (eta == 0.0 ? "FEM" : "softFEM")
                                   : (eta == 0.0 ? "IGA" : "softIGA"));
  j["p"] = p;
  j["eta"] = eta;
  j["dimension"] = cfg.problem.dimension;
  j["n"] = cfg.disc.n;
  j["eigenvalues"] = json_numbers(result.eigenvalues);
  j["errors"] = json_numbers(errors);
  j["iterations"] = result.iterations;
  write_text(dir / "result.json", j.dump(2));

  for (std::size_t m = 0; m < modes.size(); ++m)
    write_csv(dir / ("mode" + std::to_string(m + 1) + ".csv"), modes[m]);
}

// ---------------------------------------------------------------- eta sweep

EtaSweepResult eta_sweep(const StudyConfig& cfg, std::span<const double> reference) {
  const Assembled a = assemble(cfg.problem, cfg.disc, cfg.assembly_options());
  EtaSweepResult res;
  res.k = cfg.k;
  res.rows.resize(cfg.eta_grid.size());
  parallel_rows(cfg.eta_grid.size(), [&](std::size_t i) {
    EtaSweepRow& row = res.rows[i];
    row.eta = cfg.eta_grid[i];
    const auto r = try_solve(a, row.eta, cfg.k, cfg.solver);
    if (!r) {
      row.failed = true;
      row.errors.assign(static_cast<std::size_t>(cfg.k), kNaN);
      return;
    }
    row.errors = errors_against(r->eigenvalues, reference);
  });
  return res;
}

CsvTable EtaSweepResult::table() const {
  CsvTable t;
  t.header = {"eta"};
  for (int j = 1; j <= k; ++j)
    t.header.push_back("err" + std::to_string(j));
  for (const auto& row : rows) {
    std::vector<double> v{row.eta};
    for (int j = 0; j < k; ++j)
      v.push_back(static_cast<std::size_t>(j) < row.errors.size() ? row.errors[j] : kNaN);
    t.add_numeric_row(v);
  }
  return t;
}

void EtaSweepResult::write(const std::filesystem::path& dir) const {
  write_csv(dir / "eta_sweep.csv", table());
}

// ---------------------------------------------------------------- convergence

ConvergenceResult convergence_study(const StudyConfig& cfg, std::span<const double> reference) {
  ConvergenceResult res;
  res.k = cfg.k;
  const std::size_t ne = cfg.eta_grid.size();
  res.rows.resize(cfg.n_list.size() * ne);
  const AssemblyOptions opts = row_options(cfg.assembly_options());
  parallel_rows(cfg.n_list.size(), [&](std::size_t i) {
    Discretization disc = cfg.disc;
    disc.n = cfg.n_list[i];
    const Assembled a = assemble(cfg.problem, disc, opts);
    const double h = a.sx.mesh().max_element_size();
    for (std::size_t e = 0; e < ne; ++e) {
      ConvergenceRow& row = res.rows[i * ne + e];
      row.n = disc.n;
      row.h = h;
      row.eta = cfg.eta_grid[e];
      const auto r = try_solve(a, row.eta, cfg.k, cfg.solver);
      if (!r) {
        row.failed = true;
        row.errors.assign(static_cast<std::size_t>(cfg.k), kNaN);
      } else {
        row.errors = errors_against(r->eigenvalues, reference);
      }
    }
  });

  for (double eta : cfg.eta_grid) {
    for (int j = 0; j < cfg.k; ++j) {
      std::vector<double> h, e;
      for (const auto& row : res.rows) {
        if (row.eta == eta && !row.failed && static_cast<std::size_t>(j) < row.errors.size()) {
          h.push_back(row.h);
          e.push_back(row.errors[static_cast<std::size_t>(j)]);
        }
      }
      res.fits.push_back({eta, j + 1, fit_convergence(h, e, cfg.error_floor)});
    }
  }
  return res;
}

CsvTable ConvergenceResult::table() const {
  CsvTable t;
  t.header = {"n", "h", "eta"};
  for (int j = 1; j <= k; ++j)
    t.header.push_back("err" + std::to_string(j));
  for (const auto& row : rows) {
    std::vector<double> v{static_cast<double>(row.n), row.h, row.eta};
    for (int j = 0; j < k; ++j)
      v.push_back(static_cast<std::size_t>(j) < row.errors.size() ? row.errors[j] : kNaN);
    t.add_numeric_row(v);
  }
  return t;
}

const ConvergenceFit& ConvergenceResult::fit(double eta, int index) const {
  for (const auto& f : fits)
    if (f.eta == eta && f.index == index)
      return f.fit;
  throw InvalidArgument("no convergence fit for that eta and index");
}

void ConvergenceResult::write(const std::filesystem::path& dir) const {
  write_csv(dir / "convergence.csv", table());
  CsvTable t;
  t.header = {"eta", "index", "order", "log_constant", "points", "valid"};
  for (const auto& f : fits) {
    const auto used = std::count(f.fit.used.begin(), f.fit.used.end(), true);
    t.add_numeric_row({f.eta, static_cast<double>(f.index), f.fit.order, f.fit.log_constant,
                       static_cast<double>(used), f.fit.valid ? 1.0 : 0.0});
  }
  write_csv(dir / "convergence_fits.csv", t);
}

// ---------------------------------------------------------------- domain size

DomainResult domain_study(const StudyConfig& cfg, std::span<const double> reference) {
  DomainResult res;
  std::vector<double> hs = cfg.h_list;
  std::sort(hs.begin(), hs.end(), std::greater<>());
  const std::size_t nh = hs.size();
  res.rows.resize(cfg.half_widths.size() * nh);
  const AssemblyOptions opts = row_options(cfg.assembly_options());
  parallel_rows(res.rows.size(), [&](std::size_t i) {
    DomainRow& row = res.rows[i];
    row.half_width = cfg.half_widths[i / nh];
    row.h = hs[i % nh];
    ProblemSpec problem = cfg.problem;
    problem.half_width = row.half_width;
    Discretization disc = cfg.disc;
    disc.growth = 0.0;
    disc.n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(2.0 * row.half_width / row.h)));
    const Assembled a = assemble(problem, disc, opts);
    const auto r = try_solve(a, cfg.eta, 1, cfg.solver);
    row.failed = !r;
    row.error = r ? std::abs(r->eigenvalues[0] - reference[0]) : kNaN;
  });

  std::vector<double> fx, fy;
  for (std::size_t xi = 0; xi < cfg.half_widths.size(); ++xi) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t hi = 0; hi < nh; ++hi) {
      const DomainRow& r = res.rows[xi * nh + hi];
      if (!r.failed)
        best = std::min(best, r.error);
    }
    bool dominated = false;
    if (nh >= 2) {
      const DomainRow& finest = res.rows[xi * nh + nh - 1];
      const DomainRow& second = res.rows[xi * nh + nh - 2];
      dominated = !finest.failed && !second.failed && finest.error > 0.0 &&
                  std::abs(second.error - finest.error) < 0.25 * finest.error &&
                  best > 10.0 * cfg.error_floor;
    }
    res.envelope_x.push_back(cfg.half_widths[xi]);
    res.envelope_error.push_back(best);
    res.truncation_dominated.push_back(dominated);
    if (dominated) {
      fx.push_back(cfg.half_widths[xi]);
      fy.push_back(std::log10(best));
    }
  }
  res.fit = least_squares(fx, fy);
  return res;
}

CsvTable DomainResult::table() const {
  CsvTable t;
  t.header = {"x_eps", "h", "err1"};
  for (const auto& r : rows)
    t.add_numeric_row({r.half_width, r.h, r.error});
  return t;
}

CsvTable DomainResult::envelope_table() const {
  CsvTable t;
  t.header = {"x_eps", "err1", "truncation_dominated"};
  for (std::size_t i = 0; i < envelope_x.size(); ++i)
    t.add_numeric_row(
        {envelope_x[i], envelope_error[i], truncation_dominated[i] ? 1.0 : 0.0});
  return t;
}

void DomainResult::write(const std::filesystem::path& dir) const {
  write_csv(dir / "domain.csv", table());
  write_csv(dir / "domain_envelope.csv", envelope_table());
  nlohmann::json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["points"] = fit.points;
  j["valid"] = fit.valid;
  write_text(dir / "domain_fit.json", j.dump(2));
}

// ---------------------------------------------------------------- three-body

ThreeBodyResult three_body(const StudyConfig& cfg, std::span<const double> reference) {
  ThreeBodyResult res;
  res.k = cfg.k;
  const std::size_t nm = cfg.methods.size();
  res.rows.resize(nm);
  std::vector<std::vector<ModeGrid>> grids(nm);
  const AssemblyOptions opts = row_options(cfg.assembly_options());
  parallel_rows(nm, [&](std::size_t i) {
    const MethodSpec& m = cfg.methods[i];
    Discretization disc = cfg.disc;
    disc.p = m.p;
    const auto t0 = std::chrono::steady_clock::now();
    const Assembled a = assemble(cfg.problem, disc, opts);
    const EigenResult r = solve_smallest(a.stiffness(m.eta), a.mass, cfg.k, a.gamma0, cfg.solver);
    MethodRow& row = res.rows[i];
    row.seconds = seconds_since(t0);
    row.method = m;
    row.eigenvalues = r.eigenvalues;
    row.errors = errors_against(r.eigenvalues, reference);
    row.iterations = r.iterations;
    for (int j = 0; j < cfg.k; ++j)
      grids[i].push_back(
          {m.name, j + 1, sample_mode(a, r, j, cfg.grid_points, cfg.problem.half_width)});
  });
  for (auto& g : grids)
    for (auto& mode : g)
      res.grids.push_back(std::move(mode));
  return res;
}

CsvTable ThreeBodyResult::table() const {
  CsvTable t;
  t.header = {"method", "p", "eta"};
  for (int j = 1; j <= k; ++j)
    t.header.push_back("lambda" + std::to_string(j));
  for (int j = 1; j <= k; ++j)
    t.header.push_back("err" + std::to_string(j));
  for (const auto& row : rows) {
    std::vector<std::string> cells{row.method.name, std::to_string(row.method.p),
                                   format_number(row.method.eta)};
    for (int j = 0; j < k; ++j)
      cells.push_back(format_number(row.eigenvalues[static_cast<std::size_t>(j)]));
    for (int j = 0; j < k; ++j)
      cells.push_back(format_number(static_cast<std::size_t>(j) < row.errors.size()
                                        ? row.errors[static_cast<std::size_t>(j)]
                                        : kNaN));
    t.add_row(std::move(cells));
  }
  return t;
}

std::string ThreeBodyResult::json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["method"] = row.method.name;
    j["p"] = row.method.p;
    j["eta"] = row.method.eta;
    j["eigenvalues"] = json_numbers(row.eigenvalues);
    j["errors"] = json_numbers(row.errors);
    a.push_back(j);
  }
  return a.dump(2);
}

void ThreeBodyResult::write(const std::filesystem::path& dir) const {
  write_csv(dir / "three_body.csv", table());
  write_text(dir / "three_body.json", json());
  for (const auto& g : grids)
    write_csv(dir / (g.method + "_mode" + std::to_string(g.mode) + ".csv"), g.samples);
}

// ---------------------------------------------------------------- bench

BenchResult bench(const StudyConfig& cfg) {
  BenchResult res;
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  try {
    AssemblyOptions opts = cfg.assembly_options();
    opts.execution = Execution::serial;
    auto run = [&](const ProblemSpec& problem, int dimension, std::size_t n,
                   const std::vector<MethodSpec>& methods) {
      for (const auto& m : methods) {
        Discretization disc{m.p, n, 0.0, cfg.disc.quad_order, cfg.disc.quad_order_potential};
        std::vector<double> times;
        int iterations = 0;
        for (int rep = 0; rep < cfg.bench.repeats; ++rep) {
          const auto t0 = std::chrono::steady_clock::now();
          const Assembled a = assemble(problem, disc, opts);
          const EigenResult r =
              solve_smallest(a.stiffness(m.eta), a.mass, cfg.k, a.gamma0, cfg.solver);
          times.push_back(seconds_since(t0));
          iterations = r.iterations;
        }
        double mean = 0.0;
        for (double t : times)
          mean += t;
        mean /= static_cast<double>(times.size());
        double var = 0.0;
        for (double t : times)
          var += (t - mean) * (t - mean);
        const double sd = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1))
                                           : 0.0;
        res.rows.push_back({m.name, dimension, n, *std::min_element(times.begin(), times.end()),
                            mean, mean > 0.0 ? sd / mean : 0.0, iterations});
      }
    };
    const auto m1 = standard_methods(cfg.bench.eta_fem_1d, cfg.bench.eta_iga_1d);
    const auto m2 = standard_methods(cfg.bench.eta_fem_2d, cfg.bench.eta_iga_2d);
    for (std::size_t n : cfg.bench.n_1d)
      run(cfg.bench.problem_1d, 1, n, m1);
    for (std::size_t n : cfg.bench.n_2d)
      run(cfg.bench.problem_2d, 2, n, m2);
  } catch (...) {
    omp_set_num_threads(threads);
    throw;
  }
  omp_set_num_threads(threads);
  return res;
}

CsvTable BenchResult::table() const {
  CsvTable t;
  t.header = {"method", "dimension", "n", "seconds", "mean", "rel_std", "iterations"};
  for (const auto& r : rows)
    t.add_row({r.method, std::to_string(r.dimension), std::to_string(r.n),
               format_number(r.seconds), format_number(r.mean), format_number(r.rel_std),
               std::to_string(r.iterations)});
  return t;
}

void BenchResult::write(const std::filesystem::path& dir) const {
  write_csv(dir / "bench.csv", table());
}

const BenchRow& BenchResult::row(const std::string& method, int dimension, std::size_t n) const {
  for (const auto& r : rows)
    if (r.method == method && r.dimension == dimension && r.n == n)
      return r;
  throw InvalidArgument("no bench row for " + method);
}

} // namespace softiga::experiments
