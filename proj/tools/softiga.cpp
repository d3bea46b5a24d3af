// softiga: command-line driver for the two-/three-body eigenvalue studies.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "softiga/experiments/config.hpp"
#include "softiga/experiments/reference.hpp"
#include "softiga/experiments/studies.hpp"

namespace ex = softiga::experiments;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kSolver = 3, kReference = 4 };

struct Overrides {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> p;
  std::optional<std::size_t> n;
  std::optional<std::string> eta;
  std::optional<int> k;
  std::optional<int> quad_order;
  std::optional<int> quad_order_potential;
  std::optional<std::size_t> dense_threshold;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<double> growth;
  std::optional<std::string> reference;
  bool export_matrices = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON study configuration")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--p", o.p, "spline degree");
  sub->add_option("--n", o.n, "elements per direction");
  sub->add_option("--eta", o.eta, "softness parameter, e.g. 0.0833 or 1/12");
  sub->add_option("--k", o.k, "number of eigenpairs");
  sub->add_option("--quad-order", o.quad_order, "Gauss points per element (0: p+3)");
  sub->add_option("--quad-order-potential", o.quad_order_potential,
                  "Gauss points per element for the potential (0: default)");
  sub->add_option("--dense-threshold", o.dense_threshold, "largest size solved densely");
  sub->add_option("--tol", o.tol, "relative residual tolerance");
  sub->add_option("--seed", o.seed, "Lanczos start-vector seed");
  sub->add_option("--growth", o.growth, "graded-mesh growth (0: uniform)");
  sub->add_option("--reference", o.reference, "file of reference eigenvalues");
  sub->add_flag("--export-matrices", o.export_matrices,
                "write stiffness.coo and mass.coo (solve only)");
}

ex::StudyConfig build_config(ex::StudyKind kind, const Overrides& o) {
  ex::StudyConfig cfg = o.config.empty() ? ex::default_config(kind) : ex::load_config(o.config, kind);
  if (o.out)
    cfg.output = *o.out;
  if (o.p)
    cfg.disc.p = *o.p;
  if (o.n)
    cfg.disc.n = *o.n;
  if (o.eta)
    cfg.eta = ex::parse_eta(*o.eta);
  if (o.k)
    cfg.k = *o.k;
  if (o.quad_order)
    cfg.disc.quad_order = *o.quad_order;
  if (o.quad_order_potential)
    cfg.disc.quad_order_potential = *o.quad_order_potential;
  if (o.dense_threshold)
    cfg.solver.dense_threshold = *o.dense_threshold;
  if (o.tol)
    cfg.solver.tol = *o.tol;
  if (o.seed)
    cfg.solver.seed = *o.seed;
  if (o.growth)
    cfg.disc.growth = *o.growth;
  if (o.reference) {
    ex::ReferenceSource src = cfg.reference.value_or(ex::ReferenceSource{});
    src.file = *o.reference;
    cfg.reference = src;
  }
  if (o.export_matrices)
    cfg.export_matrices = true;
  cfg.validate();
  return cfg;
}

void print_values(const char* label, const std::vector<double>& v) {
  std::printf("%s", label);
  for (double x : v)
    std::printf(" %.12g", x);
  std::printf("\n");
}

int run(ex::StudyKind kind, const ex::StudyConfig& cfg) {
  std::filesystem::create_directories(cfg.output);
  switch (kind) {
  case ex::StudyKind::solve: {
    std::vector<double> ref;
    if (cfg.reference)
      ref = ex::load_reference(cfg);
    const auto out = ex::run_solve(cfg, ref);
    out.write(cfg, cfg.output);
    print_values("eigenvalues:", out.result.eigenvalues);
    if (!out.errors.empty())
      print_values("errors:", out.errors);
    break;
  }
  case ex::StudyKind::reference: {
    if (cfg.reference && cfg.reference->file) {
      print_values("eigenvalues:", ex::load_reference(cfg));
      break;
    }
    const auto spec = ex::reference_spec(cfg);
    const auto dir =
        cfg.reference->cache_dir.empty() ? cfg.output / "cache" : cfg.reference->cache_dir;
    const auto r = ex::run_reference(spec, dir, cfg.solver);
    std::filesystem::copy_file(r.path, cfg.output / "reference.txt",
                               std::filesystem::copy_options::overwrite_existing);
    std::printf("hash: %s%s\n", r.hash.c_str(), r.from_cache ? " (cached)" : "");
    print_values("eigenvalues:", r.eigenvalues);
    break;
  }
  case ex::StudyKind::eta_sweep: {
    const auto res = ex::eta_sweep(cfg, ex::load_reference(cfg));
    res.write(cfg.output);
    for (const auto& row : res.rows) {
      std::printf("eta=%-12.6g", row.eta);
      if (row.failed)
        std::printf(" failed");
      for (double e : row.errors)
        std::printf(" %.3e", e);
      std::printf("\n");
    }
    break;
  }
  case ex::StudyKind::convergence: {
    const auto res = ex::convergence_study(cfg, ex::load_reference(cfg));
    res.write(cfg.output);
    for (const auto& f : res.fits)
      std::printf("eta=%-12.6g lambda%d order=%.3f%s\n", f.eta, f.index, f.fit.order,
                  f.fit.valid ? "" : " (invalid)");
    break;
  }
  case ex::StudyKind::domain_study: {
    const auto res = ex::domain_study(cfg, ex::load_reference(cfg));
    res.write(cfg.output);
    for (std::size_t i = 0; i < res.envelope_x.size(); ++i)
      std::printf("x=%-6g e=%.3e%s\n", res.envelope_x[i], res.envelope_error[i],
                  res.truncation_dominated[i] ? "" : " (excluded)");
    std::printf("fit: log10 e = %.3f x %+.3f (%zu points)\n", res.fit.slope, res.fit.intercept,
                res.fit.points);
    break;
  }
  case ex::StudyKind::three_body: {
    const auto res = ex::three_body(cfg, ex::load_reference(cfg));
    res.write(cfg.output);
    for (const auto& row : res.rows) {
      std::printf("%-8s p=%d eta=%-10.6g", row.method.name.c_str(), row.method.p,
                  row.method.eta);
      for (double l : row.eigenvalues)
        std::printf(" %.10f", l);
      for (double e : row.errors)
        std::printf(" %.2e", e);
      std::printf("\n");
    }
    break;
  }
  case ex::StudyKind::bench: {
    const auto res = ex::bench(cfg);
    res.write(cfg.output);
    for (const auto& r : res.rows)
      std::printf("%-8s %dD n=%-5zu %.6fs (rel std %.2f) iterations=%d\n", r.method.c_str(),
                  r.dimension, r.n, r.seconds, r.rel_std, r.iterations);
    break;
  }
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"B-spline Galerkin solver for two- and three-body bound states"};
  app.require_subcommand(1);

  const std::pair<ex::StudyKind, const char*> commands[] = {
      {ex::StudyKind::solve, "solve one discretization"},
      {ex::StudyKind::reference, "compute or load reference eigenvalues"},
      {ex::StudyKind::eta_sweep, "errors over a grid of softness values"},
      {ex::StudyKind::convergence, "errors and fitted orders over mesh refinement"},
      {ex::StudyKind::domain_study, "errors over truncated domain sizes"},
      {ex::StudyKind::three_body, "FEM/softFEM/IGA/softIGA eigenvalue table"},
      {ex::StudyKind::bench, "serial wall-time comparison of the four methods"},
  };
  Overrides overrides;
  std::vector<std::pair<CLI::App*, ex::StudyKind>> subs;
  for (const auto& [kind, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(ex::to_string(kind)), help);
    add_common(sub, overrides);
    subs.emplace_back(sub, kind);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  ex::StudyKind kind = ex::StudyKind::solve;
  for (const auto& [sub, k] : subs)
    if (sub->parsed())
      kind = k;

  try {
    return run(kind, build_config(kind, overrides));
  } catch (const ex::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const softiga::InvalidArgument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kConfig;
  } catch (const ex::ReferenceMissing& e) {
    std::fprintf(stderr, "reference missing: %s\n", e.what());
    return kReference;
  } catch (const softiga::SoftnessTooLarge& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolver;
  } catch (const softiga::Error& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
