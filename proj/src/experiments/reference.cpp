#include "softiga/experiments/reference.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "softiga/experiments/csv.hpp"
#include "softiga/experiments/studies.hpp"

namespace softiga::experiments {

namespace {

constexpr std::string_view kSpecPrefix = "# spec: ";

std::string stored_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(kSpecPrefix, 0) == 0)
      return line.substr(kSpecPrefix.size());
  return {};
}

double study_mesh_size(const StudyConfig& cfg) {
  auto size = [&](std::size_t n) {
    return make_mesh(cfg.problem.half_width, n, cfg.disc.growth).max_element_size();
  };
  switch (cfg.kind) {
  case StudyKind::convergence: {
    double h = std::numeric_limits<double>::infinity();
    for (std::size_t n : cfg.n_list)
      h = std::min(h, size(n));
    return h;
  }
  case StudyKind::domain_study:
    return *std::min_element(cfg.h_list.begin(), cfg.h_list.end());
  default:
    return size(cfg.disc.n);
  }
}

int study_degree(const StudyConfig& cfg) {
  int p = cfg.disc.p;
  if (cfg.kind == StudyKind::three_body) {
    p = 0;
    for (const auto& m : cfg.methods)
      p = std::max(p, m.p);
  }
  return p;
}

} // namespace

std::string canonical_text(const ReferenceSpec& s) {
  std::ostringstream out;
  const bool two_d = s.problem.dimension == 2;
  out << "dimension=" << s.problem.dimension << ";half_width=" << format_number(s.problem.half_width)
      << ";shape=" << to_string(s.problem.shape) << ";beta=" << format_number(s.problem.beta)
      << ";mass_ratio=" << format_number(two_d ? s.problem.mass_ratio : 1.0)
      << ";gamma0=" << format_number(shift(s.problem)) << ";p=" << s.p << ";n=" << s.n
      << ";growth=" << format_number(s.growth) << ";k=" << s.k << ";quad_order=" << s.quad_order
      << ";quad_order_potential=" << s.quad_order_potential << ";tol=" << format_number(s.tol);
  return out.str();
}

std::string content_hash(const ReferenceSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(spec)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<double> read_reference_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ReferenceMissing("reference file not found: " + path.string());
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    const auto last = line.find_last_not_of(" \t\r");
    try {
      values.push_back(parse_number(line.substr(first, last - first + 1)));
    } catch (const Error&) {
      throw ReferenceMissing("reference file " + path.string() + " has a malformed line: " + line);
    }
  }
  if (values.empty())
    throw ReferenceMissing("reference file " + path.string() + " holds no eigenvalues");
  return values;
}

void write_reference_file(const std::filesystem::path& path, const ReferenceSpec& spec,
                          const std::vector<double>& eigenvalues) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  out << "# softiga reference eigenvalues\n" << kSpecPrefix << canonical_text(spec) << '\n';
  char buf[32];
  for (double v : eigenvalues) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << buf << '\n';
  }
}

ReferenceResult run_reference(const ReferenceSpec& spec, const std::filesystem::path& cache_dir,
                              const SolverOptions& solver) {
  ReferenceResult r;
  r.hash = content_hash(spec);
  r.path = cache_dir / ("reference-" + r.hash + ".txt");
  if (std::filesystem::exists(r.path) && stored_spec(r.path) == canonical_text(spec)) {
    r.eigenvalues = read_reference_file(r.path);
    if (r.eigenvalues.size() >= static_cast<std::size_t>(spec.k)) {
      r.from_cache = true;
      return r;
    }
  }
  Discretization disc{spec.p, spec.n, spec.growth, spec.quad_order, spec.quad_order_potential};
  AssemblyOptions assembly;
  assembly.quad_order = spec.quad_order;
  assembly.quad_order_potential = spec.quad_order_potential;
  SolverOptions opts = solver;
  opts.tol = spec.tol;
  const EigenResult res = solve_problem(spec.problem, disc, 0.0, spec.k, assembly, opts);
  write_reference_file(r.path, spec, res.eigenvalues);
  r.eigenvalues = read_reference_file(r.path);
  return r;
}

ReferenceSpec reference_spec(const StudyConfig& cfg) {
  if (!cfg.reference)
    throw ReferenceMissing("no reference configured");
  const ReferenceSource& src = *cfg.reference;
  ReferenceSpec spec;
  spec.problem = cfg.problem;
  if (src.half_width)
    spec.problem.half_width = *src.half_width;
  spec.p = src.p;
  spec.n = src.n;
  spec.growth = src.growth;
  spec.k = cfg.k;
  spec.tol = cfg.solver.tol;
  if (spec.p < 1 || spec.n < 1 || !(spec.growth >= 0.0) || (spec.growth > 0.0 && spec.n % 2))
    throw ConfigError("invalid reference discretization");

  if (cfg.kind != StudyKind::reference && cfg.kind != StudyKind::solve) {
    const int p = study_degree(cfg);
    if (spec.p < p + 2)
      throw ConfigError("reference degree " + std::to_string(spec.p) + " must be at least " +
                        std::to_string(p + 2));
    const double h_ref =
        make_mesh(spec.problem.half_width, spec.n, spec.growth).max_element_size();
    if (!(h_ref < study_mesh_size(cfg)))
      throw ConfigError("reference mesh must be finer than the study meshes");
  }
  return spec;
}

std::vector<double> load_reference(const StudyConfig& cfg) {
  if (!cfg.reference)
    throw ReferenceMissing("no reference configured");
  std::vector<double> values;
  if (cfg.reference->file) {
    values = read_reference_file(*cfg.reference->file);
  } else {
    const auto dir =
        cfg.reference->cache_dir.empty() ? cfg.output / "cache" : cfg.reference->cache_dir;
    values = run_reference(reference_spec(cfg), dir, cfg.solver).eigenvalues;
  }
  if (values.size() < static_cast<std::size_t>(cfg.k))
    throw ReferenceMissing("reference holds " + std::to_string(values.size()) +
                           " eigenvalues, " + std::to_string(cfg.k) + " needed");
  return values;
}

} // namespace softiga::experiments
