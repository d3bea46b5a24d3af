#include "softiga/experiments/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace softiga::experiments {

namespace {

using nlohmann::json;

constexpr std::pair<StudyKind, std::string_view> kKindNames[] = {
    {StudyKind::solve, "solve"},
    {StudyKind::reference, "reference"},
    {StudyKind::eta_sweep, "eta-sweep"},
    {StudyKind::convergence, "convergence"},
    {StudyKind::domain_study, "domain-study"},
    {StudyKind::three_body, "three-body"},
    {StudyKind::bench, "bench"},
};

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  if (!obj.is_object())
    throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

double eta_value(const json& v) {
  if (v.is_number())
    return v.get<double>();
  if (v.is_string())
    return parse_eta(v.get<std::string>());
  throw ConfigError("softness value must be a number or a fraction string");
}

std::vector<double> eta_list(const json& v) {
  if (!v.is_array())
    throw ConfigError("expected an array of softness values");
  std::vector<double> out;
  for (const auto& e : v)
    out.push_back(eta_value(e));
  return out;
}

void read_problem(const json& j, ProblemSpec& p) {
  check_keys(j, {"dimension", "half_width", "shape", "beta", "mass_ratio", "gamma0"}, "problem");
  if (j.contains("dimension"))
    p.dimension = j["dimension"].get<int>();
  if (j.contains("half_width"))
    p.half_width = j["half_width"].get<double>();
  if (j.contains("shape")) {
    try {
      p.shape = parse_potential_shape(j["shape"].get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("beta"))
    p.beta = j["beta"].get<double>();
  if (j.contains("mass_ratio"))
    p.mass_ratio = j["mass_ratio"].get<double>();
  if (j.contains("gamma0")) {
    if (j["gamma0"].is_null())
      p.gamma0.reset();
    else
      p.gamma0 = j["gamma0"].get<double>();
  }
}

void read_discretization(const json& j, Discretization& d) {
  check_keys(j, {"p", "n", "growth", "quad_order", "quad_order_potential"}, "discretization");
  if (j.contains("p"))
    d.p = j["p"].get<int>();
  if (j.contains("n"))
    d.n = j["n"].get<std::size_t>();
  if (j.contains("growth"))
    d.growth = j["growth"].get<double>();
  if (j.contains("quad_order"))
    d.quad_order = j["quad_order"].get<int>();
  if (j.contains("quad_order_potential"))
    d.quad_order_potential = j["quad_order_potential"].get<int>();
}

void read_reference(const json& j, StudyConfig& cfg) {
  if (j.is_null()) {
    cfg.reference.reset();
    return;
  }
  check_keys(j, {"file", "p", "n", "growth", "half_width", "cache_dir"}, "reference");
  ReferenceSource r = cfg.reference.value_or(ReferenceSource{});
  if (j.contains("file")) {
    if (j["file"].is_null())
      r.file.reset();
    else
      r.file = j["file"].get<std::string>();
  }
  if (j.contains("p"))
    r.p = j["p"].get<int>();
  if (j.contains("n"))
    r.n = j["n"].get<std::size_t>();
  if (j.contains("growth"))
    r.growth = j["growth"].get<double>();
  if (j.contains("half_width")) {
    if (j["half_width"].is_null())
      r.half_width.reset();
    else
      r.half_width = j["half_width"].get<double>();
  }
  if (j.contains("cache_dir"))
    r.cache_dir = j["cache_dir"].is_null() ? std::filesystem::path{}
                                            : std::filesystem::path(j["cache_dir"].get<std::string>());
  cfg.reference = r;
}

void read_solver(const json& j, SolverOptions& s) {
  check_keys(j, {"tol", "dense_threshold", "max_iterations", "seed"}, "solver");
  if (j.contains("tol"))
    s.tol = j["tol"].get<double>();
  if (j.contains("dense_threshold"))
    s.dense_threshold = j["dense_threshold"].get<std::size_t>();
  if (j.contains("max_iterations"))
    s.max_iterations = j["max_iterations"].get<int>();
  if (j.contains("seed"))
    s.seed = j["seed"].get<std::uint64_t>();
}

void read_bench(const json& j, BenchSettings& b) {
  check_keys(j,
             {"n_1d", "n_2d", "repeats", "problem_1d", "problem_2d", "eta_fem_1d", "eta_iga_1d",
              "eta_fem_2d", "eta_iga_2d"},
             "bench");
  if (j.contains("n_1d"))
    b.n_1d = j["n_1d"].get<std::vector<std::size_t>>();
  if (j.contains("n_2d"))
    b.n_2d = j["n_2d"].get<std::vector<std::size_t>>();
  if (j.contains("repeats"))
    b.repeats = j["repeats"].get<int>();
  if (j.contains("problem_1d"))
    read_problem(j["problem_1d"], b.problem_1d);
  if (j.contains("problem_2d"))
    read_problem(j["problem_2d"], b.problem_2d);
  if (j.contains("eta_fem_1d"))
    b.eta_fem_1d = eta_value(j["eta_fem_1d"]);
  if (j.contains("eta_iga_1d"))
    b.eta_iga_1d = eta_value(j["eta_iga_1d"]);
  if (j.contains("eta_fem_2d"))
    b.eta_fem_2d = eta_value(j["eta_fem_2d"]);
  if (j.contains("eta_iga_2d"))
    b.eta_iga_2d = eta_value(j["eta_iga_2d"]);
}

ProblemSpec two_body(PotentialShape shape, double beta) {
  ProblemSpec p;
  p.dimension = 1;
  p.half_width = 20.0;
  p.shape = shape;
  p.beta = beta;
  return p;
}

ProblemSpec three_body_problem(double mass_ratio, double beta) {
  ProblemSpec p;
  p.dimension = 2;
  p.half_width = 20.0;
  p.shape = PotentialShape::Gaussian;
  p.beta = beta;
  p.mass_ratio = mass_ratio;
  return p;
}

void check_softness(int p, double eta, std::string_view what) {
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw ConfigError(std::string(what) + ": softness must be finite and >= 0");
  if (eta != 0.0 && (p < 1 || p > 2))
    throw ConfigError(std::string(what) + ": softness is only available for p = 1, 2");
}

} // namespace

std::string_view to_string(StudyKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind)
      return name;
  return "unknown";
}

StudyKind parse_study_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name)
      return k;
  throw ConfigError("unknown study kind '" + std::string(name) + "'");
}

double parse_eta(std::string_view text) {
  const std::string s(text);
  auto number = [&](const std::string& part) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size())
      throw ConfigError("cannot parse softness value '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos)
    return number(s);
  const double den = number(s.substr(slash + 1));
  if (den == 0.0)
    throw ConfigError("zero denominator in softness value '" + s + "'");
  return number(s.substr(0, slash)) / den;
}

std::vector<MethodSpec> standard_methods(double eta_fem, double eta_iga) {
  return {{"FEM", 1, 0.0}, {"softFEM", 1, eta_fem}, {"IGA", 2, 0.0}, {"softIGA", 2, eta_iga}};
}

StudyConfig default_config(StudyKind kind) {
  StudyConfig cfg;
  cfg.kind = kind;
  cfg.problem = two_body(PotentialShape::LorentzianCube, 5.0);
  cfg.disc = {2, 400, 0.0, 0, 0};
  cfg.eta = 1.0 / 720.0;
  cfg.bench.problem_1d = two_body(PotentialShape::LorentzianCube, 5.0);
  cfg.bench.problem_2d = three_body_problem(20.0, 0.344595351);

  switch (kind) {
  case StudyKind::solve:
    break;
  case StudyKind::reference:
    cfg.reference = ReferenceSource{};
    break;
  case StudyKind::eta_sweep:
    cfg.disc.p = 1;
    for (int i = 0; i <= 16; ++i)
      cfg.eta_grid.push_back(0.01 * i);
    cfg.eta_grid.push_back(1.0 / 24.0);
    cfg.eta_grid.push_back(1.0 / 12.0);
    std::sort(cfg.eta_grid.begin(), cfg.eta_grid.end());
    cfg.reference = ReferenceSource{};
    break;
  case StudyKind::convergence:
    cfg.problem = two_body(PotentialShape::Gaussian, 1.0);
    cfg.n_list = {120, 160, 200, 240, 320, 400, 500, 640, 800, 1000, 1600, 2000, 4000};
    cfg.eta_grid = {0.0, 1.0 / 1440.0, 1.0 / 720.0};
    cfg.reference = ReferenceSource{};
    break;
  case StudyKind::domain_study:
    cfg.problem = two_body(PotentialShape::Gaussian, 1.0);
    cfg.eta = 0.0;
    cfg.k = 1;
    for (int x = 4; x <= 14; ++x)
      cfg.half_widths.push_back(x);
    cfg.h_list = {0.2, 0.1, 0.05, 0.025, 0.0125};
    cfg.reference = ReferenceSource{};
    cfg.reference->half_width = 20.0;
    break;
  case StudyKind::three_body:
    cfg.problem = three_body_problem(1.0, 1.0);
    cfg.disc = {2, 80, 0.05, 0, 0};
    cfg.methods = standard_methods(1.0 / 12.0, 1.0 / 720.0);
    cfg.reference = ReferenceSource{std::nullopt, 5, 100, 0.1, std::nullopt, {}};
    break;
  case StudyKind::bench:
    cfg.bench.n_1d = {80, 400, 800};
    cfg.bench.n_2d = {20, 40};
    break;
  }
  return cfg;
}

StudyConfig parse_config(std::string_view json_text, std::optional<StudyKind> kind) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");

  std::optional<StudyKind> declared;
  if (j.contains("study"))
    declared = parse_study_kind(j["study"].get<std::string>());
  if (kind && declared && *kind != *declared)
    throw ConfigError("config declares study '" + std::string(to_string(*declared)) +
                      "' but '" + std::string(to_string(*kind)) + "' was requested");
  if (!kind && !declared)
    throw ConfigError("config does not name a study");

  StudyConfig cfg = default_config(kind ? *kind : *declared);
  try {
    check_keys(j,
               {"study", "problem", "discretization", "eta", "eta_grid", "n_list", "half_widths",
                "h_list", "methods", "k", "reference", "solver", "max_unknowns", "output",
                "grid_points", "export_matrices", "error_floor", "bench"},
               "config");
    if (j.contains("problem"))
      read_problem(j["problem"], cfg.problem);
    if (j.contains("discretization"))
      read_discretization(j["discretization"], cfg.disc);
    if (j.contains("eta"))
      cfg.eta = eta_value(j["eta"]);
    if (j.contains("eta_grid"))
      cfg.eta_grid = eta_list(j["eta_grid"]);
    if (j.contains("n_list"))
      cfg.n_list = j["n_list"].get<std::vector<std::size_t>>();
    if (j.contains("half_widths"))
      cfg.half_widths = j["half_widths"].get<std::vector<double>>();
    if (j.contains("h_list"))
      cfg.h_list = j["h_list"].get<std::vector<double>>();
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j["methods"]) {
        check_keys(m, {"name", "p", "eta"}, "methods");
        MethodSpec spec;
        spec.name = m.at("name").get<std::string>();
        spec.p = m.at("p").get<int>();
        spec.eta = m.contains("eta") ? eta_value(m["eta"]) : 0.0;
        cfg.methods.push_back(spec);
      }
    }
    if (j.contains("k"))
      cfg.k = j["k"].get<int>();
    if (j.contains("reference"))
      read_reference(j["reference"], cfg);
    if (j.contains("solver"))
      read_solver(j["solver"], cfg.solver);
    if (j.contains("max_unknowns"))
      cfg.max_unknowns = j["max_unknowns"].get<std::size_t>();
    if (j.contains("output"))
      cfg.output = j["output"].get<std::string>();
    if (j.contains("grid_points"))
      cfg.grid_points = j["grid_points"].get<std::size_t>();
    if (j.contains("export_matrices"))
      cfg.export_matrices = j["export_matrices"].get<bool>();
    if (j.contains("error_floor"))
      cfg.error_floor = j["error_floor"].get<double>();
    if (j.contains("bench"))
      read_bench(j["bench"], cfg.bench);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return cfg;
}

StudyConfig load_config(const std::filesystem::path& path, std::optional<StudyKind> kind) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), kind);
}

void StudyConfig::validate() const {
  try {
    problem.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (disc.p < 1)
    throw ConfigError("degree p must be >= 1");
  if (disc.n < 1)
    throw ConfigError("element count n must be >= 1");
  if (!(disc.growth >= 0.0))
    throw ConfigError("mesh growth must be >= 0");
  if (disc.growth > 0.0 && disc.n % 2 != 0)
    throw ConfigError("graded meshes need an even element count");
  if (disc.quad_order < 0 || disc.quad_order_potential < 0)
    throw ConfigError("quadrature orders must be >= 0");
  if (k < 1)
    throw ConfigError("k must be >= 1");
  if (!(solver.tol > 0.0))
    throw ConfigError("solver tolerance must be > 0");
  if (!(error_floor > 0.0))
    throw ConfigError("error floor must be > 0");
  if (grid_points < 2)
    throw ConfigError("grid_points must be >= 2");
  check_softness(disc.p, eta, "eta");

  switch (kind) {
  case StudyKind::solve:
  case StudyKind::reference:
    break;
  case StudyKind::eta_sweep:
    if (eta_grid.empty())
      throw ConfigError("eta-sweep needs a non-empty eta_grid");
    for (double e : eta_grid)
      check_softness(disc.p, e, "eta_grid");
    break;
  case StudyKind::convergence:
    if (n_list.size() < 4)
      throw ConfigError("convergence needs at least 4 mesh sizes");
    if (eta_grid.empty())
      throw ConfigError("convergence needs a non-empty eta_grid");
    for (double e : eta_grid)
      check_softness(disc.p, e, "eta_grid");
    for (std::size_t n : n_list)
      if (n < 1 || (disc.growth > 0.0 && n % 2 != 0))
        throw ConfigError("invalid element count in n_list");
    break;
  case StudyKind::domain_study:
    if (half_widths.empty() || h_list.empty())
      throw ConfigError("domain-study needs half_widths and h_list");
    for (std::size_t i = 0; i < half_widths.size(); ++i) {
      if (!(half_widths[i] > 0.0) || (i > 0 && !(half_widths[i] > half_widths[i - 1])))
        throw ConfigError("half_widths must be positive and increasing");
    }
    for (double h : h_list)
      if (!(h > 0.0))
        throw ConfigError("h_list entries must be > 0");
    if (problem.dimension != 1)
      throw ConfigError("domain-study is one-dimensional");
    break;
  case StudyKind::three_body:
    if (problem.dimension != 2)
      throw ConfigError("three-body needs a two-dimensional problem");
    if (methods.empty())
      throw ConfigError("three-body needs at least one method");
    for (const auto& m : methods) {
      if (m.p < 1)
        throw ConfigError("method " + m.name + ": p must be >= 1");
      check_softness(m.p, m.eta, "method " + m.name);
    }
    break;
  case StudyKind::bench:
    if (bench.repeats < 1)
      throw ConfigError("bench repeats must be >= 1");
    try {
      bench.problem_1d.validate();
      bench.problem_2d.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    if (bench.problem_1d.dimension != 1 || bench.problem_2d.dimension != 2)
      throw ConfigError("bench problems must be one- and two-dimensional");
    break;
  }
}

AssemblyOptions StudyConfig::assembly_options() const {
  AssemblyOptions o;
  o.quad_order = disc.quad_order;
  o.quad_order_potential = disc.quad_order_potential;
  o.max_unknowns = max_unknowns;
  return o;
}

} // namespace softiga::experiments
