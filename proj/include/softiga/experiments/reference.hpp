#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "softiga/eigensolver.hpp"
#include "softiga/experiments/config.hpp"

namespace softiga::experiments {

/// A fine discretization whose eigenvalues stand in for the exact ones.
struct ReferenceSpec {
  ProblemSpec problem;
  int p = 7;
  std::size_t n = 5000;
  double growth = 0.0;
  int k = 2;
  int quad_order = 0;
  int quad_order_potential = 0;
  double tol = 1e-10;
};

/// Canonical text of every field that affects the result.
std::string canonical_text(const ReferenceSpec& spec);
/// 64-bit FNV-1a of canonical_text, as 16 hex digits.
std::string content_hash(const ReferenceSpec& spec);

struct ReferenceResult {
  std::vector<double> eigenvalues;
  std::string hash;
  std::filesystem::path path;
  bool from_cache = false;
};

/// Loads <cache_dir>/reference-<hash>.txt if present; otherwise solves and
/// writes it with 12 significant digits.
ReferenceResult run_reference(const ReferenceSpec& spec, const std::filesystem::path& cache_dir,
                              const SolverOptions& solver = {});

/// One eigenvalue per line, '#' comments ignored. Throws ReferenceMissing.
std::vector<double> read_reference_file(const std::filesystem::path& path);
void write_reference_file(const std::filesystem::path& path, const ReferenceSpec& spec,
                          const std::vector<double>& eigenvalues);

/// Reference spec implied by a study configuration; throws ConfigError if it
/// is not finer than the study discretization.
ReferenceSpec reference_spec(const StudyConfig& cfg);

/// Resolves the configured reference (file or cached inline solve).
/// Throws ReferenceMissing if none is configured or the file does not exist.
std::vector<double> load_reference(const StudyConfig& cfg);

} // namespace softiga::experiments
