#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "softiga/band_matrix.hpp"

namespace softiga {

struct SolverOptions {
  /// Problems with at most this many unknowns use a dense generalized solve.
  std::size_t dense_threshold = 500;
  /// Relative residual tolerance: ||K u - mu M u||_2 <= tol * ||K||_inf.
  double tol = 1e-10;
  /// Lanczos step cap; 0 selects max(300, 50 * k).
  int max_iterations = 0;
  /// Seed of the Lanczos start vector.
  std::uint64_t seed = 0x5eedULL;
};

/// The k smallest eigenpairs of K u = mu M u, reported as lambda = mu - gamma0.
struct EigenResult {
  std::vector<double> eigenvalues;  // physical, ascending
  std::vector<double> shifted;      // mu, ascending
  Eigen::MatrixXd vectors;          // N x k, M-orthonormal, largest-magnitude entry positive
  std::vector<double> residuals;    // ||K u - mu M u||_2
  double stiffness_norm = 0.0;      // ||K||_inf
  int iterations = 0;               // Lanczos steps, 0 for the dense path
  bool dense = false;
};

/// Dense solve for N <= dense_threshold, otherwise shift-invert Lanczos about
/// zero with full M-reorthogonalization. K must be positive definite; a failed
/// Cholesky of K raises SoftnessTooLarge, of M raises SingularMass. Lanczos
/// raises NoConvergence when the step cap is reached before the tolerance.
EigenResult solve_smallest(const SparseMatrix& stiffness, const SparseMatrix& mass, int k,
                           double gamma0, const SolverOptions& opts = {});

EigenResult solve_smallest(const SymBandMatrix& stiffness, const SymBandMatrix& mass, int k,
                           double gamma0, const SolverOptions& opts = {});

/// e_j = |computed_j - reference_j|.
struct ErrorRecord {
  std::size_t index = 0;
  double computed = 0.0;
  double reference = 0.0;
  double error = 0.0;
};

/// Errors of the first computed.size() eigenvalues; the reference must be at least as long.
std::vector<ErrorRecord> eigen_error(std::span<const double> computed,
                                     std::span<const double> reference);
std::vector<ErrorRecord> eigen_error(const EigenResult& result, std::span<const double> reference);

} // namespace softiga
