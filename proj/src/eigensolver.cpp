#include "softiga/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "softiga/error.hpp"

namespace softiga {

namespace {

using Vector = Eigen::VectorXd;

double norm_inf(const SparseMatrix& a) {
  // Column sums equal row sums for a symmetric matrix.
  double m = 0.0;
  for (int col = 0; col < a.outerSize(); ++col) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(a, col); it; ++it)
      s += std::abs(it.value());
    m = std::max(m, s);
  }
  return m;
}

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, j) < 0.0)
      vectors.col(j) *= -1.0;
  }
}

void fill_residuals(EigenResult& r, const SparseMatrix& k, const SparseMatrix& m) {
  r.residuals.resize(r.shifted.size());
  for (std::size_t j = 0; j < r.shifted.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    const Vector res = k * r.vectors.col(col) - r.shifted[j] * (m * r.vectors.col(col));
    r.residuals[j] = res.norm();
  }
}

EigenResult solve_dense(const SparseMatrix& k, const SparseMatrix& m, int nev, double gamma0,
                        const SolverOptions& opts) {
  const Eigen::MatrixXd kd(k);
  const Eigen::MatrixXd md(m);
  if (Eigen::LLT<Eigen::MatrixXd>(kd).info() != Eigen::Success)
    throw SoftnessTooLarge("stiffness matrix is not positive definite (softness parameter too large)");
  if (Eigen::LLT<Eigen::MatrixXd>(md).info() != Eigen::Success)
    throw SingularMass("mass matrix is not positive definite");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      kd, md, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
    throw NoConvergence("dense generalized eigensolver failed");

  EigenResult r;
  r.dense = true;
  r.stiffness_norm = norm_inf(k);
  r.vectors = es.eigenvectors().leftCols(nev);
  for (int j = 0; j < nev; ++j) {
    r.shifted.push_back(es.eigenvalues()(j));
    r.eigenvalues.push_back(es.eigenvalues()(j) - gamma0);
  }
  fix_signs(r.vectors);
  fill_residuals(r, k, m);
  for (double res : r.residuals) {
    if (!(res <= opts.tol * r.stiffness_norm))
      throw NoConvergence("dense eigenpair residual above tolerance");
  }
  return r;
}

// Lanczos on the operator K^{-1} M, self-adjoint in the M inner product. Its
// largest eigenvalues theta are 1/mu for the smallest mu.
EigenResult solve_lanczos(const SparseMatrix& k, const SparseMatrix& m, int nev, double gamma0,
                          const SolverOptions& opts) {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> kfact(k);
  if (kfact.info() != Eigen::Success)
    throw SoftnessTooLarge("stiffness matrix is not positive definite (softness parameter too large)");
  {
    Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> mfact(m);
    if (mfact.info() != Eigen::Success)
      throw SingularMass("mass matrix is not positive definite");
  }

  const Eigen::Index n = k.rows();
  const int cap = static_cast<int>(
      std::min<Eigen::Index>(opts.max_iterations > 0 ? opts.max_iterations : std::max(300, 50 * nev), n));
  const double knorm = norm_inf(k);

  // Basis storage grows on demand; the cap may be far above the steps used.
  Eigen::MatrixXd v(n, std::min(cap + 1, 64));  // Lanczos basis, M-orthonormal
  Eigen::MatrixXd mv(n, v.cols());              // M * basis
  auto reserve = [&](int cols) {
    if (cols <= v.cols())
      return;
    const auto grown = std::min<Eigen::Index>(cap + 1, std::max<Eigen::Index>(cols, 2 * v.cols()));
    v.conservativeResize(Eigen::NoChange, grown);
    mv.conservativeResize(Eigen::NoChange, grown);
  };
  std::vector<double> alpha, beta;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto random_start = [&](int j) {
    Vector w(n);
    for (Eigen::Index i = 0; i < n; ++i)
      w(i) = unif(rng);
    for (int pass = 0; pass < 2 && j > 0; ++pass)
      w -= v.leftCols(j) * (mv.leftCols(j).transpose() * w);
    return w;
  };

  Vector w = random_start(0);
  {
    const Vector mw = m * w;
    const double nrm = std::sqrt(w.dot(mw));
    v.col(0) = w / nrm;
    mv.col(0) = mw / nrm;
  }

  EigenResult r;
  r.stiffness_norm = knorm;
  int next_check = nev;
  for (int j = 0; j < cap; ++j) {
    w = kfact.solve(Vector(mv.col(j)));
    const double a = mv.col(j).dot(w);
    alpha.push_back(a);
    // Full reorthogonalization (twice) against the whole basis.
    for (int pass = 0; pass < 2; ++pass)
      w -= v.leftCols(j + 1) * (mv.leftCols(j + 1).transpose() * w);
    Vector mw = m * w;
    double b = std::sqrt(std::max(w.dot(mw), 0.0));
    const bool breakdown = b <= 1e-14 * std::abs(a);
    const int steps = j + 1;

    if (steps >= next_check || breakdown || steps == cap) {
      next_check = steps + std::max(2, steps / 10);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
      for (int i = 0; i < steps; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < steps) {
          t(i, i + 1) = beta[static_cast<std::size_t>(i)];
          t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
      }
      tri.compute(t);
      const int avail = std::min(nev, steps);
      bool estimates_ok = avail == nev;
      for (int i = 0; i < avail && estimates_ok; ++i) {
        const int col = steps - 1 - i;
        const double theta = tri.eigenvalues()(col);
        const double est = std::abs(b * tri.eigenvectors()(steps - 1, col));
        if (!(theta > 0.0) || est > 1e-2 * opts.tol * theta)
          estimates_ok = false;
      }
      if (estimates_ok || breakdown || steps == cap) {
        r.shifted.clear();
        r.vectors.resize(n, avail);
        for (int i = 0; i < avail; ++i) {
          const int col = steps - 1 - i;
          r.shifted.push_back(1.0 / tri.eigenvalues()(col));
          Vector y = v.leftCols(steps) * tri.eigenvectors().col(col);
          y /= std::sqrt(y.dot(m * y));
          r.vectors.col(i) = y;
        }
        r.iterations = steps;
        fill_residuals(r, k, m);
        bool converged = avail == nev;
        for (double res : r.residuals)
          converged = converged && res <= opts.tol * knorm;
        if (converged)
          break;
        if (steps == cap)
          throw NoConvergence("Lanczos reached " + std::to_string(cap) +
                              " steps without meeting the residual tolerance");
      }
    }

    reserve(j + 2);
    if (breakdown) {
      // Invariant subspace found before convergence: continue from a fresh direction.
      w = random_start(j + 1);
      mw = m * w;
      b = 0.0;
      const double nrm = std::sqrt(w.dot(mw));
      w /= nrm;
      mw /= nrm;
      beta.push_back(b);
      v.col(j + 1) = w;
      mv.col(j + 1) = mw;
      continue;
    }
    beta.push_back(b);
    v.col(j + 1) = w / b;
    mv.col(j + 1) = mw / b;
  }

  for (double mu : r.shifted)
    r.eigenvalues.push_back(mu - gamma0);
  fix_signs(r.vectors);
  return r;
}

} // namespace

EigenResult solve_smallest(const SparseMatrix& stiffness, const SparseMatrix& mass, int k,
                           double gamma0, const SolverOptions& opts) {
  if (stiffness.rows() != stiffness.cols() || mass.rows() != mass.cols() ||
      stiffness.rows() != mass.rows())
    throw InvalidArgument("solve_smallest: matrix dimensions do not match");
  if (k < 1 || k > stiffness.rows())
    throw InvalidArgument("solve_smallest: k must be in [1, N]");
  if (static_cast<std::size_t>(stiffness.rows()) <= opts.dense_threshold)
    return solve_dense(stiffness, mass, k, gamma0, opts);
  return solve_lanczos(stiffness, mass, k, gamma0, opts);
}

EigenResult solve_smallest(const SymBandMatrix& stiffness, const SymBandMatrix& mass, int k,
                           double gamma0, const SolverOptions& opts) {
  return solve_smallest(stiffness.to_sparse(), mass.to_sparse(), k, gamma0, opts);
}

std::vector<ErrorRecord> eigen_error(std::span<const double> computed,
                                     std::span<const double> reference) {
  if (reference.size() < computed.size())
    throw InvalidArgument("eigen_error: reference has " + std::to_string(reference.size()) +
                          " values, " + std::to_string(computed.size()) + " needed");
  std::vector<ErrorRecord> out;
  out.reserve(computed.size());
  for (std::size_t j = 0; j < computed.size(); ++j)
    out.push_back({j, computed[j], reference[j], std::abs(computed[j] - reference[j])});
  return out;
}

std::vector<ErrorRecord> eigen_error(const EigenResult& result, std::span<const double> reference) {
  return eigen_error(std::span<const double>(result.eigenvalues), reference);
}

} // namespace softiga
