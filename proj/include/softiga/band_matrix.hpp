#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace softiga {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// Symmetric banded matrix with `bandwidth` off-diagonals, lower band stored
/// row-wise. Symmetry is structural: (i, j) and (j, i) address one slot.
class SymBandMatrix {
public:
  SymBandMatrix() = default;
  SymBandMatrix(std::size_t n, std::size_t bandwidth)
      : n_(n), bw_(bandwidth), data_(n * (bandwidth + 1), 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return bw_; }

  /// Zero outside the band.
  double operator()(std::size_t i, std::size_t j) const {
    if (i < j)
      std::swap(i, j);
    if (i - j > bw_)
      return 0.0;
    return data_[slot(i, j)];
  }

  /// Requires |i - j| <= bandwidth.
  double& ref(std::size_t i, std::size_t j) {
    if (i < j)
      std::swap(i, j);
    return data_[slot(i, j)];
  }

  void add(std::size_t i, std::size_t j, double v) { ref(i, j) += v; }

  std::span<const double> raw() const { return data_; }

  std::vector<double> multiply(std::span<const double> x) const;
  double row_sum(std::size_t i) const;

  SymBandMatrix scaled(double s) const;
  /// this + s * other; the result carries the larger bandwidth.
  SymBandMatrix plus_scaled(const SymBandMatrix& other, double s) const;

  /// Sub-matrix on indices [first, first + count).
  SymBandMatrix block(std::size_t first, std::size_t count) const;

  Eigen::MatrixXd to_dense() const;
  SparseMatrix to_sparse() const;

  double max_abs_difference(const SymBandMatrix& other) const;
  /// Infinity norm (max absolute row sum).
  double norm_inf() const;

private:
  std::size_t slot(std::size_t i, std::size_t j) const { return i * (bw_ + 1) + (i - j); }

  std::size_t n_ = 0;
  std::size_t bw_ = 0;
  std::vector<double> data_;
};

} // namespace softiga
