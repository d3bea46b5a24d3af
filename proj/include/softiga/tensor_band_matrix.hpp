#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "softiga/band_matrix.hpp"

namespace softiga {

/// Operator on a tensor-product space of size nx * ny (index ix * ny + iy)
/// whose couplings satisfy |ix - jx| <= bx and |iy - jy| <= by. Every row
/// stores its full (2bx+1) x (2by+1) stencil, including slots that fall
/// outside the index range (kept at zero).
class TensorBandMatrix {
public:
  TensorBandMatrix() = default;
  TensorBandMatrix(std::size_t nx, std::size_t ny, std::size_t bx, std::size_t by)
      : nx_(nx), ny_(ny), bx_(bx), by_(by),
        data_(nx * ny * (2 * bx + 1) * (2 * by + 1), 0.0) {}

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t bx() const { return bx_; }
  std::size_t by() const { return by_; }
  std::size_t size() const { return nx_ * ny_; }
  std::size_t stencil_size() const { return (2 * bx_ + 1) * (2 * by_ + 1); }

  /// Slot of entry ((ix, iy), (jx, jy)); requires the coupling to be in band.
  std::size_t slot(std::size_t ix, std::size_t iy, std::size_t jx, std::size_t jy) const {
    const std::size_t dx = jx + bx_ - ix;
    const std::size_t dy = jy + by_ - iy;
    return (ix * ny_ + iy) * stencil_size() + dx * (2 * by_ + 1) + dy;
  }

  double& ref(std::size_t ix, std::size_t iy, std::size_t jx, std::size_t jy) {
    return data_[slot(ix, iy, jx, jy)];
  }
  double operator()(std::size_t row, std::size_t col) const;

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  std::vector<double> multiply(std::span<const double> x) const;
  SparseMatrix to_sparse() const;

private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::size_t bx_ = 0;
  std::size_t by_ = 0;
  std::vector<double> data_;
};

/// Dense Kronecker product (A kron B), for tests and small problems.
Eigen::MatrixXd kron_dense(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

} // namespace softiga
