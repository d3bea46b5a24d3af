#include "softiga/tensor_band_matrix.hpp"

#include <algorithm>

#include "softiga/error.hpp"

namespace softiga {

double TensorBandMatrix::operator()(std::size_t row, std::size_t col) const {
  const std::size_t ix = row / ny_, iy = row % ny_;
  const std::size_t jx = col / ny_, jy = col % ny_;
  const std::size_t ddx = ix > jx ? ix - jx : jx - ix;
  const std::size_t ddy = iy > jy ? iy - jy : jy - iy;
  if (ddx > bx_ || ddy > by_)
    return 0.0;
  return data_[slot(ix, iy, jx, jy)];
}

std::vector<double> TensorBandMatrix::multiply(std::span<const double> x) const {
  if (x.size() != size())
    throw InvalidArgument("TensorBandMatrix::multiply: size mismatch");
  std::vector<double> y(size(), 0.0);
  for (std::size_t ix = 0; ix < nx_; ++ix) {
    const std::size_t jx0 = ix > bx_ ? ix - bx_ : 0;
    const std::size_t jx1 = std::min(nx_ - 1, ix + bx_);
    for (std::size_t iy = 0; iy < ny_; ++iy) {
      const std::size_t jy0 = iy > by_ ? iy - by_ : 0;
      const std::size_t jy1 = std::min(ny_ - 1, iy + by_);
      double s = 0.0;
      for (std::size_t jx = jx0; jx <= jx1; ++jx)
        for (std::size_t jy = jy0; jy <= jy1; ++jy)
          s += data_[slot(ix, iy, jx, jy)] * x[jx * ny_ + jy];
      y[ix * ny_ + iy] = s;
    }
  }
  return y;
}

SparseMatrix TensorBandMatrix::to_sparse() const {
  // Rows of a symmetric matrix double as its columns, so the compressed
  // row layout is written straight into the column-major arrays.
  const auto n = static_cast<int>(size());
  std::vector<int> outer(size() + 1, 0);
  for (std::size_t ix = 0; ix < nx_; ++ix) {
    const std::size_t cx = std::min(nx_ - 1, ix + bx_) - (ix > bx_ ? ix - bx_ : 0) + 1;
    for (std::size_t iy = 0; iy < ny_; ++iy) {
      const std::size_t cy = std::min(ny_ - 1, iy + by_) - (iy > by_ ? iy - by_ : 0) + 1;
      outer[ix * ny_ + iy + 1] = static_cast<int>(cx * cy);
    }
  }
  for (std::size_t r = 0; r < size(); ++r)
    outer[r + 1] += outer[r];

  SparseMatrix a(n, n);
  a.resizeNonZeros(outer.back());
  std::copy(outer.begin(), outer.end(), a.outerIndexPtr());
  int* inner = a.innerIndexPtr();
  double* values = a.valuePtr();
  for (std::size_t ix = 0; ix < nx_; ++ix) {
    const std::size_t jx0 = ix > bx_ ? ix - bx_ : 0;
    const std::size_t jx1 = std::min(nx_ - 1, ix + bx_);
    for (std::size_t iy = 0; iy < ny_; ++iy) {
      const std::size_t jy0 = iy > by_ ? iy - by_ : 0;
      const std::size_t jy1 = std::min(ny_ - 1, iy + by_);
      int k = outer[ix * ny_ + iy];
      for (std::size_t jx = jx0; jx <= jx1; ++jx) {
        for (std::size_t jy = jy0; jy <= jy1; ++jy) {
          inner[k] = static_cast<int>(jx * ny_ + jy);
          values[k] = data_[slot(ix, iy, jx, jy)];
          ++k;
        }
      }
    }
  }
  return a;
}

Eigen::MatrixXd kron_dense(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd c(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      c.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return c;
}

} // namespace softiga
