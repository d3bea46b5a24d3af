#include "softiga/band_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "softiga/error.hpp"

namespace softiga {

std::vector<double> SymBandMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_)
    throw InvalidArgument("SymBandMatrix::multiply: size mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j < i; ++j) {
      const double a = data_[slot(i, j)];
      y[i] += a * x[j];
      y[j] += a * x[i];
    }
    y[i] += data_[slot(i, i)] * x[i];
  }
  return y;
}

double SymBandMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  const std::size_t j0 = i > bw_ ? i - bw_ : 0;
  const std::size_t j1 = std::min(n_ - 1, i + bw_);
  for (std::size_t j = j0; j <= j1; ++j)
    s += (*this)(i, j);
  return s;
}

SymBandMatrix SymBandMatrix::scaled(double s) const {
  SymBandMatrix out = *this;
  for (double& v : out.data_)
    v *= s;
  return out;
}

SymBandMatrix SymBandMatrix::plus_scaled(const SymBandMatrix& other, double s) const {
  if (other.n_ != n_)
    throw InvalidArgument("SymBandMatrix::plus_scaled: dimension mismatch");
  SymBandMatrix out(n_, std::max(bw_, other.bw_));
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > out.bw_ ? i - out.bw_ : 0;
    for (std::size_t j = j0; j <= i; ++j)
      out.ref(i, j) = (*this)(i, j) + s * other(i, j);
  }
  return out;
}

SymBandMatrix SymBandMatrix::block(std::size_t first, std::size_t count) const {
  if (first + count > n_)
    throw InvalidArgument("SymBandMatrix::block: range out of bounds");
  SymBandMatrix out(count, bw_);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j <= i; ++j)
      out.ref(i, j) = (*this)(first + i, first + j);
  }
  return out;
}

Eigen::MatrixXd SymBandMatrix::to_dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_),
                                            static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      const double v = data_[slot(i, j)];
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return a;
}

SparseMatrix SymBandMatrix::to_sparse() const {
  using Triplet = Eigen::Triplet<double, int>;
  std::vector<Triplet> trips;
  trips.reserve(n_ * (2 * bw_ + 1));
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      const double v = data_[slot(i, j)];
      trips.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
      if (i != j)
        trips.emplace_back(static_cast<int>(j), static_cast<int>(i), v);
    }
  }
  SparseMatrix a(static_cast<int>(n_), static_cast<int>(n_));
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

double SymBandMatrix::max_abs_difference(const SymBandMatrix& other) const {
  if (other.n_ != n_)
    throw InvalidArgument("SymBandMatrix::max_abs_difference: dimension mismatch");
  const std::size_t bw = std::max(bw_, other.bw_);
  double d = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw ? i - bw : 0;
    for (std::size_t j = j0; j <= i; ++j)
      d = std::max(d, std::abs((*this)(i, j) - other(i, j)));
  }
  return d;
}

double SymBandMatrix::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + bw_);
    for (std::size_t j = j0; j <= j1; ++j)
      s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

} // namespace softiga
