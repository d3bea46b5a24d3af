#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "softiga/mesh.hpp"

namespace softiga {

/// Which one-sided limit to take when a point sits on a knot.
enum class Side { left, right };

/// Values and derivatives of the p+1 B-splines supported on one element.
/// Row r holds the r-th derivatives of functions first, first+1, ..., first+p
/// (untrimmed numbering).
class BasisTable {
public:
  BasisTable(std::size_t first, int degree, int max_order)
      : first_(first), degree_(degree), max_order_(max_order),
        data_(static_cast<std::size_t>((max_order + 1) * (degree + 1)), 0.0) {}

  std::size_t first() const { return first_; }
  int degree() const { return degree_; }
  int max_order() const { return max_order_; }

  double operator()(int r, int j) const { return data_[index(r, j)]; }
  double& operator()(int r, int j) { return data_[index(r, j)]; }
  std::span<const double> row(int r) const {
    return {data_.data() + index(r, 0), static_cast<std::size_t>(degree_ + 1)};
  }

private:
  std::size_t index(int r, int j) const {
    return static_cast<std::size_t>(r * (degree_ + 1) + j);
  }

  std::size_t first_;
  int degree_;
  int max_order_;
  std::vector<double> data_;
};

/// Sparse vector over untrimmed basis indices.
struct SparseVector {
  std::vector<std::size_t> index;
  std::vector<double> value;

  double at(std::size_t i) const;
};

/// Maximal-continuity B-spline space on an open knot vector.
///
/// Functions are numbered 0..n+p-1 ("untrimmed"). The first and last are the
/// only ones not vanishing at the domain ends; dropping them gives the
/// homogeneous Dirichlet space of dimension n+p-2 whose functions are numbered
/// 0..n+p-3 ("interior" numbering, interior = untrimmed - 1).
class SplineSpace {
public:
  SplineSpace(int degree, Mesh1D mesh);

  int degree() const { return degree_; }
  const Mesh1D& mesh() const { return mesh_; }
  std::span<const double> knots() const { return knots_; }
  std::size_t num_elements() const { return mesh_.num_elements(); }

  std::size_t untrimmed_dimension() const { return mesh_.num_elements() + degree_; }
  /// Dimension after removing the two boundary-interpolatory functions.
  std::size_t dimension() const { return untrimmed_dimension() - 2; }

  /// Maps an untrimmed index to the interior numbering; empty for the two boundary functions.
  std::optional<std::size_t> interior_index(std::size_t untrimmed) const {
    if (untrimmed == 0 || untrimmed + 1 >= untrimmed_dimension())
      return std::nullopt;
    return untrimmed - 1;
  }

  /// Derivatives 0..max_order at x of the functions supported on `element`,
  /// using that element's polynomial pieces (x may be on the element's closure).
  BasisTable element_table(std::size_t element, double x, int max_order) const;

  /// Same as element_table, with the element located from x and `side`
  /// deciding which piece is used on a knot.
  BasisTable table(double x, int max_order, Side side = Side::right) const;

  /// The (untrimmed index, r-th derivative) pairs of the p+1 functions supported at x.
  std::vector<std::pair<std::size_t, double>> eval_basis(double x, int r,
                                                         Side side = Side::right) const;

  /// Evaluates u(x) = sum_j coeffs[j] phi_j(x) in the interior numbering.
  double evaluate(std::span<const double> interior_coeffs, double x, int r = 0) const;

private:
  std::size_t element_for(double x, Side side) const;

  int degree_;
  Mesh1D mesh_;
  std::vector<double> knots_;
};

/// Builds the open knot vector of degree p on `mesh`.
SplineSpace open_knot_vector(int p, const Mesh1D& mesh);

/// p-th derivative jumps of every basis function across breakpoint `face`.
///
/// Interior faces: v^(p) from the left element times +1 plus v^(p) from the
/// right element times -1 (outward normals of the two elements). Boundary
/// faces: the one-sided trace times the outward normal. Indices are untrimmed.
SparseVector pth_derivative_jumps(const SplineSpace& space, std::size_t face);

} // namespace softiga
