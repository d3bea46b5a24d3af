#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace softiga {

/// Ordered breakpoints of a 1D mesh; element i is [breakpoints[i], breakpoints[i+1]].
class Mesh1D {
public:
  /// Throws InvalidArgument unless there are at least two strictly increasing breakpoints.
  explicit Mesh1D(std::vector<double> breakpoints);

  std::size_t num_elements() const { return breakpoints_.size() - 1; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  double breakpoint(std::size_t i) const { return breakpoints_[i]; }
  double element_size(std::size_t e) const { return breakpoints_[e + 1] - breakpoints_[e]; }
  std::vector<double> element_sizes() const;
  double max_element_size() const;
  double left() const { return breakpoints_.front(); }
  double right() const { return breakpoints_.back(); }

  /// Index of the element containing x; on a breakpoint the element to the
  /// right is returned, except at the last breakpoint. Points outside the
  /// mesh are clamped to the first or last element.
  std::size_t find_element(double x) const;

  bool is_symmetric(double tol) const;

private:
  std::vector<double> breakpoints_;
};

/// n equal elements on [-half_width, half_width].
Mesh1D uniform_mesh(double half_width, std::size_t n);

/// Center-graded symmetric mesh. On each half the element sizes grow in
/// arithmetic progression s*(1 + growth*i), i = 0 at the origin.
struct GradedMeshSpec {
  double half_width = 1.0;
  std::size_t n = 2;  // total element count, even
  double growth = 0.0;
};

Mesh1D graded_mesh(const GradedMeshSpec& spec);

} // namespace softiga
