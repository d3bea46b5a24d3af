#include "softiga/spline_space.hpp"

#include <algorithm>
#include <string>

#include "softiga/error.hpp"

namespace softiga {

double SparseVector::at(std::size_t i) const {
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] == i)
      return value[k];
  }
  return 0.0;
}

SplineSpace::SplineSpace(int degree, Mesh1D mesh) : degree_(degree), mesh_(std::move(mesh)) {
  if (degree < 1)
    throw InvalidArgument("spline degree must be >= 1, got " + std::to_string(degree));
  const auto bp = mesh_.breakpoints();
  knots_.reserve(bp.size() + 2 * static_cast<std::size_t>(degree));
  knots_.insert(knots_.end(), static_cast<std::size_t>(degree), bp.front());
  knots_.insert(knots_.end(), bp.begin(), bp.end());
  knots_.insert(knots_.end(), static_cast<std::size_t>(degree), bp.back());
}

SplineSpace open_knot_vector(int p, const Mesh1D& mesh) { return SplineSpace(p, mesh); }

// Cox-de Boor with derivatives on the knot span of `element`; the span index in
// the knot vector is p + element and the supported functions are element..element+p.
BasisTable SplineSpace::element_table(std::size_t element, double x, int max_order) const {
  const int p = degree_;
  if (element >= num_elements())
    throw InvalidArgument("element index out of range");
  if (max_order < 0 || max_order > p)
    throw InvalidArgument("derivative order " + std::to_string(max_order) +
                          " outside [0, degree]");

  const std::size_t span = static_cast<std::size_t>(p) + element;
  const double* U = knots_.data();

  // ndu(j, r): basis functions in the upper triangle, knot differences in the lower.
  std::vector<double> ndu(static_cast<std::size_t>((p + 1) * (p + 1)));
  auto N = [&](int r, int c) -> double& { return ndu[static_cast<std::size_t>(r * (p + 1) + c)]; };
  std::vector<double> left(p + 1), right(p + 1);

  N(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - U[span + 1 - j];
    right[j] = U[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      N(j, r) = right[r + 1] + left[j - r];
      const double temp = N(r, j - 1) / N(j, r);
      N(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    N(j, j) = saved;
  }

  BasisTable table(element, p, max_order);
  for (int j = 0; j <= p; ++j)
    table(0, j) = N(j, p);

  std::vector<double> a(static_cast<std::size_t>(2 * (p + 1)));
  auto A = [&](int s, int c) -> double& { return a[static_cast<std::size_t>(s * (p + 1) + c)]; };
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    A(0, 0) = 1.0;
    for (int k = 1; k <= max_order; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        A(s2, 0) = A(s1, 0) / N(pk + 1, rk);
        d = A(s2, 0) * N(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        A(s2, j) = (A(s1, j) - A(s1, j - 1)) / N(pk + 1, rk + j);
        d += A(s2, j) * N(rk + j, pk);
      }
      if (r <= pk) {
        A(s2, k) = -A(s1, k - 1) / N(pk + 1, r);
        d += A(s2, k) * N(r, pk);
      }
      table(k, r) = d;
      std::swap(s1, s2);
    }
  }

  double factor = p;
  for (int k = 1; k <= max_order; ++k) {
    for (int j = 0; j <= p; ++j)
      table(k, j) *= factor;
    factor *= (p - k);
  }
  return table;
}

std::size_t SplineSpace::element_for(double x, Side side) const {
  if (!(x >= mesh_.left() && x <= mesh_.right()))
    throw InvalidArgument("evaluation point " + std::to_string(x) + " outside the domain");
  std::size_t e = mesh_.find_element(x);
  if (side == Side::left && e > 0 && x == mesh_.breakpoint(e))
    --e;
  return e;
}

BasisTable SplineSpace::table(double x, int max_order, Side side) const {
  return element_table(element_for(x, side), x, max_order);
}

std::vector<std::pair<std::size_t, double>> SplineSpace::eval_basis(double x, int r,
                                                                    Side side) const {
  const BasisTable t = table(x, r, side);
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(static_cast<std::size_t>(degree_ + 1));
  for (int j = 0; j <= degree_; ++j)
    out.emplace_back(t.first() + static_cast<std::size_t>(j), t(r, j));
  return out;
}

double SplineSpace::evaluate(std::span<const double> interior_coeffs, double x, int r) const {
  if (interior_coeffs.size() != dimension())
    throw InvalidArgument("coefficient vector length does not match the space dimension");
  const BasisTable t = table(x, r);
  double u = 0.0;
  for (int j = 0; j <= degree_; ++j) {
    if (auto k = interior_index(t.first() + static_cast<std::size_t>(j)))
      u += interior_coeffs[*k] * t(r, j);
  }
  return u;
}

SparseVector pth_derivative_jumps(const SplineSpace& space, std::size_t face) {
  const std::size_t n = space.num_elements();
  if (face > n)
    throw InvalidArgument("face index " + std::to_string(face) + " out of range");
  const int p = space.degree();
  const double x = space.mesh().breakpoint(face);

  SparseVector jump;
  auto accumulate = [&](std::size_t element, double normal) {
    const BasisTable t = space.element_table(element, x, p);
    for (int j = 0; j <= p; ++j) {
      const std::size_t idx = t.first() + static_cast<std::size_t>(j);
      const double v = normal * t(p, j);
      auto it = std::find(jump.index.begin(), jump.index.end(), idx);
      if (it == jump.index.end()) {
        jump.index.push_back(idx);
        jump.value.push_back(v);
      } else {
        jump.value[static_cast<std::size_t>(it - jump.index.begin())] += v;
      }
    }
  };

  if (face > 0)
    accumulate(face - 1, +1.0);  // left element, outward normal +1
  if (face < n)
    accumulate(face, -1.0);  // right element, outward normal -1
  return jump;
}

} // namespace softiga
