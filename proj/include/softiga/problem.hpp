#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace softiga {

/// Shape f of the pair interaction v(xi) = beta * f(xi).
enum class PotentialShape {
  LorentzianCube,  // f = 1 / (1 + xi^2)^3
  Gaussian,        // f = exp(-xi^2)
};

std::string_view to_string(PotentialShape shape);
/// Accepts "lorentzian-cube" / "lorentzian_cube" / "LorentzianCube" and "gaussian" / "Gaussian".
PotentialShape parse_potential_shape(std::string_view name);

/// Directional diffusion coefficients: kappa = diag(kx, ky). ky is unused in 1D.
struct DiffusionCoeffs {
  double kx = 0.5;
  double ky = 0.5;
};

/// The unified two-body (dimension 1) / three-body (dimension 2) eigenproblem
///   -div(kappa grad u) + (gamma0 - gamma) u = (lambda + gamma0) u
/// on [-half_width, half_width]^d with u = 0 on the boundary.
struct ProblemSpec {
  int dimension = 1;
  double half_width = 20.0;
  PotentialShape shape = PotentialShape::LorentzianCube;
  double beta = 1.0;
  double mass_ratio = 1.0;             // m_h / m_l, only used in 2D
  std::optional<double> gamma0;        // empty: default_shift()

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

/// v(xi) = beta * f(xi).
double potential_value(PotentialShape shape, double beta, double xi);

/// gamma(x) = v(x) in 1D; gamma(x, y) = v(x + y/2) + v(x - y/2) in 2D.
double gamma_field(const ProblemSpec& spec, double x);
double gamma_field(const ProblemSpec& spec, double x, double y);

/// kappa for the reduced three-body Hamiltonian with mass ratio R = m_h / m_l:
/// kx = (1/2 + R) / (2 (1 + R)), ky = 1 / (1 + R).
DiffusionCoeffs kappa_from_mass_ratio(double mass_ratio);

/// Diffusion coefficients of a problem: 1/2 in 1D, kappa_from_mass_ratio in 2D.
DiffusionCoeffs diffusion(const ProblemSpec& spec);

/// d * beta * max f + 1, strictly above sup gamma.
double default_shift(const ProblemSpec& spec);

/// spec.gamma0 if set, otherwise default_shift(spec).
double shift(const ProblemSpec& spec);

/// gamma0 - gamma, the weight of the potential mass matrix.
double shifted_potential(const ProblemSpec& spec, double gamma0, double x);
double shifted_potential(const ProblemSpec& spec, double gamma0, double x, double y);

} // namespace softiga
