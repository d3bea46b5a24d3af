#include "softiga/problem.hpp"

#include <cmath>
#include <string>

#include "softiga/error.hpp"

namespace softiga {

std::string_view to_string(PotentialShape shape) {
  switch (shape) {
  case PotentialShape::LorentzianCube:
    return "lorentzian-cube";
  case PotentialShape::Gaussian:
    return "gaussian";
  }
  return "unknown";
}

PotentialShape parse_potential_shape(std::string_view name) {
  if (name == "lorentzian-cube" || name == "lorentzian_cube" || name == "LorentzianCube")
    return PotentialShape::LorentzianCube;
  if (name == "gaussian" || name == "Gaussian")
    return PotentialShape::Gaussian;
  throw InvalidArgument("unknown potential shape '" + std::string(name) + "'");
}

void ProblemSpec::validate() const {
  if (dimension != 1 && dimension != 2)
    throw InvalidArgument("dimension must be 1 or 2");
  if (!(half_width > 0.0))
    throw InvalidArgument("half_width must be positive");
  if (!(beta > 0.0))
    throw InvalidArgument("beta must be positive");
  if (dimension == 2 && !(mass_ratio > 0.0))
    throw InvalidArgument("mass_ratio must be positive");
  if (gamma0 && !std::isfinite(*gamma0))
    throw InvalidArgument("gamma0 must be finite");
}

double potential_value(PotentialShape shape, double beta, double xi) {
  switch (shape) {
  case PotentialShape::LorentzianCube: {
    const double d = 1.0 + xi * xi;
    return beta / (d * d * d);
  }
  case PotentialShape::Gaussian:
    return beta * std::exp(-xi * xi);
  }
  return 0.0;
}

double gamma_field(const ProblemSpec& spec, double x) {
  if (spec.dimension != 1)
    throw InvalidArgument("gamma_field: one coordinate given for a 2D problem");
  return potential_value(spec.shape, spec.beta, x);
}

double gamma_field(const ProblemSpec& spec, double x, double y) {
  if (spec.dimension != 2)
    throw InvalidArgument("gamma_field: two coordinates given for a 1D problem");
  return potential_value(spec.shape, spec.beta, x + 0.5 * y) +
         potential_value(spec.shape, spec.beta, x - 0.5 * y);
}

DiffusionCoeffs kappa_from_mass_ratio(double mass_ratio) {
  if (!(mass_ratio > 0.0))
    throw InvalidArgument("mass ratio must be positive");
  const double r = mass_ratio;
  return {(0.5 + r) / (2.0 * (1.0 + r)), 1.0 / (1.0 + r)};
}

DiffusionCoeffs diffusion(const ProblemSpec& spec) {
  if (spec.dimension == 1)
    return {0.5, 0.5};
  return kappa_from_mass_ratio(spec.mass_ratio);
}

double default_shift(const ProblemSpec& spec) {
  // max f = f(0) = 1 for both shapes; in 2D gamma <= 2 beta.
  return spec.dimension * spec.beta + 1.0;
}

double shift(const ProblemSpec& spec) { return spec.gamma0.value_or(default_shift(spec)); }

double shifted_potential(const ProblemSpec& spec, double gamma0, double x) {
  return gamma0 - gamma_field(spec, x);
}

double shifted_potential(const ProblemSpec& spec, double gamma0, double x, double y) {
  return gamma0 - gamma_field(spec, x, y);
}

} // namespace softiga
