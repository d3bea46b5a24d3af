#pragma once

#include <stdexcept>
#include <string>

namespace softiga {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument (degree, mesh, index, ...) was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// The softened stiffness K - eta*S is not positive definite, i.e. eta >= eta_max.
class SoftnessTooLarge : public Error {
public:
  using Error::Error;
};

/// Iterative eigensolver hit its iteration cap before reaching the tolerance.
class NoConvergence : public Error {
public:
  using Error::Error;
};

/// The mass matrix failed its Cholesky factorization.
class SingularMass : public Error {
public:
  using Error::Error;
};

} // namespace softiga
