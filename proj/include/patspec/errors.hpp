#pragma once

#include <stdexcept>
#include <string>

namespace patspec {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad user-facing input: malformed config, unknown keys, invalid CSV.
class ValidationError : public Error {
  public:
    using Error::Error;
};

// Arguments outside an operation's mathematical domain.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Matrix handed to the eigensolver is not Hermitian within tolerance.
class InvalidInputError : public Error {
  public:
    using Error::Error;
};

// Requested ST+ crossing does not exist (E_z <= t_c).
class NoCrossingError : public Error {
  public:
    using Error::Error;
};

// Resonance field would be non-positive.
class UnreachableFieldError : public Error {
  public:
    using Error::Error;
};

// A requested PAT line has no resonance detuning at the given (B, nu).
class UnresolvableLineError : public Error {
  public:
    using Error::Error;
};

// Steady-state kernel is empty or has dimension > 1.
class SteadyStateError : public Error {
  public:
    SteadyStateError(const std::string& what, int kernel_dimension)
        : Error(what), kernel_dim(kernel_dimension) {}
    int kernel_dim;
};

// Least-squares solver failed to converge; carries the final residual norm.
class FitFailure : public Error {
  public:
    FitFailure(const std::string& what, double residual)
        : Error(what), residual_norm(residual) {}
    double residual_norm;
};

// Calibration row has no usable ST+ reference peak.
class MissingReferenceError : public Error {
  public:
    using Error::Error;
};

}  // namespace patspec
