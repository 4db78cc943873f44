#pragma once

#include <stdexcept>
#include <string>

namespace tricycle {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A vectorized quantity lost hermiticity (non-negligible imaginary residue).
class HermiticityError : public Error {
public:
    using Error::Error;
};

/// Kernel of a generator is not one-dimensional or the spectrum is not gapped.
class DegenerateSpectrumError : public Error {
public:
    using Error::Error;
};

/// Two independent computation routes of the same quantity disagree.
class RouteDisagreementError : public Error {
public:
    using Error::Error;
};

/// A sampled integrand was NaN or infinite, or negative where it must not be.
class IntegrandError : public Error {
public:
    using Error::Error;
};

/// The time integrator produced an unphysical state.
class IntegratorError : public Error {
public:
    using Error::Error;
};

/// No admissible (positive, real) duration solves the allocation problem.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double discriminant = 0.0)
        : Error(what), discriminant_(discriminant) {}

    double discriminant() const noexcept { return discriminant_; }

private:
    double discriminant_;
};

}  // namespace tricycle
