#pragma once

#include <stdexcept>
#include <string>

namespace sisi {

// Base class for all recoverable model-domain failures. The CLI maps these
// to exit code 1, as opposed to usage errors (exit code 2).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point (or a constructed fixed point) violates the simplex constraints.
struct NotInSimplex : DomainError {
    using DomainError::DomainError;
};

// The interior fixed-point equation cannot be resolved to a finite root
// (b + alpha = 0 while a positive root is demanded).
struct DegenerateParameters : DomainError {
    using DomainError::DomainError;
};

// The force value passed to the interior fixed-point constructor is not a
// root of the fixed-point equation.
struct InconsistentRoot : DomainError {
    using DomainError::DomainError;
};

struct PreconditionViolated : DomainError {
    using DomainError::DomainError;
};

// Stability classification was requested for a point that is not fixed.
struct NotAFixedPoint : DomainError {
    using DomainError::DomainError;
};

// The eigenvalue iteration exhausted its budget. Partial spectra are never
// reported.
struct ConvergenceFailure : DomainError {
    using DomainError::DomainError;
};

// An evidence/sweep configuration contradicts its scenario's side conditions.
struct InvalidScenarioConfig : DomainError {
    using DomainError::DomainError;
};

} // namespace sisi
