#pragma once

#include <stdexcept>
#include <string>

namespace ratelab {

// Base class for all library errors. Subtypes mirror the failure modes the
// API contracts name, so callers can catch a specific condition.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Likelihood ratio undefined: truth density vanishes where the sample lives.
struct NonDominated : Error { using Error::Error; };

// Two densities passed on different outcome grids.
struct GridMismatch : Error { using Error::Error; };

// Vector/matrix sizes disagree.
struct DimensionMismatch : Error { using Error::Error; };

// Enumeration request beyond the configured state budget.
struct StateSpaceTooLarge : Error { using Error::Error; };

// Matrix not symmetric positive definite where one is required.
struct NotPositiveDefinite : Error { using Error::Error; };

// Scalar argument outside its documented range.
struct OutOfRange : Error { using Error::Error; };

// Operation not defined for the requested variant (kind/moment order/...).
struct UnsupportedKind : Error { using Error::Error; };

// Importance sampler collapsed (effective sample size below the gate).
struct DegenerateESS : Error { using Error::Error; };

// A named component was not found in a registry.
struct RegistryMiss : Error { using Error::Error; };

// Run configuration malformed or violating a precondition.
struct ConfigError : Error { using Error::Error; };

// Parameter lies outside a prior's support.
struct OutOfSupport : Error { using Error::Error; };

// Every support point has likelihood ratio zero at the observed sample.
struct AllZeroLikelihood : Error { using Error::Error; };

// A neighborhood required to carry prior mass is empty.
struct EmptyNeighborhood : Error { using Error::Error; };

// Candidate metric fails the joint-Hellinger domination inequality.
struct MetricViolatesIneq1 : Error { using Error::Error; };

// Markov transition bounds certificate inconsistent or violated.
struct BoundsCertificateInvalid : Error { using Error::Error; };

// Monte Carlo call with a zero sample budget.
struct BudgetZero : Error { using Error::Error; };

// Drift function exceeds the registered amplitude bound.
struct AmplitudeExceeded : Error { using Error::Error; };

// Numerical integration failed to reach its tolerance.
struct QuadratureFailure : Error { using Error::Error; };

}  // namespace ratelab
