#pragma once

#include <stdexcept>
#include <string>

namespace whitcusp {

// Thrown when a truncated power series does not carry enough known digits
// to decide the requested predicate or produce the requested digit.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration work limit: integrals refuse to run past the configured budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A support scan hit a nonzero value on its outermost shell, so the chosen
// window cannot certify the support bound.
struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// A constructed function that must be nonzero (e.g. a Whittaker function)
// vanished on the whole certified window.
struct ZeroFunction : std::runtime_error {
    explicit ZeroFunction(const std::string& what) : std::runtime_error(what) {}
};

struct FunctionalEquationMismatch : std::runtime_error {
    explicit FunctionalEquationMismatch(const std::string& what) : std::runtime_error(what) {}
};

// The exponent balancing the functional equation came out odd.
struct OddConductor : std::runtime_error {
    explicit OddConductor(const std::string& what) : std::runtime_error(what) {}
};

// Divisibility-derived torsion order disagrees with the structural one.
struct InconsistentT : std::runtime_error {
    explicit InconsistentT(const std::string& what) : std::runtime_error(what) {}
};

struct NonIntegralRatio : std::runtime_error {
    explicit NonIntegralRatio(const std::string& what) : std::runtime_error(what) {}
};

// The requested multiplicative character exponent is fixed by the norm-field
// Frobenius, so it does not cut out a cuspidal representation.
struct NotRegular : std::runtime_error {
    explicit NotRegular(const std::string& what) : std::runtime_error(what) {}
};

// The isotypic projector came out with the wrong rank; the model construction
// cannot continue.
struct ProjectionRankMismatch : std::runtime_error {
    explicit ProjectionRankMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Bad user-facing configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Box integration is justified for r <= 3 only; refuse to extrapolate.
struct UnsupportedRank : std::runtime_error {
    explicit UnsupportedRank(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace whitcusp
