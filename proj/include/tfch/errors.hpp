#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfch {

/// Precondition violation on caller-supplied data.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure during computation (divergence, non-convergence, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// soe_build could not reach the requested tolerance within the mode budget.
struct SoeBuildError : NumericalError {
    double achieved;
    SoeBuildError(const std::string& msg, double achieved_error)
        : NumericalError(msg), achieved(achieved_error) {}
};

/// Non-finite field values encountered while stepping.
struct DivergenceError : NumericalError {
    std::size_t step;
    double time;
    DivergenceError(const std::string& msg, std::size_t step_index, double t)
        : NumericalError(msg), step(step_index), time(t) {}
};

/// Krylov solve failed to reach the residual tolerance.
struct KrylovError : NumericalError {
    double residual;
    KrylovError(const std::string& msg, double last_residual)
        : NumericalError(msg), residual(last_residual) {}
};

}  // namespace tfch
