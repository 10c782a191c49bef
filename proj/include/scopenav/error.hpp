#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace scopenav {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad inputs: violated preconditions, malformed files, mismatched sizes.
// The CLI maps this family to exit code 2.
struct InvalidArgumentError : Error {
    using Error::Error;
};

// I/O problems (missing files, unreadable formats). Also exit code 2.
struct IoError : Error {
    using Error::Error;
};

// An operation was called on an object in the wrong lifecycle state.
struct InvalidStateError : Error {
    using Error::Error;
};

// Numerical breakdown (divergence, non-finite residuals). Exit code 3.
// Carries the best parameter vector seen before the failure, when one exists.
struct NumericalFailureError : Error {
    NumericalFailureError(const std::string& msg, std::vector<double> best, double cost)
        : Error(msg), best_params(std::move(best)), best_cost(cost) {}
    explicit NumericalFailureError(const std::string& msg) : Error(msg), best_cost(0.0) {}

    std::vector<double> best_params;
    double best_cost;
};

}  // namespace scopenav
