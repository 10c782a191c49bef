#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "scopenav/error.hpp"

namespace scopenav {

struct LMConfig {
    int max_iters = 100;            // cap on accepted steps
    double initial_damping = 1e-3;
    double damping_up = 10.0;
    double damping_down = 0.3;
    double step_tol = 1e-12;        // converged when |step| <= step_tol * (1 + |x|)
    double cost_tol = 1e-14;        // converged when relative cost decrease falls below
    double fd_step = 1e-6;          // forward-difference step: fd_step * max(1, |x_i|)

    void validate() const;
};

struct LMResult {
    Eigen::VectorXd x;
    double cost = 0.0;              // sum of squared residuals at x
    int iterations = 0;             // accepted steps
    bool converged = false;
    std::vector<double> accepted_costs;  // cost after each accepted step
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Jacobian by forward finite differences with per-component step
// fd_step * max(1, |x_i|).
Eigen::MatrixXd finite_difference_jacobian(const ResidualFn& fn, const Eigen::VectorXd& x,
                                           double fd_step);

// Dense damped least squares. Accepted-step costs are non-increasing; terminates
// on step/cost tolerance or max_iters. Non-finite residuals at x0 are an
// InvalidArgumentError; non-finite residuals appearing later raise
// NumericalFailureError carrying the best parameters seen.
LMResult lm_minimize(const ResidualFn& fn, const Eigen::VectorXd& x0, const LMConfig& cfg = {});

}  // namespace scopenav
