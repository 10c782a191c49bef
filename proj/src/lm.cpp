#include "scopenav/lm.hpp"

#include <cmath>

namespace scopenav {

void LMConfig::validate() const {
    if (max_iters < 1) throw InvalidArgumentError("LMConfig: max_iters >= 1 required");
    if (!(initial_damping > 0.0)) throw InvalidArgumentError("LMConfig: damping must be > 0");
    if (!(damping_up > 1.0) || !(damping_down > 0.0) || !(damping_down < 1.0))
        throw InvalidArgumentError("LMConfig: damping factors must satisfy up > 1, 0 < down < 1");
    if (!(step_tol > 0.0) || !(cost_tol > 0.0) || !(fd_step > 0.0))
        throw InvalidArgumentError("LMConfig: tolerances must be > 0");
}

Eigen::MatrixXd finite_difference_jacobian(const ResidualFn& fn, const Eigen::VectorXd& x,
                                           double fd_step) {
    const Eigen::VectorXd r0 = fn(x);
    Eigen::MatrixXd jac(r0.size(), x.size());
    Eigen::VectorXd xp = x;
    for (int i = 0; i < x.size(); ++i) {
        const double h = fd_step * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + h;
        jac.col(i) = (fn(xp) - r0) / h;
        xp(i) = x(i);
    }
    return jac;
}

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

LMResult lm_minimize(const ResidualFn& fn, const Eigen::VectorXd& x0, const LMConfig& cfg) {
    cfg.validate();

    LMResult res;
    res.x = x0;

    Eigen::VectorXd r = fn(res.x);
    if (!r.allFinite())
        throw InvalidArgumentError("lm_minimize: residuals are non-finite at the initial point");
    res.cost = r.squaredNorm();
    if (res.cost == 0.0) {
        res.converged = true;
        return res;
    }

    double lambda = cfg.initial_damping;
    const int n = static_cast<int>(x0.size());

    for (int outer = 0; outer < cfg.max_iters; ++outer) {
        Eigen::MatrixXd jac = finite_difference_jacobian(fn, res.x, cfg.fd_step);
        if (!jac.allFinite())
            throw NumericalFailureError("lm_minimize: non-finite Jacobian", to_std(res.x), res.cost);

        const Eigen::MatrixXd hess = jac.transpose() * jac;
        const Eigen::VectorXd grad = jac.transpose() * r;

        bool accepted = false;
        for (int attempt = 0; attempt < 32 && !accepted; ++attempt) {
            Eigen::MatrixXd damped = hess;
            damped.diagonal().array() += lambda;
            Eigen::VectorXd step = damped.ldlt().solve(-grad);
            if (!step.allFinite()) {
                lambda *= cfg.damping_up;
                continue;
            }
            if (step.norm() <= cfg.step_tol * (1.0 + res.x.norm())) {
                res.converged = true;
                return res;
            }
            Eigen::VectorXd x_new = res.x + step;
            Eigen::VectorXd r_new = fn(x_new);
            if (!r_new.allFinite())
                throw NumericalFailureError("lm_minimize: non-finite residuals during iteration",
                                            to_std(res.x), res.cost);
            const double cost_new = r_new.squaredNorm();
            if (cost_new < res.cost) {
                const double decrease = res.cost - cost_new;
                res.x = std::move(x_new);
                r = std::move(r_new);
                res.cost = cost_new;
                res.iterations += 1;
                res.accepted_costs.push_back(res.cost);
                lambda = std::max(lambda * cfg.damping_down, 1e-15);
                accepted = true;
                if (decrease <= cfg.cost_tol * std::max(1.0, res.cost) || res.cost == 0.0) {
                    res.converged = true;
                    return res;
                }
            } else {
                lambda *= cfg.damping_up;
                if (lambda > 1e15) return res;  // stalled; best point so far
            }
        }
        if (!accepted) return res;
        (void)n;
    }
    return res;
}

}  // namespace scopenav
