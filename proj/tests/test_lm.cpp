#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "scopenav/lm.hpp"
#include "scopenav/reprojection.hpp"

using namespace scopenav;

TEST_CASE("scalar linear problem converges to the root") {
    ResidualFn fn = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd r(1);
        r(0) = x(0) - 3.0;
        return r;
    };
    LMResult res = lm_minimize(fn, Eigen::VectorXd::Zero(1));
    CHECK(res.x(0) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(res.converged);
}

TEST_CASE("linear least squares matches the normal-equation solution") {
    Eigen::MatrixXd a(3, 2);
    a << 1.0, 2.0, -1.5, 0.5, 0.3, 3.0;
    Eigen::VectorXd b(3);
    b << 1.0, -2.0, 0.7;

    // independent oracle: x* = (A^T A)^{-1} A^T b
    Eigen::VectorXd oracle = (a.transpose() * a).ldlt().solve(a.transpose() * b);

    ResidualFn fn = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x - b); };
    LMResult res = lm_minimize(fn, Eigen::VectorXd::Zero(2));
    CHECK((res.x - oracle).norm() < 1e-8);
}

TEST_CASE("zero cost at start returns immediately") {
    ResidualFn fn = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(2); };
    Eigen::VectorXd x0(3);
    x0 << 1, 2, 3;
    LMResult res = lm_minimize(fn, x0);
    CHECK(res.iterations == 0);
    CHECK(res.cost == 0.0);
    CHECK((res.x - x0).norm() == 0.0);
}

TEST_CASE("accepted costs are non-increasing on a nonlinear problem") {
    // Rosenbrock-style residuals
    ResidualFn fn = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd r(2);
        r(0) = 10.0 * (x(1) - x(0) * x(0));
        r(1) = 1.0 - x(0);
        return r;
    };
    Eigen::VectorXd x0(2);
    x0 << -1.2, 1.0;
    LMConfig cfg;
    cfg.max_iters = 200;
    LMResult res = lm_minimize(fn, x0, cfg);
    REQUIRE(!res.accepted_costs.empty());
    double prev = std::numeric_limits<double>::infinity();
    for (double c : res.accepted_costs) {
        CHECK(c <= prev);
        prev = c;
    }
    CHECK(res.cost < 1e-10);
}

TEST_CASE("finite-difference jacobian matches the analytic one on the linear problem") {
    Eigen::MatrixXd a(3, 2);
    a << 1.0, 2.0, -1.5, 0.5, 0.3, 3.0;
    Eigen::VectorXd b(3);
    b << 1.0, -2.0, 0.7;
    ResidualFn fn = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x - b); };
    Eigen::VectorXd x(2);
    x << 0.4, -1.1;
    Eigen::MatrixXd jac = finite_difference_jacobian(fn, x, 1e-6);
    CHECK((jac - a).norm() / a.norm() < 1e-4);
}

TEST_CASE("non-finite residuals raise a numerical failure carrying progress") {
    int calls = 0;
    ResidualFn fn = [&](const Eigen::VectorXd& x) {
        ++calls;
        Eigen::VectorXd r(1);
        r(0) = calls > 4 ? std::nan("") : x(0) - 2.0;
        return r;
    };
    CHECK_THROWS_AS(lm_minimize(fn, Eigen::VectorXd::Zero(1)), NumericalFailureError);
}

TEST_CASE("pose recovery from exact pixels is immediate") {
    CameraIntrinsics k{400.0, 400.0, 128.0, 128.0, 0.0};
    DistortionCoefficients d;
    Pose gt;
    gt.R = exp_so3(Vec3(0.1, -0.2, 0.05));
    gt.t = Vec3(0.2, 0.1, -2.5);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<Vec3> pts;
    std::vector<Vec2> px;
    for (int i = 0; i < 20; ++i) {
        Vec3 p = gt.t + gt.R.transpose() * Vec3(u(rng), u(rng), 2.0 + u(rng));
        pts.push_back(p);
        px.push_back(project_world_point(p, gt, k, d));
    }
    PoseFitResult fit = optimize_camera_pose(pts, px, k, d, gt);
    CHECK(fit.rmse_px < 1e-9);
    CHECK(fit.iterations == 0);
    fit.pose.validate();
}

TEST_CASE("pose recovery from a perturbed start") {
    CameraIntrinsics k{400.0, 410.0, 128.0, 126.0, 0.0};
    DistortionCoefficients d;
    d.k1 = 0.05;
    Pose gt;
    gt.R = exp_so3(Vec3(0.3, 0.1, -0.2));
    gt.t = Vec3(0.4, -0.3, -1.0);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<Vec3> pts;
    std::vector<Vec2> px;
    for (int i = 0; i < 20; ++i) {
        Vec3 p = gt.t + gt.R.transpose() * Vec3(u(rng), u(rng), 2.0 + 0.6 * u(rng));
        pts.push_back(p);
        px.push_back(project_world_point(p, gt, k, d));
    }

    Pose start;
    start.R = exp_so3(Vec3(0.05, -0.05, 0.04).normalized() * (5.0 * M_PI / 180.0)) * gt.R;
    start.t = gt.t * 1.05 + Vec3(0.02, -0.02, 0.05);

    PoseFitResult fit = optimize_camera_pose(pts, px, k, d, start);
    CHECK(fit.rmse_px <= 0.5);
    CHECK(fit.iterations <= 100);
    fit.pose.validate();
    CHECK(rotation_angle_between(fit.pose.R, gt.R) < 1e-3);
}

TEST_CASE("too few or degenerate correspondences are rejected") {
    CameraIntrinsics k{100, 100, 64, 64, 0};
    DistortionCoefficients d;
    Pose p0;
    std::vector<Vec3> two{{0, 0, 2}, {0.1, 0, 2}};
    std::vector<Vec2> px2{{64, 64}, {69, 64}};
    CHECK_THROWS_AS(optimize_camera_pose(two, px2, k, d, p0), InvalidArgumentError);

    std::vector<Vec3> collinear{{0, 0, 2}, {0.1, 0, 2}, {0.2, 0, 2}, {0.3, 0, 2}};
    std::vector<Vec2> px4{{64, 64}, {69, 64}, {74, 64}, {79, 64}};
    CHECK_THROWS_AS(optimize_camera_pose(collinear, px4, k, d, p0), InvalidArgumentError);
}
