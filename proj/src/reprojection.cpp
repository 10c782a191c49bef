#include "scopenav/reprojection.hpp"

#include <cmath>

namespace scopenav {

namespace {

// Residual contribution when a point falls behind the camera during a trial
// step; large but finite so LM can back out.
constexpr double kBehindPenalty = 1e6;

bool points_collinear(const std::vector<Vec3>& pts) {
    Vec3 mean = Vec3::Zero();
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& p : pts) {
        Vec3 d = p - mean;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    // Collinear iff the second-largest spread is negligible.
    return eig.eigenvalues()(1) <= 1e-12 * std::max(1.0, eig.eigenvalues()(2));
}

}  // namespace

double reprojection_rmse(const std::vector<Vec3>& points3d, const std::vector<Vec2>& pixels,
                         const CameraIntrinsics& K, const DistortionCoefficients& d,
                         const Pose& pose) {
    if (points3d.size() != pixels.size() || points3d.empty())
        throw InvalidArgumentError("reprojection_rmse: size mismatch or empty");
    double sum = 0.0;
    for (size_t i = 0; i < points3d.size(); ++i) {
        Vec2 proj = project_world_point(points3d[i], pose, K, d);
        sum += (proj - pixels[i]).squaredNorm();
    }
    return std::sqrt(sum / static_cast<double>(points3d.size()));
}

PoseFitResult optimize_camera_pose(const std::vector<Vec3>& points3d,
                                   const std::vector<Vec2>& pixels, const CameraIntrinsics& K,
                                   const DistortionCoefficients& d, const Pose& pose0,
                                   const LMConfig& cfg) {
    if (points3d.size() != pixels.size())
        throw InvalidArgumentError("optimize_camera_pose: correspondence count mismatch");
    if (points3d.size() < 3)
        throw InvalidArgumentError("optimize_camera_pose: need at least 3 correspondences");
    if (points_collinear(points3d))
        throw InvalidArgumentError("optimize_camera_pose: correspondences are collinear");
    K.validate();
    d.validate();
    pose0.validate();

    const Mat3 r0 = pose0.R;
    const Vec3 t0 = pose0.t;

    auto pose_at = [&](const Eigen::VectorXd& x) {
        Pose p;
        p.R = exp_so3(x.head<3>()) * r0;
        p.t = t0 + x.tail<3>();
        return p;
    };

    ResidualFn residual = [&](const Eigen::VectorXd& x) {
        const Pose p = pose_at(x);
        Eigen::VectorXd r(2 * points3d.size());
        for (size_t i = 0; i < points3d.size(); ++i) {
            const Vec3 pc = world_to_camera(points3d[i], p);
            if (!(pc.z() > 1e-9)) {
                r(2 * i) = kBehindPenalty;
                r(2 * i + 1) = kBehindPenalty;
                continue;
            }
            Vec2 norm(pc.x() / pc.z(), pc.y() / pc.z());
            Vec2 nd = d.is_zero() ? norm : distort_point(norm, d);
            r(2 * i) = K.fx * nd.x() + K.skew * nd.y() + K.cx - pixels[i].x();
            r(2 * i + 1) = K.fy * nd.y() + K.cy - pixels[i].y();
        }
        return r;
    };

    LMResult lm = lm_minimize(residual, Eigen::VectorXd::Zero(6), cfg);

    PoseFitResult out;
    out.pose = pose_at(lm.x);
    out.pose.R = orthonormalize(out.pose.R);
    out.iterations = lm.iterations;
    out.rmse_px = reprojection_rmse(points3d, pixels, K, d, out.pose);
    return out;
}

}  // namespace scopenav
