#pragma once

#include <vector>

#include "scopenav/camera.hpp"
#include "scopenav/lm.hpp"

namespace scopenav {

struct PoseFitResult {
    Pose pose;
    double rmse_px = 0.0;   // root-mean-square reprojection error
    int iterations = 0;
};

// Reprojection-error pose estimation: minimizes
//   sum_i | project(K, D, R, t, P_i) - p_i |^2
// over the 6-dof pose, starting from pose0. The rotation is parameterized as an
// axis-angle increment composed onto pose0's rotation and re-orthonormalized.
// Requires >= 3 non-collinear correspondences.
PoseFitResult optimize_camera_pose(const std::vector<Vec3>& points3d,
                                   const std::vector<Vec2>& pixels, const CameraIntrinsics& K,
                                   const DistortionCoefficients& d, const Pose& pose0,
                                   const LMConfig& cfg = {});

double reprojection_rmse(const std::vector<Vec3>& points3d, const std::vector<Vec2>& pixels,
                         const CameraIntrinsics& K, const DistortionCoefficients& d,
                         const Pose& pose);

}  // namespace scopenav
