#pragma once

#include <Eigen/Dense>
#include <string>

#include "scopenav/error.hpp"

namespace scopenav {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Pinhole intrinsics. Matrix form is upper triangular with unit bottom-right:
//   [fx  s cx]
//   [ 0 fy cy]
//   [ 0  0  1]
struct CameraIntrinsics {
    double fx = 1.0;
    double fy = 1.0;
    double cx = 0.0;
    double cy = 0.0;
    double skew = 0.0;

    Mat3 matrix() const;
    void validate() const;  // fx > 0, fy > 0, all finite
};

// Radial (k1,k2,k3) + tangential (p1,p2) lens distortion. All zero = ideal pinhole.
struct DistortionCoefficients {
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;
    double p1 = 0.0, p2 = 0.0;

    bool is_zero() const;
    void validate() const;  // all finite
};

// Rigid camera pose. Maps world points to camera points as p_C = R (p_W - t),
// so t is the camera center in world coordinates. Right-handed, column vectors,
// active rotations; camera looks down +z, image x right, image y down.
struct Pose {
    Mat3 R = Mat3::Identity();
    Vec3 t = Vec3::Zero();

    void validate(double tol = 1e-9) const;  // orthonormal, det +1
    Vec3 to_camera(const Vec3& p_world) const { return R * (p_world - t); }
    Vec3 to_world(const Vec3& p_cam) const { return R.transpose() * p_cam + t; }
};

struct UnitQuaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    void validate(double tol = 1e-9) const;
    UnitQuaternion operator*(const UnitQuaternion& o) const;
    Mat3 to_matrix() const;
    static UnitQuaternion from_matrix(const Mat3& R);
    UnitQuaternion normalized() const;
};

// Symmetric perspective view frustum.
struct Frustum {
    double near_z = 0.1;
    double far_z = 100.0;
    double fov = 1.0;     // full field of view, radians
    double aspect = 1.0;  // width / height

    void validate() const;  // 0 < near < far, 0 < fov < pi, aspect > 0
};

// Full virtual-camera description: intrinsics, distortion, scope pose, frustum,
// and the scope's angular offset about its local z axis.
struct CameraModel {
    CameraIntrinsics intrinsics;
    DistortionCoefficients distortion;
    Pose pose;       // scope pose (R_s, t_s)
    Frustum frustum;
    double alpha = 0.0;  // angular offset, radians

    // Offset-composed viewing pose: R_v = R_s * R_o(alpha), t_v = t_s.
    Pose view_pose() const;
    void validate() const;
};

// --- distortion (normalized image coordinates) ---

// Forward distortion model:
//   x' = x(1 + k1 r^2 + k2 r^4 + k3 r^6) + 2 p1 x y + p2 (r^2 + 2 x^2)
//   y' = y(1 + k1 r^2 + k2 r^4 + k3 r^6) + 2 p2 x y + p1 (r^2 + 2 y^2)
// with r^2 = x^2 + y^2.
Vec2 distort_point(const Vec2& p, const DistortionCoefficients& d);

// Inverse of distort_point by fixed-point iteration
// x <- (x_d - tangential(x)) / radial(x); 20 iterations, tolerance 1e-10.
// Throws NumericalFailureError if the iteration does not contract.
Vec2 undistort_point(const Vec2& p_distorted, const DistortionCoefficients& d);

// --- projection ---

// Perspective projection matrix
//   [cot(fov/2)/aspect  0        0            0      ]
//   [0                  cot(fov/2) 0          0      ]
//   [0                  0    (f+n)/(n-f) 2 f n/(n-f) ]
//   [0                  0       -1            0      ]
Mat4 build_projection_matrix(const Frustum& fr);

// Rotation by alpha about the local z axis (the scope's optical axis).
Mat3 angular_offset_rotation(double alpha);

// R_v = R_s * R_o(alpha); translation is unchanged by the offset.
Pose compose_offset(const Pose& scope_pose, double alpha);

Vec3 world_to_camera(const Vec3& p_world, const Pose& pose);

// Homogeneous pinhole projection K * p_C followed by the perspective divide.
// Requires depth > 1e-12; throws InvalidArgumentError for points at or behind
// the camera plane.
Vec2 project_point(const Vec3& p_cam, const CameraIntrinsics& K);

// Full camera map: world -> camera -> normalized -> distorted -> pixel.
Vec2 project_world_point(const Vec3& p_world, const Pose& pose, const CameraIntrinsics& K,
                         const DistortionCoefficients& d);

// --- small rotation utilities ---

Mat3 exp_so3(const Vec3& axis_angle);       // Rodrigues
Vec3 log_so3(const Mat3& R);
Mat3 orthonormalize(const Mat3& R);         // nearest rotation (SVD)
double rotation_angle_between(const Mat3& a, const Mat3& b);  // radians

// --- camera description file ---
// JSON object: {fx, fy, cx, cy, skew, dist:[k1,k2,p1,p2,k3], near, far,
//               fov_deg, aspect, alpha_deg, R:[9 row-major], t:[3]}

CameraModel camera_from_json_text(const std::string& text);
std::string camera_to_json_text(const CameraModel& cam);
CameraModel load_camera(const std::string& path);
void save_camera(const std::string& path, const CameraModel& cam);

}  // namespace scopenav
