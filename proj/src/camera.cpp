#include "scopenav/camera.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scopenav {

namespace {
bool finite3(const Vec3& v) { return v.allFinite(); }
}  // namespace

Mat3 CameraIntrinsics::matrix() const {
    Mat3 k;
    k << fx, skew, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
    return k;
}

void CameraIntrinsics::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0))
        throw InvalidArgumentError("intrinsics require fx > 0 and fy > 0");
    if (!std::isfinite(fx) || !std::isfinite(fy) || !std::isfinite(cx) || !std::isfinite(cy) ||
        !std::isfinite(skew))
        throw InvalidArgumentError("intrinsics must be finite");
}

bool DistortionCoefficients::is_zero() const {
    return k1 == 0.0 && k2 == 0.0 && k3 == 0.0 && p1 == 0.0 && p2 == 0.0;
}

void DistortionCoefficients::validate() const {
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3) || !std::isfinite(p1) ||
        !std::isfinite(p2))
        throw InvalidArgumentError("distortion coefficients must be finite");
}

void Pose::validate(double tol) const {
    if (!R.allFinite() || !finite3(t)) throw InvalidArgumentError("pose must be finite");
    if ((R.transpose() * R - Mat3::Identity()).norm() > tol)
        throw InvalidArgumentError("rotation is not orthonormal");
    if (std::abs(R.determinant() - 1.0) > tol)
        throw InvalidArgumentError("rotation determinant is not +1");
}

void UnitQuaternion::validate(double tol) const {
    double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (std::abs(n - 1.0) > tol) throw InvalidArgumentError("quaternion is not unit norm");
}

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
}

Mat3 UnitQuaternion::to_matrix() const {
    return Eigen::Quaterniond(w, x, y, z).normalized().toRotationMatrix();
}

UnitQuaternion UnitQuaternion::from_matrix(const Mat3& R) {
    Eigen::Quaterniond q(R);
    q.normalize();
    return {q.w(), q.x(), q.y(), q.z()};
}

UnitQuaternion UnitQuaternion::normalized() const {
    double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (n < 1e-300) throw InvalidArgumentError("cannot normalize zero quaternion");
    return {w / n, x / n, y / n, z / n};
}

void Frustum::validate() const {
    if (!(near_z > 0.0) || !(far_z > near_z))
        throw InvalidArgumentError("frustum requires 0 < near < far");
    if (!(fov > 0.0) || !(fov < M_PI)) throw InvalidArgumentError("frustum requires 0 < fov < pi");
    if (!(aspect > 0.0)) throw InvalidArgumentError("frustum requires aspect > 0");
}

Pose CameraModel::view_pose() const { return compose_offset(pose, alpha); }

void CameraModel::validate() const {
    intrinsics.validate();
    distortion.validate();
    pose.validate();
    frustum.validate();
    if (!std::isfinite(alpha)) throw InvalidArgumentError("alpha must be finite");
}

Vec2 distort_point(const Vec2& p, const DistortionCoefficients& d) {
    if (!p.allFinite()) throw InvalidArgumentError("distort_point: non-finite input");
    const double x = p.x(), y = p.y();
    const double r2 = x * x + y * y;
    const double radial = 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k3));
    const double xd = x * radial + 2.0 * d.p1 * x * y + d.p2 * (r2 + 2.0 * x * x);
    const double yd = y * radial + 2.0 * d.p2 * x * y + d.p1 * (r2 + 2.0 * y * y);
    return {xd, yd};
}

Vec2 undistort_point(const Vec2& p_distorted, const DistortionCoefficients& d) {
    if (!p_distorted.allFinite()) throw InvalidArgumentError("undistort_point: non-finite input");
    if (d.is_zero()) return p_distorted;

    Vec2 p = p_distorted;
    constexpr int kMaxIters = 20;
    constexpr double kTol = 1e-10;
    for (int i = 0; i < kMaxIters; ++i) {
        const double x = p.x(), y = p.y();
        const double r2 = x * x + y * y;
        const double radial = 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k3));
        if (!(std::abs(radial) > 1e-12))
            throw NumericalFailureError("undistort_point: radial factor vanished");
        const double tx = 2.0 * d.p1 * x * y + d.p2 * (r2 + 2.0 * x * x);
        const double ty = 2.0 * d.p2 * x * y + d.p1 * (r2 + 2.0 * y * y);
        Vec2 next((p_distorted.x() - tx) / radial, (p_distorted.y() - ty) / radial);
        if (!next.allFinite()) throw NumericalFailureError("undistort_point: diverged");
        double change = (next - p).norm();
        p = next;
        if (change < kTol) return p;
    }
    // Accept the final iterate only if it actually inverts the model.
    if ((distort_point(p, d) - p_distorted).norm() > 1e-8)
        throw NumericalFailureError("undistort_point: no convergence after max iterations");
    return p;
}

Mat4 build_projection_matrix(const Frustum& fr) {
    fr.validate();
    const double cot_half = 1.0 / std::tan(fr.fov / 2.0);
    const double n = fr.near_z, f = fr.far_z;
    Mat4 p = Mat4::Zero();
    p(0, 0) = cot_half / fr.aspect;
    p(1, 1) = cot_half;
    p(2, 2) = (f + n) / (n - f);
    p(2, 3) = 2.0 * f * n / (n - f);
    p(3, 2) = -1.0;
    return p;
}

Mat3 angular_offset_rotation(double alpha) {
    if (!std::isfinite(alpha)) throw InvalidArgumentError("alpha must be finite");
    const double c = std::cos(alpha), s = std::sin(alpha);
    Mat3 r;
    r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
    return r;
}

Pose compose_offset(const Pose& scope_pose, double alpha) {
    Pose out;
    out.R = scope_pose.R * angular_offset_rotation(alpha);
    out.t = scope_pose.t;
    return out;
}

Vec3 world_to_camera(const Vec3& p_world, const Pose& pose) {
    return pose.R * (p_world - pose.t);
}

Vec2 project_point(const Vec3& p_cam, const CameraIntrinsics& K) {
    if (!(p_cam.z() > 1e-12))
        throw InvalidArgumentError("project_point: point at or behind the camera plane");
    const double inv_z = 1.0 / p_cam.z();
    const double xn = p_cam.x() * inv_z;
    const double yn = p_cam.y() * inv_z;
    return {K.fx * xn + K.skew * yn + K.cx, K.fy * yn + K.cy};
}

Vec2 project_world_point(const Vec3& p_world, const Pose& pose, const CameraIntrinsics& K,
                         const DistortionCoefficients& d) {
    const Vec3 pc = world_to_camera(p_world, pose);
    if (!(pc.z() > 1e-12))
        throw InvalidArgumentError("project_world_point: point at or behind the camera plane");
    Vec2 norm(pc.x() / pc.z(), pc.y() / pc.z());
    Vec2 nd = d.is_zero() ? norm : distort_point(norm, d);
    return {K.fx * nd.x() + K.skew * nd.y() + K.cx, K.fy * nd.y() + K.cy};
}

Mat3 exp_so3(const Vec3& axis_angle) {
    const double theta = axis_angle.norm();
    if (theta < 1e-12) {
        Mat3 skew;
        skew << 0, -axis_angle.z(), axis_angle.y(), axis_angle.z(), 0, -axis_angle.x(),
            -axis_angle.y(), axis_angle.x(), 0;
        return Mat3::Identity() + skew;  // first-order, adequate below 1e-12
    }
    return Eigen::AngleAxisd(theta, axis_angle / theta).toRotationMatrix();
}

Vec3 log_so3(const Mat3& R) {
    Eigen::AngleAxisd aa(R);
    return aa.angle() * aa.axis();
}

Mat3 orthonormalize(const Mat3& R) {
    Eigen::JacobiSVD<Mat3> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 out = svd.matrixU() * svd.matrixV().transpose();
    if (out.determinant() < 0) {
        Mat3 flip = Mat3::Identity();
        flip(2, 2) = -1.0;
        out = svd.matrixU() * flip * svd.matrixV().transpose();
    }
    return out;
}

double rotation_angle_between(const Mat3& a, const Mat3& b) {
    const Mat3 rel = a * b.transpose();
    double c = (rel.trace() - 1.0) / 2.0;
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

// --- JSON camera schema ---

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

CameraModel camera_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("camera JSON parse error: ") + e.what());
    }
    CameraModel cam;
    try {
        cam.intrinsics.fx = j.at("fx").get<double>();
        cam.intrinsics.fy = j.at("fy").get<double>();
        cam.intrinsics.cx = j.at("cx").get<double>();
        cam.intrinsics.cy = j.at("cy").get<double>();
        cam.intrinsics.skew = j.value("skew", 0.0);
        if (j.contains("dist")) {
            auto d = j.at("dist");
            if (d.size() != 5) throw IoError("camera dist must have 5 entries [k1,k2,p1,p2,k3]");
            cam.distortion.k1 = d[0].get<double>();
            cam.distortion.k2 = d[1].get<double>();
            cam.distortion.p1 = d[2].get<double>();
            cam.distortion.p2 = d[3].get<double>();
            cam.distortion.k3 = d[4].get<double>();
        }
        cam.frustum.near_z = j.at("near").get<double>();
        cam.frustum.far_z = j.at("far").get<double>();
        cam.frustum.fov = j.at("fov_deg").get<double>() * kDegToRad;
        cam.frustum.aspect = j.at("aspect").get<double>();
        cam.alpha = j.value("alpha_deg", 0.0) * kDegToRad;
        if (j.contains("R")) {
            auto r = j.at("R");
            if (r.size() != 9) throw IoError("camera R must have 9 row-major entries");
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) cam.pose.R(i, k) = r[i * 3 + k].get<double>();
        }
        if (j.contains("t")) {
            auto t = j.at("t");
            if (t.size() != 3) throw IoError("camera t must have 3 entries");
            for (int i = 0; i < 3; ++i) cam.pose.t(i) = t[i].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("camera JSON schema error: ") + e.what());
    }
    cam.validate();
    return cam;
}

std::string camera_to_json_text(const CameraModel& cam) {
    nlohmann::json j;
    j["fx"] = cam.intrinsics.fx;
    j["fy"] = cam.intrinsics.fy;
    j["cx"] = cam.intrinsics.cx;
    j["cy"] = cam.intrinsics.cy;
    j["skew"] = cam.intrinsics.skew;
    j["dist"] = {cam.distortion.k1, cam.distortion.k2, cam.distortion.p1, cam.distortion.p2,
                 cam.distortion.k3};
    j["near"] = cam.frustum.near_z;
    j["far"] = cam.frustum.far_z;
    j["fov_deg"] = cam.frustum.fov / kDegToRad;
    j["aspect"] = cam.frustum.aspect;
    j["alpha_deg"] = cam.alpha / kDegToRad;
    std::vector<double> r(9);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r[i * 3 + k] = cam.pose.R(i, k);
    j["R"] = r;
    j["t"] = {cam.pose.t.x(), cam.pose.t.y(), cam.pose.t.z()};
    return j.dump(2);
}

CameraModel load_camera(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return camera_from_json_text(ss.str());
}

void save_camera(const std::string& path, const CameraModel& cam) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << camera_to_json_text(cam) << "\n";
}

}  // namespace scopenav
