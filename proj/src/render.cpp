#include "scopenav/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scopenav {

namespace {

struct CamVertex {
    Vec3 p;  // camera-space position
};

// Clips a camera-space triangle against the plane z = znear.
// Returns 0..4 vertices of the clipped polygon.
int clip_near(const Vec3 in[3], double znear, Vec3 out[4]) {
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        const Vec3& a = in[i];
        const Vec3& b = in[(i + 1) % 3];
        const bool ain = a.z() >= znear;
        const bool bin = b.z() >= znear;
        if (ain) out[n++] = a;
        if (ain != bin) {
            double t = (znear - a.z()) / (b.z() - a.z());
            out[n++] = a + t * (b - a);
        }
    }
    return n;
}

}  // namespace

RenderOutput render(const LabeledMesh& mesh, const CameraModel& cam, int width, int height) {
    if (width < 8 || height < 8) throw InvalidArgumentError("render: size must be at least 8x8");
    mesh.validate();
    cam.validate();

    RenderOutput out;
    out.silhouette = Mask(width, height, 0);
    out.depth = Raster<float>(width, height, std::numeric_limits<float>::infinity());
    out.region = Raster<int8_t>(width, height, -1);

    const Pose view = cam.view_pose();
    const CameraIntrinsics& K = cam.intrinsics;
    const double znear = std::max(cam.frustum.near_z, 1e-9);
    const double zfar = cam.frustum.far_z;

    std::vector<Vec3> cam_pts(mesh.vertices.size());
    for (size_t i = 0; i < mesh.vertices.size(); ++i) cam_pts[i] = view.to_camera(mesh.vertices[i]);

    for (size_t fi = 0; fi < mesh.faces.size(); ++fi) {
        const auto& f = mesh.faces[fi];
        Vec3 tri[3] = {cam_pts[f[0]], cam_pts[f[1]], cam_pts[f[2]]};
        Vec3 poly[4];
        int n = clip_near(tri, znear, poly);
        if (n < 3) continue;

        for (int k = 1; k + 1 < n; ++k) {
            const Vec3 v0 = poly[0], v1 = poly[k], v2 = poly[k + 1];
            // screen positions and inverse depths
            double iz0 = 1.0 / v0.z(), iz1 = 1.0 / v1.z(), iz2 = 1.0 / v2.z();
            Vec2 s0(K.fx * v0.x() * iz0 + K.skew * v0.y() * iz0 + K.cx, K.fy * v0.y() * iz0 + K.cy);
            Vec2 s1(K.fx * v1.x() * iz1 + K.skew * v1.y() * iz1 + K.cx, K.fy * v1.y() * iz1 + K.cy);
            Vec2 s2(K.fx * v2.x() * iz2 + K.skew * v2.y() * iz2 + K.cx, K.fy * v2.y() * iz2 + K.cy);

            double area = (s1.x() - s0.x()) * (s2.y() - s0.y()) - (s1.y() - s0.y()) * (s2.x() - s0.x());
            if (std::abs(area) < 1e-12) continue;  // degenerate in screen space
            const double inv_area = 1.0 / area;

            int x0 = std::max(0, static_cast<int>(std::floor(std::min({s0.x(), s1.x(), s2.x()}) - 0.5)));
            int x1 = std::min(width - 1, static_cast<int>(std::ceil(std::max({s0.x(), s1.x(), s2.x()}))));
            int y0 = std::max(0, static_cast<int>(std::floor(std::min({s0.y(), s1.y(), s2.y()}) - 0.5)));
            int y1 = std::min(height - 1, static_cast<int>(std::ceil(std::max({s0.y(), s1.y(), s2.y()}))));

            for (int py = y0; py <= y1; ++py) {
                const double cy = py + 0.5;
                for (int px = x0; px <= x1; ++px) {
                    const double cx = px + 0.5;
                    double w0 = (s1.x() - cx) * (s2.y() - cy) - (s1.y() - cy) * (s2.x() - cx);
                    double w1 = (s2.x() - cx) * (s0.y() - cy) - (s2.y() - cy) * (s0.x() - cx);
                    double w2 = (s0.x() - cx) * (s1.y() - cy) - (s0.y() - cy) * (s1.x() - cx);
                    // inside when all barycentric weights share the area's sign
                    if (area > 0) {
                        if (w0 < 0 || w1 < 0 || w2 < 0) continue;
                    } else {
                        if (w0 > 0 || w1 > 0 || w2 > 0) continue;
                    }
                    const double b0 = w0 * inv_area, b1 = w1 * inv_area, b2 = w2 * inv_area;
                    const double iz = b0 * iz0 + b1 * iz1 + b2 * iz2;
                    if (!(iz > 0)) continue;
                    const float z = static_cast<float>(1.0 / iz);
                    if (z > zfar) continue;
                    if (z < out.depth.at(px, py)) {
                        out.depth.at(px, py) = z;
                        out.silhouette.at(px, py) = 1;
                        out.region.at(px, py) = static_cast<int8_t>(mesh.face_region[fi]);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<Vec2> project_margin(const LabeledMesh& mesh, const CameraModel& cam) {
    mesh.validate();
    const Pose view = cam.view_pose();
    std::vector<Vec2> curve;
    curve.reserve(mesh.margin_polyline.size());
    for (int idx : mesh.margin_polyline) {
        const Vec3 pc = view.to_camera(mesh.vertices[idx]);
        if (pc.z() > 1e-12) curve.push_back(project_point(pc, cam.intrinsics));
    }
    if (curve.empty())
        throw InvalidArgumentError("project_margin: margin entirely behind the camera");
    return curve;
}

std::array<long, kRegionCount> visible_region_histogram(const RenderOutput& out) {
    std::array<long, kRegionCount> counts{};
    for (int8_t r : out.region.data)
        if (r >= 0) ++counts[r];
    return counts;
}

GrayF shade_depth(const RenderOutput& out, const CameraModel& cam) {
    GrayF g(out.width(), out.height(), 0.0f);
    const double n = cam.frustum.near_z, f = cam.frustum.far_z;
    for (size_t i = 0; i < g.size(); ++i) {
        const float d = out.depth.data[i];
        if (!std::isfinite(d)) continue;
        double t = std::clamp((d - n) / (f - n), 0.0, 1.0);
        g.data[i] = static_cast<float>((230.0 - 150.0 * t) / 255.0);
    }
    return g;
}

}  // namespace scopenav
