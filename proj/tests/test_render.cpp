#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "scopenav/render.hpp"
#include "support/render_oracle.hpp"

using namespace scopenav;
using namespace scopenav::testsupport;

namespace {

CameraModel test_camera(int width, int height, double fov_deg = 60.0) {
    CameraModel cam;
    double fov = fov_deg * M_PI / 180.0;
    cam.intrinsics.fx = width / (2.0 * std::tan(fov / 2.0));
    cam.intrinsics.fy = cam.intrinsics.fx;
    cam.intrinsics.cx = width / 2.0;
    cam.intrinsics.cy = height / 2.0;
    cam.frustum = {0.01, 100.0, fov, static_cast<double>(width) / height};
    return cam;
}

LabeledMesh single_triangle() {
    LabeledMesh m;
    m.vertices = {Vec3(-0.5, -0.4, 2.0), Vec3(0.6, -0.2, 2.0), Vec3(0.0, 0.5, 2.0)};
    m.faces = {{0, 1, 2}};
    m.face_region = {AnatomicalRegion::lateral_condyle};
    m.margin_polyline = {0, 1, 2};
    return m;
}

}  // namespace

TEST_CASE("single triangle silhouette matches 2D brute-force coverage") {
    LabeledMesh mesh = single_triangle();
    CameraModel cam = test_camera(64, 64);
    RenderOutput out = render(mesh, cam, 64, 64);

    Vec2 a = project_point(mesh.vertices[0], cam.intrinsics);
    Vec2 b = project_point(mesh.vertices[1], cam.intrinsics);
    Vec2 c = project_point(mesh.vertices[2], cam.intrinsics);
    long expected = coverage_count_2d(a, b, c, 64, 64);

    CHECK(mask_area(out.silhouette) > 0);
    CHECK(mask_area(out.silhouette) == expected);
}

TEST_CASE("camera looking away renders nothing") {
    LabeledMesh mesh = single_triangle();
    CameraModel cam = test_camera(32, 32);
    cam.pose.R = exp_so3(Vec3(0, M_PI, 0));  // turn around
    RenderOutput out = render(mesh, cam, 32, 32);
    CHECK(mask_area(out.silhouette) == 0);
}

TEST_CASE("z-buffer keeps the nearer face's region") {
    LabeledMesh m;
    m.vertices = {Vec3(-1, -1, 1), Vec3(1, -1, 1), Vec3(0, 1, 1),
                  Vec3(-1, -1, 2), Vec3(1, -1, 2), Vec3(0, 1, 2)};
    m.faces = {{3, 4, 5}, {0, 1, 2}};
    m.face_region = {AnatomicalRegion::medial_condyle, AnatomicalRegion::lateral_condyle};
    m.margin_polyline = {0, 1, 2};
    CameraModel cam = test_camera(32, 32, 90.0);
    RenderOutput out = render(m, cam, 32, 32);
    int cx = 16, cy = 16;
    CHECK(out.silhouette.at(cx, cy) == 1);
    CHECK(out.region.at(cx, cy) == static_cast<int8_t>(AnatomicalRegion::lateral_condyle));
    CHECK(out.depth.at(cx, cy) == doctest::Approx(1.0f));
}

TEST_CASE("degenerate triangles are skipped without error") {
    LabeledMesh m;
    m.vertices = {Vec3(0, 0, 2), Vec3(0, 0, 2), Vec3(0.3, 0.3, 2), Vec3(0.2, -0.2, 2)};
    m.faces = {{0, 1, 2}, {0, 2, 3}};
    m.face_region = {AnatomicalRegion::pcl_origin, AnatomicalRegion::pcl_origin};
    m.margin_polyline = {0, 2, 3};
    CameraModel cam = test_camera(32, 32);
    RenderOutput out = render(m, cam, 32, 32);
    CHECK(mask_area(out.silhouette) > 0);
}

TEST_CASE("determinism: identical inputs give bit-identical output") {
    LabeledMesh mesh = make_condyle_phantom(12, 18);
    CameraModel cam = test_camera(64, 64);
    cam.pose.t = Vec3(0, 0, -3.0);
    RenderOutput a = render(mesh, cam, 64, 64);
    RenderOutput b = render(mesh, cam, 64, 64);
    CHECK(a.silhouette == b.silhouette);
    CHECK(a.depth == b.depth);
    CHECK(a.region == b.region);
}

TEST_CASE("silhouette matches depth, region matches silhouette") {
    LabeledMesh mesh = make_condyle_phantom(10, 16);
    CameraModel cam = test_camera(48, 48);
    cam.pose.t = Vec3(0.2, -0.1, -2.8);
    RenderOutput out = render(mesh, cam, 48, 48);
    for (int y = 0; y < 48; ++y) {
        for (int x = 0; x < 48; ++x) {
            CHECK((out.silhouette.at(x, y) == 1) == std::isfinite(out.depth.at(x, y)));
            CHECK((out.silhouette.at(x, y) == 1) == (out.region.at(x, y) >= 0));
        }
    }
}

TEST_CASE("depth equals ray-cast minimum over random small meshes") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
        LabeledMesh m;
        for (int f = 0; f < 50; ++f) {
            int base = static_cast<int>(m.vertices.size());
            Vec3 c(u(rng) * 0.8, u(rng) * 0.8, 2.5 + u(rng));
            for (int k = 0; k < 3; ++k)
                m.vertices.push_back(c + Vec3(u(rng) * 0.4, u(rng) * 0.4, u(rng) * 0.4));
            m.faces.push_back({base, base + 1, base + 2});
            m.face_region.push_back(static_cast<AnatomicalRegion>(f % kRegionCount));
        }
        m.margin_polyline = {0, 1, 2};
        CameraModel cam = test_camera(64, 64);
        RenderOutput out = render(m, cam, 64, 64);
        auto oracle = raycast_reference(m, cam, 64, 64);
        for (int y = 0; y < 64; ++y) {
            for (int x = 0; x < 64; ++x) {
                if (out.silhouette.at(x, y)) {
                    REQUIRE(std::isfinite(oracle.at(x, y).depth));
                    CHECK(std::abs(out.depth.at(x, y) - oracle.at(x, y).depth) /
                              oracle.at(x, y).depth <
                          1e-6);
                }
            }
        }
    }
}

TEST_CASE("region histogram matches per-pixel brute force") {
    LabeledMesh mesh = make_condyle_phantom(12, 18);
    CameraModel cam = test_camera(64, 64);
    cam.pose.t = Vec3(0, 0, -3.0);
    RenderOutput out = render(mesh, cam, 64, 64);
    auto hist = visible_region_histogram(out);
    std::array<long, kRegionCount> brute{};
    long total = 0;
    for (int8_t r : out.region.data)
        if (r >= 0) {
            ++brute[r];
            ++total;
        }
    CHECK(total == mask_area(out.silhouette));
    for (int i = 0; i < kRegionCount; ++i) CHECK(hist[i] == brute[i]);

    RenderOutput empty = render(mesh, [&] {
        CameraModel c = cam;
        c.pose.R = exp_so3(Vec3(0, M_PI, 0));
        c.pose.t = Vec3(0, 0, -3.0);
        return c;
    }(), 32, 32);
    auto zero = visible_region_histogram(empty);
    for (long v : zero) CHECK(v == 0);
}

TEST_CASE("silhouette area scales by ~4x when resolution doubles") {
    LabeledMesh mesh = make_condyle_phantom(16, 24);
    CameraModel cam1 = test_camera(64, 64);
    cam1.pose.t = Vec3(0, 0, -3.0);
    CameraModel cam2 = test_camera(128, 128);
    cam2.pose.t = cam1.pose.t;
    long a1 = mask_area(render(mesh, cam1, 64, 64).silhouette);
    long a2 = mask_area(render(mesh, cam2, 128, 128).silhouette);
    CHECK(a2 > 3.6 * a1);
    CHECK(a2 < 4.4 * a1);
}

TEST_CASE("project_margin basics") {
    LabeledMesh m;
    m.vertices = {Vec3(-0.2, 0.1, 1.0), Vec3(0.0, 0.15, 1.0), Vec3(0.3, -0.1, 1.0)};
    m.faces = {{0, 1, 2}};
    m.face_region = {AnatomicalRegion::lateral_condyle};
    m.margin_polyline = {0, 1, 2};
    CameraModel cam = test_camera(64, 64);
    auto pts = project_margin(m, cam);
    REQUIRE(pts.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        Vec2 expect(cam.intrinsics.fx * m.vertices[i].x() + cam.intrinsics.cx,
                    cam.intrinsics.fy * m.vertices[i].y() + cam.intrinsics.cy);
        CHECK((pts[i] - expect).norm() < 1e-9);
    }

    CameraModel away = cam;
    away.pose.R = exp_so3(Vec3(0, M_PI, 0));
    CHECK_THROWS_AS(project_margin(m, away), InvalidArgumentError);
}

TEST_CASE("projection scales with intrinsics") {
    LabeledMesh m = single_triangle();
    CameraModel cam = test_camera(64, 64);
    auto pts1 = project_margin(m, cam);
    CameraModel cam2 = cam;
    cam2.intrinsics.fx *= 2;
    cam2.intrinsics.fy *= 2;
    cam2.intrinsics.cx *= 2;
    cam2.intrinsics.cy *= 2;
    auto pts2 = project_margin(m, cam2);
    for (size_t i = 0; i < pts1.size(); ++i) CHECK((pts2[i] - 2.0 * pts1[i]).norm() < 1e-9);
}
