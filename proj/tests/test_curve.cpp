#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scopenav/curve.hpp"

using namespace scopenav;

namespace {

Curve2D circle_curve(double cx, double cy, double r, int n = 64) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * M_PI * i / n;
        pts.emplace_back(cx + r * std::cos(a), cy + r * std::sin(a));
    }
    return Curve2D(std::move(pts), true);
}

Curve2D segment_curve(Vec2 a, Vec2 b, int n = 9) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back(a + (b - a) * (double(i) / (n - 1)));
    return Curve2D(std::move(pts), false);
}

}  // namespace

TEST_CASE("curve construction removes consecutive duplicates and validates") {
    std::vector<Vec2> pts{{0, 0}, {0, 0}, {1, 0}, {1, 0}, {2, 1}};
    Curve2D c(pts, false);
    CHECK(c.points.size() == 3);
    CHECK_THROWS_AS(Curve2D({{0, 0}, {0, 0}, {0, 0}}, false), InvalidArgumentError);
}

TEST_CASE("straight segment has zero curvature everywhere") {
    Curve2D seg = segment_curve({0, 0}, {10, 5});
    ResampledCurve r = resample_and_curvature(seg, 32);
    CHECK(r.points.size() == 32);
    CHECK((r.points.front() - Vec2(0, 0)).norm() < 1e-12);
    CHECK((r.points.back() - Vec2(10, 5)).norm() < 1e-9);
    for (double k : r.curvature) CHECK(std::abs(k) < 1e-9);
}

TEST_CASE("circle curvature approximates 1/R at every sample") {
    // source polygon much finer than the 256-sample stencil
    for (double radius : {5.0, 10.0, 25.0}) {
        Curve2D c = circle_curve(0, 0, radius, 4096);
        ResampledCurve r = resample_and_curvature(c, 256);
        for (double k : r.curvature)
            CHECK(std::abs(k - 1.0 / radius) / (1.0 / radius) < 0.02);
    }
}

TEST_CASE("resampled spacing is uniform in arc length") {
    Curve2D c = circle_curve(3, -2, 7, 100);
    ResampledCurve r = resample_and_curvature(c, 64);
    double expected = r.arc_length / 64;
    for (size_t i = 0; i + 1 < r.points.size(); ++i) {
        double d = (r.points[i + 1] - r.points[i]).norm();
        CHECK(d == doctest::Approx(expected).epsilon(0.01));
    }
    CHECK_THROWS_AS(resample_and_curvature(c, 4), InvalidArgumentError);
}

TEST_CASE("hausdorff basics") {
    std::vector<Vec2> a{{0, 0}, {1, 0}, {2, 0}};
    CHECK(hausdorff(a, a) == doctest::Approx(0.0));
    CHECK(hausdorff({{0, 0}}, {{3, 4}}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(hausdorff({}, a), InvalidArgumentError);
}

TEST_CASE("hausdorff of a subset is the unmatched direction") {
    std::vector<Vec2> small{{0, 0}, {1, 0}};
    std::vector<Vec2> big{{0, 0}, {1, 0}, {10, 0}, {11, 2}, {-4, 1}};
    // directed small->big is 0; symmetric value is the worst big->small distance
    double worst = 0.0;
    for (const Vec2& q : big) {
        double best = 1e300;
        for (const Vec2& p : small) best = std::min(best, (p - q).norm());
        worst = std::max(worst, best);
    }
    CHECK(hausdorff(small, big) == doctest::Approx(worst));
}

TEST_CASE("shape difference of identical curves is zero") {
    Curve2D c = circle_curve(0, 0, 8);
    CHECK(shape_difference(c, c, {1.0, 25.0}) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("pure point term equals translation distance") {
    Curve2D a = circle_curve(0, 0, 8);
    Curve2D b = circle_curve(3, 4, 8);
    double d = shape_difference(a, b, {1.0, 0.0});
    CHECK(d == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("pure curvature term matches the analytic circle integral") {
    // closed circles R=10 vs R=20; integral of |1/10 - 1/20| over the first
    // curve's length 2*pi*10
    Curve2D a = circle_curve(0, 0, 10, 256);
    Curve2D b = circle_curve(0, 0, 20, 256);
    double d = shape_difference(a, b, {0.0, 1.0}, 256);
    double expected = (0.1 - 0.05) * 2.0 * M_PI * 10.0;
    CHECK(d == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("boundary similarity") {
    Curve2D c = circle_curve(0, 0, 8);
    CHECK(boundary_similarity(c, c, 0.5, {1.0, 25.0}) == doctest::Approx(1.0));

    Curve2D shifted = circle_curve(3, 4, 8);
    CHECK(boundary_similarity(c, shifted, 0.0, {1.0, 0.0}) == doctest::Approx(1.0));
    // lambda=0.1, D=5 -> e^-0.5
    CHECK(boundary_similarity(c, shifted, 0.1, {1.0, 0.0}) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
}

TEST_CASE("boundary similarity strictly decreases in D for lambda > 0") {
    Curve2D base = circle_curve(0, 0, 8);
    double prev = 1.1;
    for (double shift : {0.0, 1.0, 2.0, 5.0, 9.0}) {
        Curve2D moved = circle_curve(shift, 0, 8);
        double s = boundary_similarity(base, moved, 0.2, {1.0, 0.0});
        CHECK(s > 0.0);
        CHECK(s <= 1.0);
        CHECK(s < prev);
        prev = s;
    }
}
