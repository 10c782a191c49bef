#pragma once

#include <vector>

#include "scopenav/camera.hpp"

namespace scopenav {

// Ordered planar curve in pixel coordinates. Consecutive duplicate points are
// removed at construction; at least 3 distinct-in-sequence points required.
struct Curve2D {
    std::vector<Vec2> points;
    bool closed = false;

    Curve2D() = default;
    Curve2D(std::vector<Vec2> pts, bool is_closed);

    double length() const;  // total arc length (including the closing segment)
};

struct ResampledCurve {
    std::vector<Vec2> points;      // arc-length-uniform, size N
    std::vector<double> curvature;  // unsigned curvature per sample
    double arc_length = 0.0;        // source curve length
    bool closed = false;
};

// Arc-length-uniform resampling with three-point finite-difference curvature.
// Open curves keep their endpoints (spacing L/(N-1)); closed curves wrap
// (spacing L/N). N >= 8 required.
ResampledCurve resample_and_curvature(const Curve2D& c, int n_samples);

// Symmetric Hausdorff distance between point sets.
double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

// Shape-difference weights: point-set term omega_d, curvature-integral term
// omega_kappa.
struct ShapeDiffWeights {
    double omega_d = 1.0;
    double omega_kappa = 25.0;
};

// D = omega_d * hausdorff(resampled sets)
//   + omega_kappa * sum_i |kappa_a(s_i) - kappa_v(s_i)| * ds
// with both curves matched by normalized arc length over n_samples and ds
// taken from the first curve's arc length.
double shape_difference(const Curve2D& curve_a, const Curve2D& curve_b, const ShapeDiffWeights& w,
                        int n_samples = 256);

// S_b = exp(-lambda * D)
double boundary_similarity(const Curve2D& curve_a, const Curve2D& curve_b, double lambda,
                           const ShapeDiffWeights& w, int n_samples = 256);

}  // namespace scopenav
