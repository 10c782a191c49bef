#include "scopenav/curve.hpp"

#include <cmath>
#include <limits>

namespace scopenav {

Curve2D::Curve2D(std::vector<Vec2> pts, bool is_closed) : closed(is_closed) {
    points.reserve(pts.size());
    for (const Vec2& p : pts) {
        if (!p.allFinite()) throw InvalidArgumentError("curve point is non-finite");
        if (!points.empty() && (p - points.back()).norm() < 1e-12) continue;
        points.push_back(p);
    }
    if (closed && points.size() > 1 && (points.front() - points.back()).norm() < 1e-12)
        points.pop_back();
    if (points.size() < 3) throw InvalidArgumentError("curve needs at least 3 distinct points");
}

double Curve2D::length() const {
    double total = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i) total += (points[i + 1] - points[i]).norm();
    if (closed) total += (points.front() - points.back()).norm();
    return total;
}

namespace {

// Unsigned curvature of the circle through three points.
double three_point_curvature(const Vec2& a, const Vec2& b, const Vec2& c) {
    const Vec2 ab = b - a, bc = c - b, ac = c - a;
    const double d1 = ab.norm(), d2 = bc.norm(), d3 = ac.norm();
    if (d1 < 1e-12 || d2 < 1e-12 || d3 < 1e-12) return 0.0;
    const double cross = ab.x() * bc.y() - ab.y() * bc.x();
    return 2.0 * std::abs(cross) / (d1 * d2 * d3);
}

}  // namespace

ResampledCurve resample_and_curvature(const Curve2D& c, int n_samples) {
    if (n_samples < 8) throw InvalidArgumentError("resample: need at least 8 samples");
    const double total = c.length();
    if (!(total > 0.0)) throw InvalidArgumentError("resample: zero-length curve");

    // cumulative arc length over segments (closing segment appended if closed)
    std::vector<Vec2> pts = c.points;
    if (c.closed) pts.push_back(c.points.front());
    std::vector<double> cum(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + (pts[i] - pts[i - 1]).norm();

    ResampledCurve out;
    out.arc_length = total;
    out.closed = c.closed;
    out.points.resize(n_samples);
    const double step = c.closed ? total / n_samples : total / (n_samples - 1);
    size_t seg = 0;
    for (int i = 0; i < n_samples; ++i) {
        double s = std::min(step * i, total);
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] < s) ++seg;
        const double seg_len = cum[seg + 1] - cum[seg];
        const double t = seg_len > 0.0 ? (s - cum[seg]) / seg_len : 0.0;
        out.points[i] = pts[seg] + t * (pts[seg + 1] - pts[seg]);
    }

    out.curvature.assign(n_samples, 0.0);
    if (c.closed) {
        for (int i = 0; i < n_samples; ++i) {
            const Vec2& prev = out.points[(i + n_samples - 1) % n_samples];
            const Vec2& next = out.points[(i + 1) % n_samples];
            out.curvature[i] = three_point_curvature(prev, out.points[i], next);
        }
    } else {
        for (int i = 1; i + 1 < n_samples; ++i)
            out.curvature[i] =
                three_point_curvature(out.points[i - 1], out.points[i], out.points[i + 1]);
        out.curvature[0] = out.curvature[1];
        out.curvature[n_samples - 1] = out.curvature[n_samples - 2];
    }
    return out;
}

double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.empty() || b.empty()) throw InvalidArgumentError("hausdorff: empty point set");
    auto directed = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        double worst = 0.0;
        for (const Vec2& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& q : to) best = std::min(best, (p - q).squaredNorm());
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

double shape_difference(const Curve2D& curve_a, const Curve2D& curve_b, const ShapeDiffWeights& w,
                        int n_samples) {
    if (w.omega_d < 0.0 || w.omega_kappa < 0.0)
        throw InvalidArgumentError("shape-difference weights must be >= 0");
    const ResampledCurve ra = resample_and_curvature(curve_a, n_samples);
    const ResampledCurve rb = resample_and_curvature(curve_b, n_samples);

    const double point_term = w.omega_d > 0.0 ? hausdorff(ra.points, rb.points) : 0.0;

    double kappa_term = 0.0;
    if (w.omega_kappa > 0.0) {
        // ds from the first curve's parameterization; trapezoidal end weights
        // for open curves.
        const double ds = ra.closed ? ra.arc_length / n_samples : ra.arc_length / (n_samples - 1);
        for (int i = 0; i < n_samples; ++i) {
            double weight = ds;
            if (!ra.closed && (i == 0 || i == n_samples - 1)) weight = 0.5 * ds;
            kappa_term += std::abs(ra.curvature[i] - rb.curvature[i]) * weight;
        }
    }
    return w.omega_d * point_term + w.omega_kappa * kappa_term;
}

double boundary_similarity(const Curve2D& curve_a, const Curve2D& curve_b, double lambda,
                           const ShapeDiffWeights& w, int n_samples) {
    if (lambda < 0.0) throw InvalidArgumentError("boundary similarity: lambda must be >= 0");
    return std::exp(-lambda * shape_difference(curve_a, curve_b, w, n_samples));
}

}  // namespace scopenav
