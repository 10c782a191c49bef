#pragma once

#include <array>
#include <vector>

#include "scopenav/camera.hpp"
#include "scopenav/mesh.hpp"
#include "scopenav/raster.hpp"

namespace scopenav {

// Flat z-buffered rasterization result. silhouette pixels are exactly those
// with finite depth; region holds the nearest face's label (-1 where empty).
struct RenderOutput {
    Mask silhouette;
    Raster<float> depth;      // +inf where empty
    Raster<int8_t> region;    // AnatomicalRegion index or -1

    int width() const { return silhouette.width; }
    int height() const { return silhouette.height; }
};

// Renders the mesh with the camera's offset-composed view pose. Samples at
// pixel centers (x+0.5, y+0.5); no backface culling; zero-area triangles are
// skipped; triangles are clipped to the near plane and fragments beyond the
// far plane are discarded. Deterministic for identical inputs.
RenderOutput render(const LabeledMesh& mesh, const CameraModel& cam, int width, int height);

// Projects the margin polyline through the view pose; vertices with
// non-positive depth are dropped, order preserved. Throws InvalidArgumentError
// when every vertex is behind the camera.
std::vector<Vec2> project_margin(const LabeledMesh& mesh, const CameraModel& cam);

// Per-region silhouette pixel counts; the sum equals the silhouette area.
std::array<long, kRegionCount> visible_region_histogram(const RenderOutput& out);

// Fixed depth-ramp shading used for the texture-similarity term and by the
// synthetic-frame generator: near_z maps to 230, far_z to 80, empty stays 0.
GrayF shade_depth(const RenderOutput& out, const CameraModel& cam);

}  // namespace scopenav
