#pragma once

#include <array>
#include <string>
#include <vector>

#include "scopenav/camera.hpp"

namespace scopenav {

enum class AnatomicalRegion : int {
    intercondylar_notch = 0,
    medial_condyle = 1,
    lateral_condyle = 2,
    supracondylar_area = 3,
    pcl_origin = 4,
};

inline constexpr int kRegionCount = 5;

const char* region_name(AnatomicalRegion r);
AnatomicalRegion region_from_name(const std::string& name);

// Triangle mesh with a per-face region label and a marked margin polyline
// (ordered vertex indices tracing the articular margin).
struct LabeledMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<AnatomicalRegion> face_region;
    std::vector<int> margin_polyline;

    void validate() const;
    Vec3 bbox_min() const;
    Vec3 bbox_max() const;
    Vec3 center() const { return 0.5 * (bbox_min() + bbox_max()); }
};

// ASCII Wavefront-OBJ subset: `v x y z` and `f i j k` (1-based). Other
// directives are ignored.
LabeledMesh load_obj(const std::string& path);
void save_obj(const std::string& path, const LabeledMesh& mesh);

// Sidecar labels JSON: {"face_regions": [name per face],
//                       "margin_polyline": [0-based vertex indices]}
void load_labels(const std::string& path, LabeledMesh& mesh);
void save_labels(const std::string& path, const LabeledMesh& mesh);

LabeledMesh load_labeled_mesh(const std::string& obj_path, const std::string& labels_path);

// Smooth convex ellipsoid phantom used by tests and the synthetic harness:
// latitude/longitude tessellation, five angular-sector region labels, and an
// open margin arc at a fixed latitude.
LabeledMesh make_condyle_phantom(int lat_segments = 24, int lon_segments = 36,
                                 const Vec3& radii = Vec3(1.0, 0.85, 0.75),
                                 const Vec3& center = Vec3::Zero());

}  // namespace scopenav
