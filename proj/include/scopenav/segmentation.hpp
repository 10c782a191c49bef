#pragma once

#include <functional>
#include <string>
#include <vector>

#include "scopenav/raster.hpp"

namespace scopenav {

// Per-pixel HSV planes: hue in degrees [0, 360), saturation and value in [0, 1].
struct HsvRaster {
    Raster<float> h;
    Raster<float> s;
    Raster<float> v;
};

// Dual-threshold bounds. The hue interval may wrap: lo_h > hi_h means
// [lo_h, 360) U [0, hi_h].
struct HsvThresholds {
    double lo_h = 0.0, hi_h = 360.0;
    double lo_s = 0.0, hi_s = 1.0;
    double lo_v = 0.0, hi_v = 1.0;

    void validate() const;
};

HsvThresholds thresholds_from_json_text(const std::string& text);
std::string thresholds_to_json_text(const HsvThresholds& th);
HsvThresholds load_thresholds(const std::string& path);

// Configuration defaults for bright, low-saturation cartilage-like tissue.
HsvThresholds default_tissue_thresholds();

HsvRaster rgb_to_hsv(const Image& img);
Mask threshold_hsv(const HsvRaster& hsv, const HsvThresholds& th);

// Largest 8-connected component; ties broken by smallest row-major anchor
// pixel index. Empty input gives an empty mask.
Mask largest_component(const Mask& m);

// Spatial-moment centroid (m10/m00, m01/m00). Throws on an empty region.
std::pair<double, double> centroid(const Mask& region);

// Intersection over union; both-empty is defined as 0.
double iou(const Mask& a, const Mask& b);

// Argmax of iou(candidate, reference); ties go to the lowest index.
size_t select_best_mask_index(const std::vector<Mask>& candidates, const Mask& reference);
Mask select_best_mask(const std::vector<Mask>& candidates, const Mask& reference);

// Pluggable refinement stage: maps (image, normalized prompt point) to one or
// more candidate masks matching the image dimensions.
using RefinementOracle = std::function<std::vector<Mask>(const Image&, double px, double py)>;

// Deterministic reference oracle: seeded region growing from the prompt point
// over the HSV value channel, one candidate per tolerance level.
RefinementOracle make_region_grow_oracle(std::vector<double> tolerances = {0.08, 0.15, 0.25});

// First-frame pipeline: HSV transform -> dual threshold -> largest component
// -> moment centroid prompt -> refinement candidates -> IoU-best selection
// against the threshold mask. Throws InvalidArgumentError when thresholding
// finds no foreground.
Mask segment_first_frame(const Image& img, const HsvThresholds& th, const RefinementOracle& oracle);

}  // namespace scopenav
