#pragma once

// Brute-force mask oracles: recursive-scan flood fill for component areas and
// direct set counting for IoU, written independently of the library paths.

#include <random>
#include <vector>

#include "scopenav/raster.hpp"

namespace scopenav::testsupport {

// Areas of all 8-connected components, via repeated scan-and-mark flood fill.
inline std::vector<long> flood_fill_component_areas(const Mask& m) {
    Mask work = m;
    std::vector<long> areas;
    for (int y0 = 0; y0 < work.height; ++y0) {
        for (int x0 = 0; x0 < work.width; ++x0) {
            if (!work.at(x0, y0)) continue;
            long area = 0;
            std::vector<std::pair<int, int>> stack{{x0, y0}};
            work.at(x0, y0) = 0;
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                ++area;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = x + dx, ny = y + dy;
                        if (work.in_bounds(nx, ny) && work.at(nx, ny)) {
                            work.at(nx, ny) = 0;
                            stack.emplace_back(nx, ny);
                        }
                    }
            }
            areas.push_back(area);
        }
    }
    return areas;
}

inline double iou_by_counting(const Mask& a, const Mask& b) {
    long inter = 0, uni = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        inter += (a.data[i] && b.data[i]) ? 1 : 0;
        uni += (a.data[i] || b.data[i]) ? 1 : 0;
    }
    return uni == 0 ? 0.0 : double(inter) / double(uni);
}

inline Mask random_mask(int w, int h, std::mt19937& rng, double fill = 0.35) {
    Mask m(w, h);
    std::bernoulli_distribution coin(fill);
    for (auto& v : m.data) v = coin(rng) ? 1 : 0;
    return m;
}

inline Mask disc_mask(int w, int h, double cx, double cy, double r) {
    Mask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.at(x, y) = 1;
    return m;
}

}  // namespace scopenav::testsupport
