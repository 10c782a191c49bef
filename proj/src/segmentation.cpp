#include "scopenav/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

#include <json.hpp>

namespace scopenav {

void HsvThresholds::validate() const {
    if (lo_h < 0.0 || lo_h >= 360.0 || hi_h < 0.0 || hi_h > 360.0)
        throw InvalidArgumentError("hue bounds must lie in [0, 360]");
    if (lo_s > hi_s || lo_v > hi_v)
        throw InvalidArgumentError("saturation/value bounds must be ordered");
    if (lo_s < 0 || hi_s > 1 || lo_v < 0 || hi_v > 1)
        throw InvalidArgumentError("saturation/value bounds must lie in [0, 1]");
}

HsvThresholds thresholds_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("thresholds JSON parse error: ") + e.what());
    }
    HsvThresholds th;
    try {
        th.lo_h = j.at("h")[0].get<double>();
        th.hi_h = j.at("h")[1].get<double>();
        th.lo_s = j.at("s")[0].get<double>();
        th.hi_s = j.at("s")[1].get<double>();
        th.lo_v = j.at("v")[0].get<double>();
        th.hi_v = j.at("v")[1].get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("thresholds schema error: ") + e.what());
    }
    th.validate();
    return th;
}

std::string thresholds_to_json_text(const HsvThresholds& th) {
    nlohmann::json j;
    j["h"] = {th.lo_h, th.hi_h};
    j["s"] = {th.lo_s, th.hi_s};
    j["v"] = {th.lo_v, th.hi_v};
    return j.dump(2);
}

HsvThresholds load_thresholds(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return thresholds_from_json_text(text);
}

HsvThresholds default_tissue_thresholds() {
    HsvThresholds th;
    th.lo_s = 0.0;
    th.hi_s = 0.35;
    th.lo_v = 0.6;
    th.hi_v = 1.0;
    return th;
}

HsvRaster rgb_to_hsv(const Image& img) {
    HsvRaster out;
    out.h = Raster<float>(img.width, img.height);
    out.s = Raster<float>(img.width, img.height);
    out.v = Raster<float>(img.width, img.height);
    const uint8_t* p = img.rgb.data();
    for (size_t i = 0; i < out.h.size(); ++i, p += 3) {
        const double r = p[0] / 255.0, g = p[1] / 255.0, b = p[2] / 255.0;
        const double mx = std::max({r, g, b});
        const double mn = std::min({r, g, b});
        const double delta = mx - mn;
        double h = 0.0;
        if (delta > 0.0) {
            if (mx == r)
                h = 60.0 * std::fmod((g - b) / delta, 6.0);
            else if (mx == g)
                h = 60.0 * ((b - r) / delta + 2.0);
            else
                h = 60.0 * ((r - g) / delta + 4.0);
            if (h < 0.0) h += 360.0;
        }
        out.h.data[i] = static_cast<float>(h);
        out.s.data[i] = static_cast<float>(mx > 0.0 ? delta / mx : 0.0);
        out.v.data[i] = static_cast<float>(mx);
    }
    return out;
}

Mask threshold_hsv(const HsvRaster& hsv, const HsvThresholds& th) {
    th.validate();
    Mask m(hsv.h.width, hsv.h.height);
    const bool hue_wraps = th.lo_h > th.hi_h;
    for (size_t i = 0; i < m.size(); ++i) {
        const double h = hsv.h.data[i], s = hsv.s.data[i], v = hsv.v.data[i];
        const bool hue_ok = hue_wraps ? (h >= th.lo_h || h <= th.hi_h)
                                      : (h >= th.lo_h && h <= th.hi_h);
        m.data[i] = (hue_ok && s >= th.lo_s && s <= th.hi_s && v >= th.lo_v && v <= th.hi_v) ? 1 : 0;
    }
    return m;
}

Mask largest_component(const Mask& m) {
    Mask best(m.width, m.height);
    std::vector<uint8_t> seen(m.size(), 0);
    long best_area = 0;
    long best_anchor = -1;
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            const size_t root = static_cast<size_t>(y) * m.width + x;
            if (!m.data[root] || seen[root]) continue;
            std::vector<size_t> comp;
            std::deque<std::pair<int, int>> queue{{x, y}};
            seen[root] = 1;
            while (!queue.empty()) {
                auto [cx, cy] = queue.front();
                queue.pop_front();
                comp.push_back(static_cast<size_t>(cy) * m.width + cx);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (!m.in_bounds(nx, ny)) continue;
                        const size_t ni = static_cast<size_t>(ny) * m.width + nx;
                        if (m.data[ni] && !seen[ni]) {
                            seen[ni] = 1;
                            queue.emplace_back(nx, ny);
                        }
                    }
                }
            }
            const long area = static_cast<long>(comp.size());
            const long anchor = static_cast<long>(*std::min_element(comp.begin(), comp.end()));
            if (area > best_area || (area == best_area && anchor < best_anchor)) {
                best_area = area;
                best_anchor = anchor;
                std::fill(best.data.begin(), best.data.end(), 0);
                for (size_t i : comp) best.data[i] = 1;
            }
        }
    }
    return best;
}

std::pair<double, double> centroid(const Mask& region) {
    double m00 = 0.0, m10 = 0.0, m01 = 0.0;
    for (int y = 0; y < region.height; ++y) {
        for (int x = 0; x < region.width; ++x) {
            if (!region.at(x, y)) continue;
            m00 += 1.0;
            m10 += x;
            m01 += y;
        }
    }
    if (m00 == 0.0) throw InvalidArgumentError("centroid: empty region");
    return {m10 / m00, m01 / m00};
}

double iou(const Mask& a, const Mask& b) {
    if (a.width != b.width || a.height != b.height)
        throw InvalidArgumentError("iou: mask dimension mismatch");
    long inter = 0, uni = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        const bool pa = a.data[i] != 0, pb = b.data[i] != 0;
        inter += (pa && pb) ? 1 : 0;
        uni += (pa || pb) ? 1 : 0;
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

size_t select_best_mask_index(const std::vector<Mask>& candidates, const Mask& reference) {
    if (candidates.empty()) throw InvalidArgumentError("select_best_mask: no candidates");
    size_t best = 0;
    double best_score = -1.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const double score = iou(candidates[i], reference);
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

Mask select_best_mask(const std::vector<Mask>& candidates, const Mask& reference) {
    return candidates[select_best_mask_index(candidates, reference)];
}

RefinementOracle make_region_grow_oracle(std::vector<double> tolerances) {
    if (tolerances.empty()) throw InvalidArgumentError("region-grow oracle needs tolerances");
    return [tolerances](const Image& img, double px, double py) {
        const int sx = std::clamp(static_cast<int>(px * img.width), 0, img.width - 1);
        const int sy = std::clamp(static_cast<int>(py * img.height), 0, img.height - 1);
        // value channel only; hue plays no role in growth
        Raster<float> value(img.width, img.height);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                const uint8_t* p = img.px(x, y);
                value.at(x, y) = std::max({p[0], p[1], p[2]}) / 255.0f;
            }
        const float seed_v = value.at(sx, sy);

        std::vector<Mask> candidates;
        for (double tol : tolerances) {
            Mask m(img.width, img.height);
            std::deque<std::pair<int, int>> queue{{sx, sy}};
            m.at(sx, sy) = 1;
            while (!queue.empty()) {
                auto [cx, cy] = queue.front();
                queue.pop_front();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (!m.in_bounds(nx, ny) || m.at(nx, ny)) continue;
                        if (std::abs(value.at(nx, ny) - seed_v) <= tol) {
                            m.at(nx, ny) = 1;
                            queue.emplace_back(nx, ny);
                        }
                    }
                }
            }
            candidates.push_back(std::move(m));
        }
        return candidates;
    };
}

Mask segment_first_frame(const Image& img, const HsvThresholds& th,
                         const RefinementOracle& oracle) {
    const HsvRaster hsv = rgb_to_hsv(img);
    const Mask m_init = threshold_hsv(hsv, th);
    if (mask_area(m_init) == 0)
        throw InvalidArgumentError("segment_first_frame: no foreground after thresholding");
    const Mask component = largest_component(m_init);
    const auto [cx, cy] = centroid(component);

    std::vector<Mask> candidates;
    try {
        candidates = oracle(img, cx / img.width, cy / img.height);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw InvalidArgumentError(std::string("segment_first_frame: refinement oracle failed: ") +
                                   e.what());
    }
    if (candidates.empty())
        throw InvalidArgumentError("segment_first_frame: refinement oracle returned no candidates");
    for (const Mask& c : candidates)
        if (c.width != img.width || c.height != img.height)
            throw InvalidArgumentError("segment_first_frame: candidate dimensions mismatch");

    return select_best_mask(candidates, m_init);
}

}  // namespace scopenav
