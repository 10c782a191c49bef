#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scopenav/error.hpp"

namespace scopenav {

// Row-major 2D plane of T. Pixel origin is top-left, x right, y down.
template <typename T>
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<T> data;

    Raster() = default;
    Raster(int w, int h, T fill = T{}) : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
        if (w < 0 || h < 0) throw InvalidArgumentError("raster dimensions must be non-negative");
    }

    T& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    const T& at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    size_t size() const { return data.size(); }
    bool same_shape_as(int w, int h) const { return width == w && height == h; }

    bool operator==(const Raster& o) const {
        return width == o.width && height == o.height && data == o.data;
    }
};

// Binary mask; 0 = background, 1 = foreground. File form is PGM P5 with 255 = foreground.
using Mask = Raster<uint8_t>;
using GrayF = Raster<float>;

// Interleaved 8-bit RGB image.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;  // 3 * width * height, row-major

    Image() = default;
    Image(int w, int h) : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, 0) {
        if (w < 1 || h < 1) throw InvalidArgumentError("image dimensions must be >= 1");
    }

    uint8_t* px(int x, int y) { return &rgb[(static_cast<size_t>(y) * width + x) * 3]; }
    const uint8_t* px(int x, int y) const { return &rgb[(static_cast<size_t>(y) * width + x) * 3]; }
    void set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
        uint8_t* p = px(x, y);
        p[0] = r; p[1] = g; p[2] = b;
    }
    bool operator==(const Image& o) const {
        return width == o.width && height == o.height && rgb == o.rgb;
    }
};

// --- file I/O (binary PPM P6 / PGM P5, maxval 255) ---

Image read_ppm(const std::string& path);
void write_ppm(const std::string& path, const Image& img);
Mask read_pgm_mask(const std::string& path);
void write_pgm_mask(const std::string& path, const Mask& mask);
GrayF read_pgm_gray(const std::string& path);

// --- conversions and small mask utilities ---

GrayF to_gray(const Image& img);                 // mean of channels, scaled to [0,1]
long mask_area(const Mask& m);
Mask mask_intersect(const Mask& a, const Mask& b);

// Pixels of the mask that touch background (4-neighborhood) or the image border.
std::vector<std::pair<int, int>> mask_boundary_pixels(const Mask& m);

// Ordered outer contour of the largest 8-connected component (Moore tracing).
// Points are pixel centers (x + 0.5, y + 0.5). Empty mask -> empty result.
std::vector<std::pair<double, double>> trace_outer_contour(const Mask& m);

}  // namespace scopenav
