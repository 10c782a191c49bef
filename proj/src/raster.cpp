#include "scopenav/raster.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <fstream>

#include "scopenav/segmentation.hpp"

namespace scopenav {
namespace {

// Reads one whitespace/comment-delimited token from a PNM header.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw IoError("unexpected end of PNM header");
    return tok;
}

struct PnmHeader {
    std::string magic;
    int width;
    int height;
    int maxval;
};

PnmHeader read_header(std::istream& in, const std::string& path) {
    PnmHeader h;
    h.magic = next_token(in);
    try {
        h.width = std::stoi(next_token(in));
        h.height = std::stoi(next_token(in));
        h.maxval = std::stoi(next_token(in));
    } catch (const std::exception&) {
        throw IoError("malformed PNM header in " + path);
    }
    if (h.width < 1 || h.height < 1 || h.maxval != 255)
        throw IoError("unsupported PNM geometry/maxval in " + path);
    return h;
}

}  // namespace

Image read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    PnmHeader h = read_header(in, path);
    if (h.magic != "P6") throw IoError(path + " is not a binary PPM (P6)");
    Image img(h.width, h.height);
    in.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.rgb.size()))
        throw IoError("truncated pixel data in " + path);
    return img;
}

void write_ppm(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
    if (!out) throw IoError("write failed for " + path);
}

Mask read_pgm_mask(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    PnmHeader h = read_header(in, path);
    if (h.magic != "P5") throw IoError(path + " is not a binary PGM (P5)");
    std::vector<uint8_t> raw(static_cast<size_t>(h.width) * h.height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw IoError("truncated pixel data in " + path);
    Mask m(h.width, h.height);
    for (size_t i = 0; i < raw.size(); ++i) m.data[i] = raw[i] >= 128 ? 1 : 0;
    return m;
}

void write_pgm_mask(const std::string& path, const Mask& mask) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    std::vector<uint8_t> raw(mask.size());
    for (size_t i = 0; i < raw.size(); ++i) raw[i] = mask.data[i] ? 255 : 0;
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write failed for " + path);
}

GrayF read_pgm_gray(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    PnmHeader h = read_header(in, path);
    if (h.magic != "P5") throw IoError(path + " is not a binary PGM (P5)");
    std::vector<uint8_t> raw(static_cast<size_t>(h.width) * h.height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw IoError("truncated pixel data in " + path);
    GrayF g(h.width, h.height);
    for (size_t i = 0; i < raw.size(); ++i) g.data[i] = raw[i] / 255.0f;
    return g;
}

GrayF to_gray(const Image& img) {
    GrayF g(img.width, img.height);
    const uint8_t* p = img.rgb.data();
    for (size_t i = 0; i < g.size(); ++i, p += 3)
        g.data[i] = (p[0] + p[1] + p[2]) / (3.0f * 255.0f);
    return g;
}

long mask_area(const Mask& m) {
    long n = 0;
    for (uint8_t v : m.data) n += v ? 1 : 0;
    return n;
}

Mask mask_intersect(const Mask& a, const Mask& b) {
    if (a.width != b.width || a.height != b.height)
        throw InvalidArgumentError("mask dimension mismatch");
    Mask out(a.width, a.height);
    for (size_t i = 0; i < out.size(); ++i) out.data[i] = (a.data[i] && b.data[i]) ? 1 : 0;
    return out;
}

std::vector<std::pair<int, int>> mask_boundary_pixels(const Mask& m) {
    std::vector<std::pair<int, int>> out;
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (!m.at(x, y)) continue;
            bool boundary = x == 0 || y == 0 || x == m.width - 1 || y == m.height - 1 ||
                            !m.at(x - 1, y) || !m.at(x + 1, y) || !m.at(x, y - 1) || !m.at(x, y + 1);
            if (boundary) out.emplace_back(x, y);
        }
    }
    return out;
}

std::vector<std::pair<double, double>> trace_outer_contour(const Mask& m) {
    Mask comp = largest_component(m);
    // Find the topmost-leftmost pixel as the trace start.
    int sx = -1, sy = -1;
    for (int y = 0; y < comp.height && sx < 0; ++y)
        for (int x = 0; x < comp.width; ++x)
            if (comp.at(x, y)) { sx = x; sy = y; break; }
    if (sx < 0) return {};

    // Moore neighborhood, clockwise starting from west.
    static const int nbr[8][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}};
    auto fg = [&](int x, int y) { return comp.in_bounds(x, y) && comp.at(x, y); };

    std::vector<std::pair<double, double>> contour;
    int cx = sx, cy = sy;
    int backtrack = 0;  // came from the west
    contour.emplace_back(cx + 0.5, cy + 0.5);
    const size_t limit = comp.size() * 4 + 16;
    for (size_t steps = 0; steps < limit; ++steps) {
        int found = -1;
        for (int k = 0; k < 8; ++k) {
            int dir = (backtrack + 1 + k) % 8;
            int nx = cx + nbr[dir][0], ny = cy + nbr[dir][1];
            if (fg(nx, ny)) { found = dir; cx = nx; cy = ny; break; }
        }
        if (found < 0) break;  // isolated pixel
        if (cx == sx && cy == sy) break;
        contour.emplace_back(cx + 0.5, cy + 0.5);
        backtrack = (found + 4) % 8;
    }
    return contour;
}

}  // namespace scopenav
