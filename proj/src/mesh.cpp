#include "scopenav/mesh.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace scopenav {

namespace {
const char* kRegionNames[kRegionCount] = {
    "intercondylar_notch", "medial_condyle", "lateral_condyle", "supracondylar_area", "pcl_origin",
};
}

const char* region_name(AnatomicalRegion r) {
    int i = static_cast<int>(r);
    if (i < 0 || i >= kRegionCount) throw InvalidArgumentError("bad region value");
    return kRegionNames[i];
}

AnatomicalRegion region_from_name(const std::string& name) {
    for (int i = 0; i < kRegionCount; ++i)
        if (name == kRegionNames[i]) return static_cast<AnatomicalRegion>(i);
    throw InvalidArgumentError("unknown anatomical region: " + name);
}

void LabeledMesh::validate() const {
    const int nv = static_cast<int>(vertices.size());
    if (faces.size() != face_region.size())
        throw InvalidArgumentError("mesh: one region label per face required");
    for (const auto& f : faces)
        for (int idx : f)
            if (idx < 0 || idx >= nv) throw InvalidArgumentError("mesh: face index out of range");
    if (margin_polyline.size() < 3)
        throw InvalidArgumentError("mesh: margin polyline needs at least 3 points");
    for (int idx : margin_polyline)
        if (idx < 0 || idx >= nv) throw InvalidArgumentError("mesh: margin index out of range");
}

Vec3 LabeledMesh::bbox_min() const {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    for (const auto& v : vertices) lo = lo.cwiseMin(v);
    return lo;
}

Vec3 LabeledMesh::bbox_max() const {
    Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());
    for (const auto& v : vertices) hi = hi.cwiseMax(v);
    return hi;
}

LabeledMesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    LabeledMesh mesh;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ss >> x >> y >> z))
                throw IoError(path + ":" + std::to_string(lineno) + ": malformed vertex");
            mesh.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::array<int, 3> f{};
            for (int k = 0; k < 3; ++k) {
                std::string tok;
                if (!(ss >> tok))
                    throw IoError(path + ":" + std::to_string(lineno) + ": malformed face");
                // tolerate i/j/k attribute syntax; only the vertex index is used
                size_t slash = tok.find('/');
                int idx = std::stoi(slash == std::string::npos ? tok : tok.substr(0, slash));
                if (idx < 1 || idx > static_cast<int>(mesh.vertices.size()))
                    throw IoError(path + ":" + std::to_string(lineno) + ": face index out of range");
                f[k] = idx - 1;
            }
            mesh.faces.push_back(f);
        }
    }
    return mesh;
}

void save_obj(const std::string& path, const LabeledMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out.precision(12);
    for (const auto& v : mesh.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

void load_labels(const std::string& path, LabeledMesh& mesh) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError(path + ": labels JSON parse error: " + e.what());
    }
    try {
        mesh.face_region.clear();
        for (const auto& name : j.at("face_regions"))
            mesh.face_region.push_back(region_from_name(name.get<std::string>()));
        mesh.margin_polyline = j.at("margin_polyline").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": labels schema error: " + e.what());
    }
    if (mesh.face_region.size() != mesh.faces.size())
        throw IoError(path + ": face_regions length does not match mesh face count");
    mesh.validate();
}

void save_labels(const std::string& path, const LabeledMesh& mesh) {
    nlohmann::json j;
    std::vector<std::string> names;
    names.reserve(mesh.face_region.size());
    for (auto r : mesh.face_region) names.emplace_back(region_name(r));
    j["face_regions"] = names;
    j["margin_polyline"] = mesh.margin_polyline;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

LabeledMesh load_labeled_mesh(const std::string& obj_path, const std::string& labels_path) {
    LabeledMesh mesh = load_obj(obj_path);
    load_labels(labels_path, mesh);
    return mesh;
}

LabeledMesh make_condyle_phantom(int lat_segments, int lon_segments, const Vec3& radii,
                                 const Vec3& center) {
    if (lat_segments < 4 || lon_segments < 8)
        throw InvalidArgumentError("phantom needs lat_segments >= 4 and lon_segments >= 8");

    LabeledMesh mesh;
    // Rings exclude the poles; poles are added last.
    for (int i = 1; i < lat_segments; ++i) {
        double phi = M_PI * i / lat_segments - M_PI / 2.0;  // -pi/2 .. pi/2
        for (int jj = 0; jj < lon_segments; ++jj) {
            double theta = 2.0 * M_PI * jj / lon_segments;
            Vec3 dir(std::cos(phi) * std::cos(theta), std::cos(phi) * std::sin(theta),
                     std::sin(phi));
            mesh.vertices.push_back(center + radii.cwiseProduct(dir));
        }
    }
    const int south = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(center + radii.cwiseProduct(Vec3(0, 0, -1)));
    const int north = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(center + radii.cwiseProduct(Vec3(0, 0, 1)));

    auto ring_vertex = [&](int ring, int lon) { return ring * lon_segments + (lon % lon_segments); };

    auto classify = [&](const Vec3& p) {
        Vec3 u = (p - center).cwiseQuotient(radii);
        u.normalize();
        double phi = std::asin(std::clamp(u.z(), -1.0, 1.0));
        double theta = std::atan2(u.y(), u.x());
        if (phi > 0.55) return AnatomicalRegion::supracondylar_area;
        if (phi < -0.55) return AnatomicalRegion::pcl_origin;
        if (theta >= -M_PI / 4 && theta < M_PI / 4) return AnatomicalRegion::intercondylar_notch;
        if (theta >= M_PI / 4 && theta < 3 * M_PI / 4) return AnatomicalRegion::lateral_condyle;
        return AnatomicalRegion::medial_condyle;
    };

    auto add_face = [&](int a, int b, int c) {
        mesh.faces.push_back({a, b, c});
        Vec3 centroid = (mesh.vertices[a] + mesh.vertices[b] + mesh.vertices[c]) / 3.0;
        mesh.face_region.push_back(classify(centroid));
    };

    const int rings = lat_segments - 1;
    for (int i = 0; i + 1 < rings; ++i) {
        for (int jj = 0; jj < lon_segments; ++jj) {
            int a = ring_vertex(i, jj), b = ring_vertex(i, jj + 1);
            int c = ring_vertex(i + 1, jj), d = ring_vertex(i + 1, jj + 1);
            add_face(a, b, c);
            add_face(b, d, c);
        }
    }
    for (int jj = 0; jj < lon_segments; ++jj) {
        add_face(south, ring_vertex(0, jj + 1), ring_vertex(0, jj));
        add_face(north, ring_vertex(rings - 1, jj), ring_vertex(rings - 1, jj + 1));
    }

    // Open margin arc: the ring nearest phi ~ 0.15 rad, spanning 300 degrees.
    double want_phi = 0.15;
    int best_ring = 0;
    double best_err = 1e9;
    for (int i = 1; i < lat_segments; ++i) {
        double phi = M_PI * i / lat_segments - M_PI / 2.0;
        if (std::abs(phi - want_phi) < best_err) {
            best_err = std::abs(phi - want_phi);
            best_ring = i - 1;
        }
    }
    int arc_len = (lon_segments * 5) / 6;
    for (int jj = 0; jj <= arc_len; ++jj)
        mesh.margin_polyline.push_back(ring_vertex(best_ring, jj));

    mesh.validate();
    return mesh;
}

}  // namespace scopenav
