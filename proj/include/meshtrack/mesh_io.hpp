#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "meshtrack/mesh.hpp"

namespace meshtrack {

// Shortest round-trippable decimal form, capped at 9 significant digits.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// --- topology file ---------------------------------------------------------
// line 1: `vertices <N>`, then one `q <i0> <i1> <i2> <i3>` line per quad.

inline MeshTopology load_topology(std::istream& in) {
    std::string line;
    VertexIndex num_vertices = -1;
    std::vector<Quad> quads;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "#") continue;
        if (tag == "vertices") {
            if (num_vertices >= 0)
                throw ParseError("line " + std::to_string(line_no) + ": duplicate vertices line");
            long long n;
            if (!(ls >> n))
                throw ParseError("line " + std::to_string(line_no) + ": malformed vertices line");
            num_vertices = static_cast<VertexIndex>(n);
        } else if (tag == "q") {
            if (num_vertices < 0)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": quad before vertices line");
            Quad q;
            for (int k = 0; k < 4; ++k) {
                long long idx;
                if (!(ls >> idx))
                    throw ParseError("line " + std::to_string(line_no) + ": malformed quad");
                q[k] = static_cast<VertexIndex>(idx);
            }
            quads.push_back(q);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown tag '" + tag + "'");
        }
    }
    if (num_vertices < 0) throw ParseError("missing vertices line");
    return MeshTopology(num_vertices, std::move(quads));
}

inline void save_topology(std::ostream& out, const MeshTopology& topology) {
    out << "vertices " << topology.num_vertices() << "\n";
    for (const Quad& q : topology.quads())
        out << "q " << q[0] << " " << q[1] << " " << q[2] << " " << q[3] << "\n";
}

// --- OBJ -------------------------------------------------------------------
// `v x y z` vertex lines; quads kept as 4-index `f` faces, 1-based.

struct ObjData {
    Landmarks vertices;
    std::vector<Quad> quads;
};

namespace detail {
inline VertexIndex parse_obj_face_index(const std::string& token, std::size_t line_no,
                                         std::size_t vertex_count) {
    // Accept i, i/t, i/t/n, i//n; only the vertex index is used.
    std::size_t slash = token.find('/');
    const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    long long idx;
    try {
        idx = std::stoll(head);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed face index '" +
                         token + "'");
    }
    if (idx < 0) idx = static_cast<long long>(vertex_count) + idx + 1;  // relative index
    if (idx < 1)
        throw ParseError("line " + std::to_string(line_no) + ": face index out of range");
    return static_cast<VertexIndex>(idx - 1);
}
}  // namespace detail

inline ObjData load_obj(std::istream& in) {
    ObjData data;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z))
                throw ParseError("line " + std::to_string(line_no) + ": malformed vertex");
            data.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<VertexIndex> face;
            std::string token;
            while (ls >> token)
                face.push_back(detail::parse_obj_face_index(token, line_no,
                                                            data.vertices.size()));
            if (face.size() != 4)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": only quad faces are supported (got " +
                                 std::to_string(face.size()) + " indices)");
            data.quads.push_back({face[0], face[1], face[2], face[3]});
        }
        // Other OBJ tags (vn, vt, comments, groups) are skipped.
    }
    return data;
}

inline SurfaceMesh load_obj_mesh(std::istream& in) {
    ObjData data = load_obj(in);
    if (data.quads.empty()) throw ParseError("OBJ contains no quad faces");
    auto topology = std::make_shared<MeshTopology>(
        static_cast<VertexIndex>(data.vertices.size()), std::move(data.quads));
    return make_surface_mesh(std::move(topology), std::move(data.vertices));
}

inline void save_obj(std::ostream& out, const SurfaceMesh& mesh) {
    for (const Vec3& v : mesh.vertices)
        out << "v " << format_double(v.x) << " " << format_double(v.y) << " "
            << format_double(v.z) << "\n";
    for (const Quad& q : mesh.topology->quads())
        out << "f " << q[0] + 1 << " " << q[1] + 1 << " " << q[2] + 1 << " " << q[3] + 1
            << "\n";
}

// --- path helpers ----------------------------------------------------------

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    return out;
}

inline MeshTopology load_topology_file(const std::string& path) {
    auto in = open_input(path);
    return load_topology(in);
}

inline ObjData load_obj_file(const std::string& path) {
    auto in = open_input(path);
    return load_obj(in);
}

inline SurfaceMesh load_obj_mesh_file(const std::string& path) {
    auto in = open_input(path);
    return load_obj_mesh(in);
}

inline void save_obj_file(const std::string& path, const SurfaceMesh& mesh) {
    auto out = open_output(path);
    save_obj(out, mesh);
}

}  // namespace meshtrack
