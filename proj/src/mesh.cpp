#include "polyperiod/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace polyperiod {

void validate_mesh(const EmbeddedMesh& m) {
    const int nv = (int)m.vertices.size();
    if (m.faces.empty()) throw ValidationError("mesh has no faces");
    for (size_t f = 0; f < m.faces.size(); ++f) {
        const auto& fc = m.faces[f];
        for (int k = 0; k < 3; ++k) {
            if (fc[k] < 0 || fc[k] >= nv)
                throw ValidationError("face " + std::to_string(f) + ": vertex index out of range");
        }
        if (fc[0] == fc[1] || fc[1] == fc[2] || fc[0] == fc[2])
            throw ValidationError("face " + std::to_string(f) + ": degenerate face");
        Eigen::Vector3d a = m.vertices[fc[1]] - m.vertices[fc[0]];
        Eigen::Vector3d b = m.vertices[fc[2]] - m.vertices[fc[0]];
        if (a.cross(b).norm() == 0.0)
            throw ValidationError("face " + std::to_string(f) + ": zero-area face");
    }
    // directed-edge census: consistent orientation means each directed edge
    // appears once, and a closed surface means its reverse appears too
    std::map<std::pair<int, int>, int> directed;
    for (size_t f = 0; f < m.faces.size(); ++f) {
        const auto& fc = m.faces[f];
        for (int k = 0; k < 3; ++k) {
            auto key = std::make_pair(fc[k], fc[(k + 1) % 3]);
            if (++directed[key] > 1)
                throw ValidationError("inconsistent orientation or non-manifold edge (" +
                                      std::to_string(key.first) + "," + std::to_string(key.second) +
                                      ")");
        }
    }
    for (const auto& [key, cnt] : directed) {
        (void)cnt;
        if (!directed.count({key.second, key.first}))
            throw ValidationError("boundary or non-manifold edge (" + std::to_string(key.first) +
                                  "," + std::to_string(key.second) + "): mesh is not closed");
    }
    // connectivity over faces-sharing-an-edge is implied by vertex
    // connectivity for manifolds; check vertex connectivity by BFS
    std::vector<std::vector<int>> adj(nv);
    for (const auto& [key, cnt] : directed) {
        (void)cnt;
        adj[key.first].push_back(key.second);
    }
    std::vector<char> seen(nv, 0);
    std::vector<int> stack = {m.faces[0][0]};
    seen[m.faces[0][0]] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    int used = 0;
    for (int v = 0; v < nv; ++v)
        if (!adj[v].empty()) ++used;
    if (reached < used) throw ValidationError("mesh is disconnected");
    if (used < nv) throw ValidationError("mesh has isolated vertices");
}

EmbeddedMesh load_mesh(std::istream& in, const std::string& name) {
    EmbeddedMesh m;
    m.name = name;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) throw ParseError(lineno, "malformed vertex record");
            m.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<long> idx;
            std::string tok;
            while (ls >> tok) {
                // accept `i`, `i/t`, `i//n`, `i/t/n`; only the vertex index is used
                size_t slash = tok.find('/');
                std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
                try {
                    size_t pos = 0;
                    long v = std::stol(head, &pos);
                    if (pos != head.size()) throw std::invalid_argument(head);
                    idx.push_back(v);
                } catch (const std::exception&) {
                    throw ParseError(lineno, "malformed face index '" + tok + "'");
                }
            }
            if (idx.size() != 3)
                throw ParseError(lineno, "non-triangular face (" + std::to_string(idx.size()) +
                                             " indices)");
            std::array<int, 3> fc;
            for (int k = 0; k < 3; ++k) {
                long v = idx[k];
                if (v < 0) v = (long)m.vertices.size() + 1 + v;  // OBJ negative indexing
                if (v < 1 || v > (long)m.vertices.size())
                    throw ParseError(lineno, "face index out of range");
                fc[k] = (int)(v - 1);
            }
            if (fc[0] == fc[1] || fc[1] == fc[2] || fc[0] == fc[2])
                throw ParseError(lineno, "degenerate face");
            m.faces.push_back(fc);
        }
        // all other record types (vt, vn, usemtl, o, g, s, mtllib, ...) ignored
    }
    validate_mesh(m);
    return m;
}

EmbeddedMesh load_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open mesh file: " + path);
    size_t slash = path.find_last_of('/');
    return load_mesh(in, slash == std::string::npos ? path : path.substr(slash + 1));
}

void save_obj(const EmbeddedMesh& mesh, std::ostream& out) {
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

TopologyReport topology_report(const EmbeddedMesh& mesh) {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& f : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            edges[{std::min(a, b), std::max(a, b)}]++;
        }
    TopologyReport r;
    r.vertex_count = (int)mesh.vertices.size();
    r.edge_count = (int)edges.size();
    r.face_count = (int)mesh.faces.size();
    r.euler_characteristic = r.vertex_count - r.edge_count + r.face_count;
    r.genus = (2 - r.euler_characteristic) / 2;
    return r;
}

std::map<std::pair<int, int>, double> edge_lengths(const EmbeddedMesh& mesh) {
    std::map<std::pair<int, int>, double> out;
    for (const auto& f : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            auto key = std::make_pair(std::min(a, b), std::max(a, b));
            if (!out.count(key)) {
                double len = (mesh.vertices[a] - mesh.vertices[b]).norm();
                if (len == 0.0)
                    throw ValidationError("zero-length edge (" + std::to_string(key.first) + "," +
                                          std::to_string(key.second) + ")");
                out[key] = len;
            }
        }
    return out;
}

}  // namespace polyperiod
