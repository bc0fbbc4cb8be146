#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "polyperiod/mesh.hpp"
#include "polyperiod/structure.hpp"

namespace ppt {

inline polyperiod::EmbeddedMesh mesh_from_string(const std::string& obj,
                                                 const std::string& name = "inline") {
    std::istringstream in(obj);
    return polyperiod::load_mesh(in, name);
}

/* Regular tetrahedron on (+-1, +-1, +-1), outward orientation. */
inline const char* tetra_obj() {
    return "v 1 1 1\n"
           "v 1 -1 -1\n"
           "v -1 1 -1\n"
           "v -1 -1 1\n"
           "f 1 2 3\n"
           "f 1 4 2\n"
           "f 1 3 4\n"
           "f 2 4 3\n";
}

/* Unit cube, each square face split along a diagonal (every split edge is
   cocircular: the four corners of a square lie on one circle). */
inline const char* cube_obj() {
    return "v -1 -1 -1\n"
           "v 1 -1 -1\n"
           "v 1 1 -1\n"
           "v -1 1 -1\n"
           "v -1 -1 1\n"
           "v 1 -1 1\n"
           "v 1 1 1\n"
           "v -1 1 1\n"
           "f 1 4 3\n"
           "f 1 3 2\n"
           "f 5 6 7\n"
           "f 5 7 8\n"
           "f 1 2 6\n"
           "f 1 6 5\n"
           "f 3 4 8\n"
           "f 3 8 7\n"
           "f 1 5 8\n"
           "f 1 8 4\n"
           "f 2 3 7\n"
           "f 2 7 6\n";
}

/* Two triangles sharing the edge (0, 1), open boundary; for testing the
   per-edge weight formulas, which only need the two adjacent faces. */
inline polyperiod::EmbeddedMesh edge_pair(const Eigen::Vector3d& left_apex,
                                          const Eigen::Vector3d& right_apex,
                                          double edge_length = 1.0) {
    polyperiod::EmbeddedMesh mesh;
    mesh.vertices = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(edge_length, 0, 0),
                     left_apex, right_apex};
    mesh.faces = {{0, 1, 2}, {1, 0, 3}};
    mesh.name = "edge-pair";
    return mesh;
}

/*
 * Torus of revolution sampled on a staggered grid: ring j is rotated by a
 * quarter cell when j is odd, which breaks the cocircularity of the
 * product-grid cells.  Each cell is split along its shorter diagonal.
 * n_theta cells around the axis, n_phi around the tube.
 */
inline polyperiod::EmbeddedMesh staggered_torus(int n_theta, int n_phi, double big = 2.0,
                                                double small = 1.0) {
    polyperiod::EmbeddedMesh mesh;
    mesh.name = "staggered-torus";
    const double pi2 = 8.0 * std::atan(1.0);
    auto vid = [&](int i, int j) {
        return ((i % n_theta + n_theta) % n_theta) + n_theta * ((j % n_phi + n_phi) % n_phi);
    };
    auto point = [&](int i, int j) {
        double theta = pi2 * (i + 0.25 * (j % 2)) / n_theta;
        double phi = pi2 * j / n_phi;
        double ring = big + small * std::cos(phi);
        return Eigen::Vector3d(ring * std::cos(theta), ring * std::sin(theta),
                               small * std::sin(phi));
    };
    for (int j = 0; j < n_phi; ++j)
        for (int i = 0; i < n_theta; ++i) mesh.vertices.push_back(point(i, j));
    for (int j = 0; j < n_phi; ++j)
        for (int i = 0; i < n_theta; ++i) {
            int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1),
                v01 = vid(i, j + 1);
            double d1 = (mesh.vertices[v00] - mesh.vertices[v11]).norm();
            double d2 = (mesh.vertices[v10] - mesh.vertices[v01]).norm();
            if (d1 <= d2) {
                mesh.faces.push_back({v00, v10, v11});
                mesh.faces.push_back({v00, v11, v01});
            } else {
                mesh.faces.push_back({v00, v10, v01});
                mesh.faces.push_back({v10, v11, v01});
            }
        }
    return mesh;
}

/* Exit code and captured output (stdout+stderr) of a shell command. */
struct CommandResult {
    int exit_code = -1;
    std::string output;
};

inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ppt
