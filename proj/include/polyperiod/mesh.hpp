#pragma once
#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyperiod/errors.hpp"

namespace polyperiod {

/* A closed, connected, consistently oriented triangle mesh embedded in R^3.
 * Faces are counterclockwise vertex-index triples. */
struct EmbeddedMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;
    std::string name;
};

struct TopologyReport {
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;
    int euler_characteristic = 0;
    int genus = 0;
};

/* Check every EmbeddedMesh invariant: indices in range, distinct face
 * vertices, positive face areas, each undirected edge in exactly two faces
 * with opposite directions (closed + consistently oriented), no isolated
 * vertices, connected.  Throws ValidationError on the first failure. */
void validate_mesh(const EmbeddedMesh& mesh);

/* Parse an OBJ stream (subset: `v x y z` and `f i j k` records, 1-based
 * indices, other record types ignored) and validate all EmbeddedMesh
 * invariants.
 *
 * Throws ParseError (with line number) on malformed records and
 * ValidationError on degenerate faces, non-triangular faces, non-manifold
 * edges, inconsistent orientation, boundary edges, zero-area faces, or a
 * disconnected mesh. */
EmbeddedMesh load_mesh(std::istream& in, const std::string& name = "");
EmbeddedMesh load_mesh_file(const std::string& path);

/* Write the mesh back as OBJ with 17 significant digits, so that a
 * load -> save -> load round trip reproduces the data exactly. */
void save_obj(const EmbeddedMesh& mesh, std::ostream& out);

/* Element counts, Euler characteristic and genus of a valid closed mesh. */
TopologyReport topology_report(const EmbeddedMesh& mesh);

/* Euclidean length of every undirected edge (i, j), keyed with i < j.
 * Throws ValidationError on a zero-length edge. */
std::map<std::pair<int, int>, double> edge_lengths(const EmbeddedMesh& mesh);

}  // namespace polyperiod
