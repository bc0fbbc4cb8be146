#pragma once
#include <array>
#include <utility>
#include <vector>

#include "polyperiod/errors.hpp"

namespace polyperiod {

/* Halfedge representation of a closed, connected, consistently oriented
 * cellular surface carrying a positive conformal weight per edge.
 *
 * Faces are counterclockwise vertex cycles.  Every face corner (face, slot)
 * is one halfedge, numbered face by face so that
 *     he = face_offset[face] + slot.
 * Each undirected edge pairs a halfedge with its twin in the neighboring
 * face; the first-discovered halfedge is the reference orientation of the
 * edge (tail -> head).  The dual edge crosses it from the right face to the
 * left face (a quarter turn counterclockwise) and carries weight 1/rho.
 *
 * The quad complex has one quadrilateral per edge, with the primal edge and
 * its dual as diagonals; its faces are indexed by the edge index.  Counts
 * obey |quads| = ne and |double graph edges| = 2*ne, and all derived Euler
 * characteristics agree with genus = (2 - chi) / 2. */
struct WeightedSurfaceGraph {
    int vertex_count = 0;   // primal vertices
    int edge_count = 0;     // undirected edges (= dual edges = quads)
    int face_count = 0;     // faces (= dual vertices)
    int halfedge_count = 0;

    std::vector<std::vector<int>> faces;  // ccw vertex cycle per face
    std::vector<int> face_offset;         // first halfedge id of each face

    std::vector<int> he_face;      // face of the halfedge
    std::vector<int> he_slot;      // corner slot within the face
    std::vector<int> he_tail;      // source vertex
    std::vector<int> he_head;      // target vertex
    std::vector<int> he_next;      // next halfedge ccw within the face
    std::vector<int> he_prev;      // previous halfedge within the face
    std::vector<int> he_twin;      // opposite halfedge in the adjacent face
    std::vector<int> he_edge;      // undirected edge id
    std::vector<char> he_forward;  // 1 iff this halfedge is the reference orientation

    std::vector<int> edge_he;  // reference halfedge of each edge
    std::vector<int> e_tail;   // endpoints and side faces of the reference
    std::vector<int> e_head;   //   orientation: dual edge runs right -> left
    std::vector<int> e_left;
    std::vector<int> e_right;

    std::vector<double> rho;  // positive conformal weight per edge

    // outgoing halfedges of each vertex in ccw rotational order
    std::vector<std::vector<int>> vertex_out;

    int euler_characteristic = 0;
    int genus = 0;

    int halfedge_of(int face, int slot) const { return face_offset[face] + slot; }
    int face_degree(int face) const { return (int)faces[face].size(); }

    /* The four corner halfedges of the quad of edge e, counterclockwise:
     * (right face corner at tail, right face corner at head,
     *  left face corner at head, left face corner at tail). */
    std::array<int, 4> quad_corners(int e) const {
        int h = edge_he[e], t = he_twin[h];
        return {he_next[t], t, he_next[h], h};
    }
};

/* One side of a face-to-face gluing: halfedge (face, slot) of one face is
 * identified with halfedge (face, slot) of another (or the same) face. */
using CornerPair = std::pair<std::pair<int, int>, std::pair<int, int>>;

/*
 * Build the halfedge structure of a closed oriented cellular surface.
 *
 * Input:
 *   faces - counterclockwise vertex-index cycles, each of degree >= 3;
 *           vertex ids must cover 0..max contiguously
 *   twins - explicit halfedge identifications as ((face, slot), (face, slot))
 *           pairs covering every halfedge exactly once; pass empty to infer
 *           twins by matching directed vertex pairs (u,v)/(v,u), which
 *           requires the surface to be free of multi-edges and self-loops
 *   rho   - per-edge weights in edge-discovery order (empty = all ones);
 *           edges are discovered in halfedge order, reference orientation
 *           first
 *
 * Returns: validated structure with rotation system, edge tables and genus.
 * Throws:  ValidationError on open/non-manifold/inconsistently oriented
 *          input, isolated vertices, disconnected surfaces, or non-positive
 *          weights.
 */
WeightedSurfaceGraph build_structure_from_cells(const std::vector<std::vector<int>>& faces,
                                                const std::vector<CornerPair>& twins = {},
                                                const std::vector<double>& rho = {});

/* Replace the weights of a built structure (size must equal edge_count,
 * all entries positive). */
void set_weights(WeightedSurfaceGraph& s, const std::vector<double>& rho);

/* Oriented boundary sums of a per-edge value vector over all primal faces:
 * out[f] = sum over the face's halfedges of +value (reference orientation)
 * or -value (reversed).  The face sums of an exact form vanish. */
template <typename Scalar>
std::vector<Scalar> face_boundary_sums(const WeightedSurfaceGraph& s,
                                       const std::vector<Scalar>& edge_values) {
    std::vector<Scalar> out(s.face_count, Scalar(0));
    for (int h = 0; h < s.halfedge_count; ++h) {
        Scalar v = edge_values[s.he_edge[h]];
        out[s.he_face[h]] += s.he_forward[h] ? v : -v;
    }
    return out;
}

/* Oriented boundary sums of a per-dual-edge value vector over all dual
 * faces (one dual face per primal vertex, traversed ccw): the crossing of
 * an outgoing reference halfedge counts positively. */
template <typename Scalar>
std::vector<Scalar> dual_face_boundary_sums(const WeightedSurfaceGraph& s,
                                            const std::vector<Scalar>& dual_values) {
    std::vector<Scalar> out(s.vertex_count, Scalar(0));
    for (int v = 0; v < s.vertex_count; ++v)
        for (int h : s.vertex_out[v]) {
            Scalar val = dual_values[s.he_edge[h]];
            out[v] += s.he_forward[h] ? val : -val;
        }
    return out;
}

}  // namespace polyperiod
