#pragma once
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyperiod/structure.hpp"

namespace polyperiod {

using MatInt = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/* One step of a closed walk on the quad-complex 1-skeleton.  Quad-complex
 * edges are indexed by face corners (halfedge ids): corner c connects the
 * primal vertex tail(c) to the node of face(c).  dir is +1 when the step
 * runs vertex -> face node, -1 for the reverse. */
struct DiamondStep {
    int corner;
    int dir;
};
using DiamondCycle = std::vector<DiamondStep>;

/* Signed traversal of one halfedge as drawn (sign -1 = against it). */
struct SignedHalfedge {
    int halfedge;
    int sign;
};
/* Signed traversal of the dual of edge e (sign +1 = right face to left). */
struct SignedEdge {
    int edge;
    int sign;
};
using PrimalChain = std::vector<SignedHalfedge>;  // closed 1-chain on the primal graph
using DualChain = std::vector<SignedEdge>;        // closed 1-chain on the dual graph

/* BFS spanning tree of an undirected graph given as an edge list;
 * neighbors are visited in increasing (edge, endpoint) order. */
struct SpanningTree {
    std::vector<int> parent_edge;  // tree edge toward the root, -1 at the root
    std::vector<int> dist;         // BFS layer of each node
    std::vector<char> in_tree;     // per-edge membership flag
};
SpanningTree spanning_tree(int node_count, const std::vector<std::pair<int, int>>& edges,
                           int root);

/* 2g closed cycles generating the surface's first homology, with their
 * projections onto the primal and dual graphs and the integer intersection
 * pairing between them.  After symplectic_normalize the cycles are ordered
 * a_1..a_g, b_1..b_g and the pairing is the standard block form
 * [[0, I], [-I, 0]]. */
struct HomologyBasis {
    int genus = 0;
    int root = 0;
    std::vector<DiamondCycle> cycles;
    std::vector<PrimalChain> primal_reps;
    std::vector<DualChain> dual_reps;
    MatInt intersection;
    bool normalized = false;
};

/*
 * Extract a rooted homology basis from the quad complex.
 *
 * A BFS spanning tree is grown from the root over the quad-complex
 * 1-skeleton; quads are then merged one at a time into a simply connected
 * region across non-tree edges (each merge uses the single open edge
 * between the region and the new quad).  The 2g edges that end up in
 * neither the tree nor the merge set are the basis chords, taken closest
 * to the root first; each yields the cycle root -> chord -> root through
 * the tree.
 *
 * Input:   structure and a root node (primal vertex id, or vertex_count + f
 *          for a face node).
 * Returns: basis with 2g cycles, both graph projections, and the pairing
 *          (empty for genus 0).
 * Throws:  SolverError if the extraction invariants fail (internal guard).
 */
HomologyBasis homotopy_basis(const WeightedSurfaceGraph& s, int root = 0);

/* Project a quad-complex cycle onto the primal graph: consecutive corners
 * meeting at a face node are joined by the shorter boundary arc of that
 * face (counterclockwise on ties).  The result is closed and homologous to
 * the input. */
PrimalChain primal_representative(const WeightedSurfaceGraph& s, const DiamondCycle& cycle);

/* Project a quad-complex cycle onto the dual graph: consecutive corners
 * meeting at a primal vertex are joined by the shorter fan of dual edges
 * around that vertex (counterclockwise on ties). */
DualChain dual_representative(const WeightedSurfaceGraph& s, const DiamondCycle& cycle);

/* Net signed traversal count of every primal edge / dual edge by a chain,
 * relative to the reference orientations. */
std::vector<long long> primal_counts(const WeightedSurfaceGraph& s, const PrimalChain& chain);
std::vector<long long> dual_counts(const WeightedSurfaceGraph& s, const DualChain& chain);

/* Signed number of quads where the primal chain crosses the dual chain:
 * the sum over edges of (primal traversal count) x (dual traversal count).
 * Antisymmetric as a pairing of homology classes. */
long long intersection_number(const WeightedSurfaceGraph& s, const PrimalChain& c1,
                              const DualChain& c2);

/*
 * Integer change of basis T with T' pairing T = [[0, I], [-I, 0]] for an
 * antisymmetric unimodular pairing matrix, by symplectic pair reduction:
 * repeatedly locate a +-1 pairing (reducing entries by the Euclidean
 * algorithm if none exists), clear the remaining rows against the pair,
 * and recurse.  Columns of T are ordered a_1..a_g, b_1..b_g.  Exact
 * integer arithmetic; throws SolverError on a degenerate pairing.
 */
MatInt symplectic_transform(const MatInt& pairing);

/* Rewrite a basis in the canonical symplectic order: new cycles and
 * representatives are concatenations of the old ones (reversed where the
 * coefficient is negative) per the columns of symplectic_transform, and
 * the stored pairing becomes exactly [[0, I], [-I, 0]]. */
HomologyBasis symplectic_normalize(const WeightedSurfaceGraph& s, const HomologyBasis& basis);

}  // namespace polyperiod
