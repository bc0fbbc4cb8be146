#pragma once

#include <vector>

#include "polyperiod/cochain.hpp"
#include "polyperiod/homology.hpp"

namespace polyperiod {

/* A harmonic 1-form together with the linear-solve residual that produced it. */
struct HarmonicForm {
    Cochain1 omega;                // closed and co-closed 1-form
    double solver_residual = 0.0;  // max |L f - b| over the free potential nodes
};

/*
 * Closedness and co-closedness defects of a 1-form.
 */
struct HarmonicDefect {
    double closedness = 0.0;    // max face / dual-face boundary sum of the form
    double coclosedness = 0.0;  // same for its Hodge star
};

/*
 * Primal harmonic 1-form cohomologous to a prescribed cut cocycle.
 *
 * Input:  sigma - per-edge jump of the multivalued potential (one value per
 *                 edge, oriented tail -> head);
 *         pin   - vertex whose potential is fixed to zero.
 * Returns: omega[e] = f(head) - f(tail) + sigma[e] on the primal block, where
 *          f minimizes the weighted Dirichlet energy of f + cut.
 */
HarmonicForm harmonic_form_from_cut(const WeightedSurfaceGraph& s,
                                    const std::vector<double>& sigma, int pin = 0);

/*
 * One primal harmonic form per basis cycle.
 *
 * The cut cocycle of cycle k is the per-edge crossing count of its dual-path
 * representative, so the holonomy of form k around cycle l reproduces the
 * intersection pairing.  The weighted graph Laplacian is factorized once and
 * reused for all right-hand sides.
 */
std::vector<HarmonicForm> harmonic_forms(const WeightedSurfaceGraph& s,
                                         const HomologyBasis& basis, int pin = 0);

/*
 * Dual-support harmonic 1-form cohomologous to a cut cocycle on dual edges.
 *
 * Input:  sigma_star - value on each dual edge (indexed by the primal edge it
 *                      crosses, oriented right face -> left face);
 *         pin_face   - face whose potential is fixed to zero.
 * Returns: omega[ne+e] = f(left) - f(right) + sigma_star[e], harmonic for the
 *          reciprocal weights 1/rho.
 */
HarmonicForm dual_harmonic_form_from_cut(const WeightedSurfaceGraph& s,
                                         const std::vector<double>& sigma_star,
                                         int pin_face = 0);

/*
 * One dual-graph harmonic form per basis cycle.
 *
 * The cut on dual edges is minus the edge traversal count of the cycle's
 * primal representative (crossing a dual edge reverses orientation twice).
 */
std::vector<HarmonicForm> dual_harmonic_forms(const WeightedSurfaceGraph& s,
                                              const HomologyBasis& basis, int pin_face = 0);

/* Boundary-sum defects of alpha and of its Hodge star, each maximized over
   both blocks. */
HarmonicDefect verify_harmonic(const WeightedSurfaceGraph& s, const Cochain1& alpha);

/*
 * Integral of a per-edge value table along a path in the primal graph.
 * Traversing a halfedge against the stored edge orientation flips the sign.
 */
double holonomy_primal(const WeightedSurfaceGraph& s, const PrimalChain& rep,
                       const std::vector<double>& edge_values);

/* Integral of a per-dual-edge value table along a path in the dual graph. */
double holonomy_dual(const WeightedSurfaceGraph& s, const DualChain& rep,
                     const std::vector<double>& edge_values);

}  // namespace polyperiod
