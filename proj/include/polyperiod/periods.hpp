#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "polyperiod/harmonic.hpp"

namespace polyperiod {

/* Basic facts about the surface a period matrix was computed from. */
struct SurfaceProvenance {
    std::string scheme = "unit";  // weight scheme the edges carry
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    double min_rho = 0.0;       // smallest edge weight
    double min_angle_deg = 0.0; // smallest triangle angle (embedded input only)
    bool has_min_angle = false;
};

/*
 * Basis of holomorphic 1-forms with unit a-periods.
 *
 * zetas[k] is a full-support complex form: the primal block is a linear
 * combination of the primal harmonic forms, the dual block is i times its
 * Hodge-star values, so both a-period normalizations read 1 directly.
 */
struct HolomorphicBasis {
    std::vector<Cochain1> zetas;        // g forms
    Eigen::MatrixXcd coefficients;      // (2g x g), columns in the raw harmonic basis
    double normalization_residual = 0;  // max |a-period - identity| of the solve
    double condition_estimate = 0;      // spectral condition number of the system
};

/* Discrete period matrix with every defect measured along the way. */
struct PeriodResult {
    int genus = 0;
    Eigen::MatrixXcd pi;             // canonical projection, primal pipeline
    Eigen::MatrixXcd pi_star;        // canonical projection, dual-graph pipeline
    Eigen::MatrixXcd pi_raw;         // doubly normalized system, primal periods
    Eigen::MatrixXcd pi_star_raw;    // doubly normalized system, dual periods
    double symmetry_defect = 0;      // max |pi - pi^T|
    double positivity_margin = 0;    // smallest eigenvalue of Im pi
    bool positivity_ok = false;
    double pi_pi_star_defect = 0;    // max |pi - pi_star|
    double harmonic_residual = 0;    // worst Laplacian solve residual
    double closedness_residual = 0;  // worst closedness / co-closedness defect
    double normalization_residual = 0;
    double projection_defect = 0;    // distance of the polar factor from the
                                     // symplectic constraint
    SurfaceProvenance provenance;
    bool flagged = false;  // some residual exceeded its guard
};

/*
 * Solve for the g holomorphic forms with unit a-periods on both graphs.
 *
 * Input:  basis - homology basis (any intersection pairing; it is
 *                 symplectically normalized internally);
 *         forms - primal harmonic forms of the basis cycles, in order.
 */
HolomorphicBasis holomorphic_basis(const WeightedSurfaceGraph& s, const HomologyBasis& basis,
                                   const std::vector<HarmonicForm>& forms);

/*
 * Period matrix of the weighted surface.
 *
 * Computes the Gram matrix of the harmonic basis in a symplectic homology
 * basis, projects it onto the symplectic constraint set by a polar
 * decomposition, and reads the period matrix off the projected blocks.  The
 * same is done with harmonic forms solved on the dual graph, and the doubly
 * normalized period system is solved as a diagnostic.
 */
PeriodResult period_matrix(const WeightedSurfaceGraph& s, const HomologyBasis& basis,
                           const std::vector<HarmonicForm>& forms);

/* Convenience: homology basis, harmonic forms, and period matrix in one call.
   Throws GenusZeroError when there is no period matrix to compute. */
PeriodResult compute_periods(const WeightedSurfaceGraph& s, int root = 0);

/* Well-formedness of a candidate period matrix: symmetric with positive
   definite imaginary part. */
struct RiemannCheck {
    double symmetry_defect = 0;    // max |omega - omega^T|
    double positivity_margin = 0;  // smallest eigenvalue of Im omega
    bool ok = false;
};

RiemannCheck riemann_check(const Eigen::MatrixXcd& omega, double tol = 1e-8);

}  // namespace polyperiod
