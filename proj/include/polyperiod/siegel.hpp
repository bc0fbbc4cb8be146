#pragma once

#include <Eigen/Dense>

#include "polyperiod/errors.hpp"
#include "polyperiod/homology.hpp"

namespace polyperiod {

/* A point of the Siegel upper half-space after modular reduction. */
struct ReducedMatrix {
    Eigen::MatrixXcd omega;             // reduced matrix
    MatInt transform;                   // accumulated integer symplectic transform
    int iterations = 0;                 // outer reduction passes used
    double symmetrization_defect = 0;   // asymmetry absorbed by the final averaging
    bool converged = false;             // reduction reached a fixed point
    bool canonical = false;             // fundamental-domain representative (genus <= 2)
};

/* Fractional-linear action (A Z + B)(C Z + D)^{-1} of a symplectic matrix. */
Eigen::MatrixXcd sp_act(const Eigen::MatrixXd& m, const Eigen::MatrixXcd& z);

/* Block-diagonal symplectic embedding diag(U, U^{-T}) of a unimodular U. */
Eigen::MatrixXd embed_gl(const Eigen::MatrixXd& u);

/* Symplectic translation: identity with upper-right block B (symmetric). */
Eigen::MatrixXd translation(const Eigen::MatrixXd& b);

/* The standard symplectic form [[0, I], [-I, 0]] of genus g. */
Eigen::MatrixXd symplectic_form(int g);

/*
 * Reduce a Siegel upper-half-space point modulo the integer symplectic group.
 *
 * Genus 1: full reduction to the standard fundamental domain of the modular
 * group, with deterministic boundary conventions (Re in [-1/2, 1/2] with ties
 * at +1/2, inversion applied when |Z| < 1 or when |Z| = 1 with Re < 0).
 * Genus 2: alternates lattice (Minkowski) reduction of Im, integral
 * translation of Re, and a partial inversion, in the same normalization.
 * Genus >= 3: translation reduction only; `canonical` stays false.
 */
ReducedMatrix siegel_reduce(const Eigen::MatrixXcd& z0);

/*
 * Distance between the modular equivalence classes of two period matrices.
 *
 * Both inputs are reduced; for genus 1 and 2 a bounded search over boundary
 * identifications of the fundamental domain absorbs reduction ambiguities.
 * Returns the smallest max-norm difference found (0 means equivalent).
 * Throws GenusMismatchError when the sizes differ.
 */
double compare_period_matrices(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                               int depth = 2);

}  // namespace polyperiod
