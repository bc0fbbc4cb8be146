#pragma once
#include <complex>

#include <Eigen/Dense>

#include "polyperiod/structure.hpp"

namespace polyperiod {

using Complex = std::complex<double>;

/* Where a cochain's nonzero data lives: the primal graph, the dual graph,
 * or the full double graph.  Values are always stored for both graphs;
 * restricted cochains keep the other block at zero. */
enum class Support { primal, dual, full };

/* Complex function on the vertices of the double graph: entries 0..nv-1 are
 * primal vertex values, entries nv..nv+nf-1 are dual vertex (face) values. */
struct Cochain0 {
    const WeightedSurfaceGraph* s = nullptr;
    Eigen::VectorXcd values;
    Support support = Support::full;
};

/* Complex 1-form on the edges of the double graph, stored on reference
 * orientations: entry e is the integral over primal edge e (tail -> head),
 * entry ne + e the integral over its dual (right face -> left face).
 * Reversing an edge negates the value by convention. */
struct Cochain1 {
    const WeightedSurfaceGraph* s = nullptr;
    Eigen::VectorXcd values;
    Support support = Support::full;
};

/* Complex 2-form: one value per quad (= per edge index). */
struct Cochain2 {
    const WeightedSurfaceGraph* s = nullptr;
    Eigen::VectorXcd values;
};

Cochain0 zero_cochain0(const WeightedSurfaceGraph& s, Support support = Support::full);
Cochain1 zero_cochain1(const WeightedSurfaceGraph& s, Support support = Support::full);

/* Coboundary of a vertex function: difference of endpoint values over every
 * primal and dual edge.  The result of a constant is zero. */
Cochain1 d0(const Cochain0& f);

/* Oriented boundary sums of a 1-form over all primal faces and all dual
 * faces (one per primal vertex).  The form is closed iff every sum
 * vanishes; sums of a coboundary vanish up to roundoff. */
struct BoundarySums {
    Eigen::VectorXcd primal_faces;  // one sum per face
    Eigen::VectorXcd dual_faces;    // one sum per primal vertex
};
BoundarySums d1(const Cochain1& alpha);

/* Largest boundary-sum magnitude of d1 over both graphs. */
double closedness_defect(const Cochain1& alpha);

/* Conformal duality rotation: the dual edge receives rho(e) times the
 * primal value and the primal edge receives -1/rho(e) times the dual value
 * (the dual of a dual edge is the reversed primal edge).  Applying the map
 * twice negates the form. */
Cochain1 hodge_star(const Cochain1& alpha);

/* Product 2-form: on the quad of edge e, half of (primal diagonal of alpha
 * times dual diagonal of beta minus the same with roles swapped).
 * Antisymmetric in its arguments. */
Cochain2 wedge(const Cochain1& alpha, const Cochain1& beta);

/* Sum of a 2-form over all quads. */
Complex integrate(const Cochain2& omega);

/* Hermitian scalar product: half the weighted sum over all double-graph
 * edges of alpha times conj(beta), with weight rho on primal edges and
 * 1/rho on dual edges.  Positive definite; invariant under hodge_star. */
Complex inner_product(const Cochain1& alpha, const Cochain1& beta);

/* Weighted graph Laplacian applied blockwise: at each primal vertex the
 * rho-weighted sum of differences to its neighbors, at each dual vertex the
 * same with weights 1/rho.  Symmetric positive semidefinite with kernel the
 * constants on each connected graph. */
Cochain0 laplacian(const Cochain0& f);

/* Eigenspaces of the duality rotation on complexified 1-forms. */
enum class FormType { type_1_0, type_0_1 };

/* Projection onto the type eigenspace: half of (Id + i*) for (1,0), half of
 * (Id - i*) for (0,1).  The (1,0) part satisfies *a = -i a exactly; the two
 * projections are idempotent, complementary and exchanged by conjugation. */
Cochain1 type_projection(const Cochain1& alpha, FormType type);

/* Entrywise complex conjugate. */
Cochain1 conj(const Cochain1& alpha);

/* Squared norm of the coboundary: equals the average of the classical
 * weighted Dirichlet energies of the primal and dual restrictions. */
double dirichlet_energy(const Cochain0& f);

/* Half the squared norm of (df - i * df); vanishes exactly on functions
 * whose coboundary is of type (1,0), and equals the Dirichlet energy minus
 * twice the algebraic image area for every function. */
double conformal_energy(const Cochain0& f);

/* Algebraic area of the image: i/2 times the integral of df wedge conj(df).
 * Real-valued; invariant under adding constants. */
double area(const Cochain0& f);

}  // namespace polyperiod
