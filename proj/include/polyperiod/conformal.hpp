#pragma once
#include <string>

#include <Eigen/Dense>

#include "polyperiod/mesh.hpp"
#include "polyperiod/structure.hpp"

namespace polyperiod {

/* How per-edge weights are measured on an embedded mesh: from the surface's
 * flat (unfolded) metric, from straight-line distances in ambient space, or
 * fixed to 1 (abstract cellular input). */
enum class WeightScheme { intrinsic, extrinsic, unit };

WeightScheme parse_weight_scheme(const std::string& name);
const char* weight_scheme_name(WeightScheme scheme);

/* Center of the circle through three points, in their common plane.
 * Throws ValidationError on (numerically) collinear input. */
Eigen::Vector3d circumcenter(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                             const Eigen::Vector3d& c);

/*
 * Weight of the edge (v0, v1) as the ambient-space distance between the
 * circumcenters of its two adjacent triangles, divided by the edge length.
 *
 * Throws DelaunayViolation when the value is <= tol (the circumcenters
 * coincide up to tolerance: cocircular configuration), ValidationError when
 * the edge is missing one of its two faces.
 */
double rho_extrinsic(const EmbeddedMesh& mesh, int v0, int v1, double tol = 1e-10);

/*
 * Weight of the edge (v0, v1) in the surface's flat metric: the signed
 * distance between the circumcenters after unfolding the two triangles into
 * a common plane, divided by the edge length.  Computed in closed form as
 * (cot a + cot b) / 2 over the two angles opposite the edge.
 *
 * Throws DelaunayViolation when the value is <= tol (the opposite angles sum
 * to >= a straight angle: not locally Delaunay), ValidationError when the
 * edge is missing one of its two faces.
 */
double rho_intrinsic(const EmbeddedMesh& mesh, int v0, int v1, double tol = 1e-10);

/*
 * Build the weighted halfedge structure of a closed embedded triangle mesh.
 *
 * Input:
 *   mesh   - validated against all EmbeddedMesh invariants first
 *   scheme - weight definition per edge; unit sets every weight to 1
 *   tol    - strict Delaunay threshold: every weight must exceed it
 * Returns: structure whose edge weights follow the scheme.
 * Throws:  ValidationError from mesh validation; DelaunayViolation listing
 *          every offending edge as (tail, head, weight) when any weight
 *          fails the threshold.
 */
WeightedSurfaceGraph build_structure(const EmbeddedMesh& mesh, WeightScheme scheme,
                                     double tol = 1e-10);

/* Smallest corner angle over all faces, in degrees (mesh-quality stat). */
double min_angle_deg(const EmbeddedMesh& mesh);

}  // namespace polyperiod
