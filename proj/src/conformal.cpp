#include "polyperiod/conformal.hpp"

#include <cmath>

namespace polyperiod {

WeightScheme parse_weight_scheme(const std::string& name) {
    if (name == "intrinsic") return WeightScheme::intrinsic;
    if (name == "extrinsic") return WeightScheme::extrinsic;
    if (name == "unit") return WeightScheme::unit;
    throw ValidationError("unknown weight scheme '" + name + "'");
}

const char* weight_scheme_name(WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::intrinsic: return "intrinsic";
        case WeightScheme::extrinsic: return "extrinsic";
        default: return "unit";
    }
}

Eigen::Vector3d circumcenter(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                             const Eigen::Vector3d& c) {
    Eigen::Vector3d u = b - a, v = c - a;
    double s = u.squaredNorm(), t = v.squaredNorm(), uv = u.dot(v);
    double d = 2.0 * (s * t - uv * uv);  // = 2 |u x v|^2
    if (!(d > 1e-24 * s * t)) throw ValidationError("circumcenter of collinear vertices");
    double alpha = t * (s - uv) / d, beta = s * (t - uv) / d;
    return a + alpha * u + beta * v;
}

/* Cotangent of the angle at apex, between the rays to a and b. */
static double cot_at(const Eigen::Vector3d& apex, const Eigen::Vector3d& a,
                     const Eigen::Vector3d& b) {
    Eigen::Vector3d u = a - apex, v = b - apex;
    double cross = u.cross(v).norm();
    if (cross == 0.0) throw ValidationError("degenerate triangle corner");
    return u.dot(v) / cross;
}

/* Locate the faces left and right of the directed edge (v0, v1) and return
 * their apex vertices (the corner opposite the edge). */
static std::pair<int, int> opposite_corners(const EmbeddedMesh& mesh, int v0, int v1) {
    int left = -1, right = -1;
    for (const auto& fc : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            if (fc[k] == v0 && fc[(k + 1) % 3] == v1) left = fc[(k + 2) % 3];
            if (fc[k] == v1 && fc[(k + 1) % 3] == v0) right = fc[(k + 2) % 3];
        }
    if (left < 0 || right < 0)
        throw ValidationError("edge (" + std::to_string(v0) + "," + std::to_string(v1) +
                              ") does not have two adjacent faces");
    return {left, right};
}

static double rho_extrinsic_value(const Eigen::Vector3d& x, const Eigen::Vector3d& xp,
                                  const Eigen::Vector3d& left_apex,
                                  const Eigen::Vector3d& right_apex) {
    Eigen::Vector3d y = circumcenter(x, xp, right_apex);
    Eigen::Vector3d yp = circumcenter(x, xp, left_apex);
    return (y - yp).norm() / (xp - x).norm();
}

static double rho_intrinsic_value(const Eigen::Vector3d& x, const Eigen::Vector3d& xp,
                                  const Eigen::Vector3d& left_apex,
                                  const Eigen::Vector3d& right_apex) {
    return 0.5 * (cot_at(left_apex, x, xp) + cot_at(right_apex, x, xp));
}

double rho_extrinsic(const EmbeddedMesh& mesh, int v0, int v1, double tol) {
    auto [left, right] = opposite_corners(mesh, v0, v1);
    double value = rho_extrinsic_value(mesh.vertices[v0], mesh.vertices[v1],
                                       mesh.vertices[left], mesh.vertices[right]);
    if (value <= tol)
        throw DelaunayViolation("cocircular configuration at edge (" + std::to_string(v0) + "," +
                                    std::to_string(v1) + ")",
                                {{v0, v1, value}});
    return value;
}

double rho_intrinsic(const EmbeddedMesh& mesh, int v0, int v1, double tol) {
    auto [left, right] = opposite_corners(mesh, v0, v1);
    double value = rho_intrinsic_value(mesh.vertices[v0], mesh.vertices[v1],
                                       mesh.vertices[left], mesh.vertices[right]);
    if (value <= tol)
        throw DelaunayViolation("edge (" + std::to_string(v0) + "," + std::to_string(v1) +
                                    ") is not locally Delaunay",
                                {{v0, v1, value}});
    return value;
}

WeightedSurfaceGraph build_structure(const EmbeddedMesh& mesh, WeightScheme scheme, double tol) {
    validate_mesh(mesh);
    std::vector<std::vector<int>> faces;
    faces.reserve(mesh.faces.size());
    for (const auto& fc : mesh.faces) faces.push_back({fc[0], fc[1], fc[2]});
    WeightedSurfaceGraph s = build_structure_from_cells(faces);
    if (scheme == WeightScheme::unit) return s;

    std::vector<double> rho(s.edge_count);
    std::vector<std::tuple<int, int, double>> violations;
    for (int e = 0; e < s.edge_count; ++e) {
        int h = s.edge_he[e], t = s.he_twin[h];
        const Eigen::Vector3d& x = mesh.vertices[s.e_tail[e]];
        const Eigen::Vector3d& xp = mesh.vertices[s.e_head[e]];
        const Eigen::Vector3d& la = mesh.vertices[s.he_head[s.he_next[h]]];
        const Eigen::Vector3d& ra = mesh.vertices[s.he_head[s.he_next[t]]];
        rho[e] = scheme == WeightScheme::intrinsic ? rho_intrinsic_value(x, xp, la, ra)
                                                   : rho_extrinsic_value(x, xp, la, ra);
        if (rho[e] <= tol) violations.emplace_back(s.e_tail[e], s.e_head[e], rho[e]);
    }
    if (!violations.empty())
        throw DelaunayViolation(std::to_string(violations.size()) +
                                    " edge(s) fail the strict Delaunay condition",
                                violations);
    set_weights(s, rho);
    return s;
}

double min_angle_deg(const EmbeddedMesh& mesh) {
    double min_angle = M_PI;
    for (const auto& fc : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            Eigen::Vector3d u = mesh.vertices[fc[(k + 1) % 3]] - mesh.vertices[fc[k]];
            Eigen::Vector3d v = mesh.vertices[fc[(k + 2) % 3]] - mesh.vertices[fc[k]];
            double c = u.dot(v) / (u.norm() * v.norm());
            min_angle = std::min(min_angle, std::acos(std::clamp(c, -1.0, 1.0)));
        }
    return min_angle * 180.0 / M_PI;
}

}  // namespace polyperiod
