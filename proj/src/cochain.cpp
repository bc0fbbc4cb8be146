#include "polyperiod/cochain.hpp"

namespace polyperiod {

Cochain0 zero_cochain0(const WeightedSurfaceGraph& s, Support support) {
    return {&s, Eigen::VectorXcd::Zero(s.vertex_count + s.face_count), support};
}

Cochain1 zero_cochain1(const WeightedSurfaceGraph& s, Support support) {
    return {&s, Eigen::VectorXcd::Zero(2 * s.edge_count), support};
}

Cochain1 d0(const Cochain0& f) {
    const auto& s = *f.s;
    Cochain1 out = zero_cochain1(s, f.support);
    for (int e = 0; e < s.edge_count; ++e) {
        out.values[e] = f.values[s.e_head[e]] - f.values[s.e_tail[e]];
        out.values[s.edge_count + e] =
            f.values[s.vertex_count + s.e_left[e]] - f.values[s.vertex_count + s.e_right[e]];
    }
    return out;
}

BoundarySums d1(const Cochain1& alpha) {
    const auto& s = *alpha.s;
    BoundarySums out{Eigen::VectorXcd::Zero(s.face_count), Eigen::VectorXcd::Zero(s.vertex_count)};
    for (int h = 0; h < s.halfedge_count; ++h) {
        Complex v = alpha.values[s.he_edge[h]];
        out.primal_faces[s.he_face[h]] += s.he_forward[h] ? v : -v;
    }
    for (int v = 0; v < s.vertex_count; ++v)
        for (int h : s.vertex_out[v]) {
            Complex val = alpha.values[s.edge_count + s.he_edge[h]];
            out.dual_faces[v] += s.he_forward[h] ? val : -val;
        }
    return out;
}

double closedness_defect(const Cochain1& alpha) {
    BoundarySums b = d1(alpha);
    double p = b.primal_faces.size() ? b.primal_faces.cwiseAbs().maxCoeff() : 0.0;
    double d = b.dual_faces.size() ? b.dual_faces.cwiseAbs().maxCoeff() : 0.0;
    return std::max(p, d);
}

Cochain1 hodge_star(const Cochain1& alpha) {
    const auto& s = *alpha.s;
    Support support = alpha.support == Support::primal  ? Support::dual
                      : alpha.support == Support::dual ? Support::primal
                                                       : Support::full;
    Cochain1 out = zero_cochain1(s, support);
    for (int e = 0; e < s.edge_count; ++e) {
        out.values[s.edge_count + e] = s.rho[e] * alpha.values[e];
        out.values[e] = -alpha.values[s.edge_count + e] / s.rho[e];
    }
    return out;
}

Cochain2 wedge(const Cochain1& alpha, const Cochain1& beta) {
    const auto& s = *alpha.s;
    Cochain2 out{&s, Eigen::VectorXcd::Zero(s.edge_count)};
    for (int e = 0; e < s.edge_count; ++e) {
        Complex ap = alpha.values[e], ad = alpha.values[s.edge_count + e];
        Complex bp = beta.values[e], bd = beta.values[s.edge_count + e];
        out.values[e] = 0.5 * (ap * bd - ad * bp);
    }
    return out;
}

Complex integrate(const Cochain2& omega) { return omega.values.sum(); }

Complex inner_product(const Cochain1& alpha, const Cochain1& beta) {
    const auto& s = *alpha.s;
    Complex acc(0.0, 0.0);
    for (int e = 0; e < s.edge_count; ++e) {
        acc += s.rho[e] * alpha.values[e] * std::conj(beta.values[e]);
        acc += alpha.values[s.edge_count + e] * std::conj(beta.values[s.edge_count + e]) /
               s.rho[e];
    }
    return 0.5 * acc;
}

Cochain0 laplacian(const Cochain0& f) {
    const auto& s = *f.s;
    Cochain0 out = zero_cochain0(s, f.support);
    for (int e = 0; e < s.edge_count; ++e) {
        int u = s.e_tail[e], v = s.e_head[e];
        if (u != v) {
            Complex d = f.values[u] - f.values[v];
            out.values[u] += s.rho[e] * d;
            out.values[v] -= s.rho[e] * d;
        }
        int l = s.vertex_count + s.e_left[e], r = s.vertex_count + s.e_right[e];
        if (l != r) {
            Complex d = f.values[l] - f.values[r];
            out.values[l] += d / s.rho[e];
            out.values[r] -= d / s.rho[e];
        }
    }
    return out;
}

Cochain1 type_projection(const Cochain1& alpha, FormType type) {
    Cochain1 star = hodge_star(alpha);
    Complex unit = type == FormType::type_1_0 ? Complex(0, 1) : Complex(0, -1);
    Cochain1 out{alpha.s, 0.5 * (alpha.values + unit * star.values), Support::full};
    return out;
}

Cochain1 conj(const Cochain1& alpha) {
    return {alpha.s, alpha.values.conjugate(), alpha.support};
}

double dirichlet_energy(const Cochain0& f) {
    Cochain1 df = d0(f);
    return inner_product(df, df).real();
}

double conformal_energy(const Cochain0& f) {
    Cochain1 df = d0(f);
    Cochain1 star = hodge_star(df);
    Cochain1 defect{f.s, df.values - Complex(0, 1) * star.values, Support::full};
    return 0.5 * inner_product(defect, defect).real();
}

double area(const Cochain0& f) {
    Cochain1 df = d0(f);
    Complex total = integrate(wedge(df, conj(df)));
    return (Complex(0, 0.5) * total).real();
}

}  // namespace polyperiod
