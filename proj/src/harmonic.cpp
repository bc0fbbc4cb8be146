#include "polyperiod/harmonic.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

namespace polyperiod {

namespace {

/* Weighted graph Laplacian with one node pinned to zero, factorized once. */
class PinnedLaplacian {
  public:
    /* edges: (node_a, node_b, weight) with self-loops already removed */
    PinnedLaplacian(int node_count, const std::vector<std::tuple<int, int, double>>& edges,
                    int pin)
        : node_count_(node_count), edges_(edges), index_(node_count, -1) {
        int free_count = 0;
        for (int n = 0; n < node_count; ++n)
            if (n != pin) index_[n] = free_count++;
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(4 * edges.size());
        for (const auto& [a, b, w] : edges) {
            int ia = index_[a], ib = index_[b];
            if (ia >= 0) trip.emplace_back(ia, ia, w);
            if (ib >= 0) trip.emplace_back(ib, ib, w);
            if (ia >= 0 && ib >= 0) {
                trip.emplace_back(ia, ib, -w);
                trip.emplace_back(ib, ia, -w);
            }
        }
        Eigen::SparseMatrix<double> lap(free_count, free_count);
        lap.setFromTriplets(trip.begin(), trip.end());
        if (free_count > 0) {
            solver_.compute(lap);
            if (solver_.info() != Eigen::Success)
                throw SolverError("Laplacian factorization failed");
        }
    }

    /* Potential with f(pin) = 0 and L f = b on the free nodes; *residual
       receives max |L f - b| over the free nodes. */
    std::vector<double> solve(const std::vector<double>& b, double* residual) const {
        std::vector<double> f(node_count_, 0.0);
        int free_count = 0;
        for (int n = 0; n < node_count_; ++n)
            if (index_[n] >= 0) ++free_count;
        if (free_count > 0) {
            Eigen::VectorXd br(free_count);
            for (int n = 0; n < node_count_; ++n)
                if (index_[n] >= 0) br[index_[n]] = b[n];
            Eigen::VectorXd x = solver_.solve(br);
            if (solver_.info() != Eigen::Success)
                throw SolverError("Laplacian solve failed");
            for (int n = 0; n < node_count_; ++n)
                if (index_[n] >= 0) f[n] = x[index_[n]];
        }
        if (residual) {
            std::vector<double> lf(node_count_, 0.0);
            for (const auto& [a, b2, w] : edges_) {
                lf[a] += w * (f[a] - f[b2]);
                lf[b2] += w * (f[b2] - f[a]);
            }
            double r = 0.0;
            for (int n = 0; n < node_count_; ++n)
                if (index_[n] >= 0) r = std::max(r, std::abs(lf[n] - b[n]));
            *residual = r;
        }
        return f;
    }

  private:
    int node_count_;
    std::vector<std::tuple<int, int, double>> edges_;
    std::vector<int> index_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

std::vector<std::tuple<int, int, double>> primal_edges(const WeightedSurfaceGraph& s) {
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(s.edge_count);
    for (int e = 0; e < s.edge_count; ++e)
        if (s.e_tail[e] != s.e_head[e]) edges.emplace_back(s.e_tail[e], s.e_head[e], s.rho[e]);
    return edges;
}

std::vector<std::tuple<int, int, double>> dual_edges(const WeightedSurfaceGraph& s) {
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(s.edge_count);
    for (int e = 0; e < s.edge_count; ++e)
        if (s.e_left[e] != s.e_right[e])
            edges.emplace_back(s.e_left[e], s.e_right[e], 1.0 / s.rho[e]);
    return edges;
}

HarmonicForm primal_solve(const WeightedSurfaceGraph& s, const PinnedLaplacian& lap,
                          const std::vector<double>& sigma) {
    std::vector<double> b(s.vertex_count, 0.0);
    for (int e = 0; e < s.edge_count; ++e)
        if (sigma[e] != 0.0) {
            b[s.e_tail[e]] += s.rho[e] * sigma[e];
            b[s.e_head[e]] -= s.rho[e] * sigma[e];
        }
    HarmonicForm out;
    std::vector<double> f = lap.solve(b, &out.solver_residual);
    out.omega = zero_cochain1(s, Support::primal);
    for (int e = 0; e < s.edge_count; ++e)
        out.omega.values[e] = f[s.e_head[e]] - f[s.e_tail[e]] + sigma[e];
    return out;
}

HarmonicForm dual_solve(const WeightedSurfaceGraph& s, const PinnedLaplacian& lap,
                        const std::vector<double>& sigma_star) {
    std::vector<double> b(s.face_count, 0.0);
    for (int e = 0; e < s.edge_count; ++e)
        if (sigma_star[e] != 0.0) {
            b[s.e_right[e]] += sigma_star[e] / s.rho[e];
            b[s.e_left[e]] -= sigma_star[e] / s.rho[e];
        }
    HarmonicForm out;
    std::vector<double> f = lap.solve(b, &out.solver_residual);
    out.omega = zero_cochain1(s, Support::dual);
    for (int e = 0; e < s.edge_count; ++e)
        out.omega.values[s.edge_count + e] = f[s.e_left[e]] - f[s.e_right[e]] + sigma_star[e];
    return out;
}

}  // namespace

HarmonicForm harmonic_form_from_cut(const WeightedSurfaceGraph& s,
                                    const std::vector<double>& sigma, int pin) {
    if ((int)sigma.size() != s.edge_count) throw ValidationError("cut cocycle size mismatch");
    if (pin < 0 || pin >= s.vertex_count) throw ValidationError("pin vertex out of range");
    PinnedLaplacian lap(s.vertex_count, primal_edges(s), pin);
    return primal_solve(s, lap, sigma);
}

std::vector<HarmonicForm> harmonic_forms(const WeightedSurfaceGraph& s,
                                         const HomologyBasis& basis, int pin) {
    if (pin < 0 || pin >= s.vertex_count) throw ValidationError("pin vertex out of range");
    PinnedLaplacian lap(s.vertex_count, primal_edges(s), pin);
    std::vector<HarmonicForm> out;
    out.reserve(basis.dual_reps.size());
    for (const auto& rep : basis.dual_reps) {
        std::vector<long long> counts = dual_counts(s, rep);
        std::vector<double> sigma(counts.begin(), counts.end());
        out.push_back(primal_solve(s, lap, sigma));
    }
    return out;
}

HarmonicForm dual_harmonic_form_from_cut(const WeightedSurfaceGraph& s,
                                         const std::vector<double>& sigma_star,
                                         int pin_face) {
    if ((int)sigma_star.size() != s.edge_count)
        throw ValidationError("cut cocycle size mismatch");
    if (pin_face < 0 || pin_face >= s.face_count)
        throw ValidationError("pin face out of range");
    PinnedLaplacian lap(s.face_count, dual_edges(s), pin_face);
    return dual_solve(s, lap, sigma_star);
}

std::vector<HarmonicForm> dual_harmonic_forms(const WeightedSurfaceGraph& s,
                                              const HomologyBasis& basis, int pin_face) {
    if (pin_face < 0 || pin_face >= s.face_count)
        throw ValidationError("pin face out of range");
    PinnedLaplacian lap(s.face_count, dual_edges(s), pin_face);
    std::vector<HarmonicForm> out;
    out.reserve(basis.primal_reps.size());
    for (const auto& rep : basis.primal_reps) {
        std::vector<long long> counts = primal_counts(s, rep);
        std::vector<double> sigma(s.edge_count);
        for (int e = 0; e < s.edge_count; ++e) sigma[e] = -(double)counts[e];
        out.push_back(dual_solve(s, lap, sigma));
    }
    return out;
}

HarmonicDefect verify_harmonic(const WeightedSurfaceGraph& s, const Cochain1& alpha) {
    auto block_max = [](const BoundarySums& sums) {
        double m = 0.0;
        for (const Complex& v : sums.primal_faces) m = std::max(m, std::abs(v));
        for (const Complex& v : sums.dual_faces) m = std::max(m, std::abs(v));
        return m;
    };
    (void)s;
    HarmonicDefect d;
    d.closedness = block_max(d1(alpha));
    d.coclosedness = block_max(d1(hodge_star(alpha)));
    return d;
}

double holonomy_primal(const WeightedSurfaceGraph& s, const PrimalChain& rep,
                       const std::vector<double>& edge_values) {
    double t = 0.0;
    for (const auto& [h, sgn] : rep) {
        int e = s.he_edge[h];
        t += sgn * (s.he_forward[h] ? edge_values[e] : -edge_values[e]);
    }
    return t;
}

double holonomy_dual(const WeightedSurfaceGraph& s, const DualChain& rep,
                     const std::vector<double>& edge_values) {
    (void)s;
    double t = 0.0;
    for (const auto& [e, sgn] : rep) t += sgn * edge_values[e];
    return t;
}

}  // namespace polyperiod
