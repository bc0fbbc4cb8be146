#include "polyperiod/siegel.hpp"

#include "polyperiod/cochain.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace polyperiod {

namespace {

constexpr double kEps = 1e-9;

/* Nearest integer with near-half ties pushed down, so remainders land at +1/2. */
double red_round(double x) {
    double k = std::floor(x);
    if (std::abs(x - k - 0.5) <= kEps) return k;
    return std::round(x);
}

void apply_gl(Eigen::MatrixXcd& z, Eigen::MatrixXd& mtot, const Eigen::MatrixXd& u) {
    z = u * z * u.transpose();
    mtot = embed_gl(u) * mtot;
}

Eigen::Matrix4d partial_inversion() {
    Eigen::Matrix4d m;
    m << 0, 0, -1, 0,
         0, 1, 0, 0,
         1, 0, 0, 0,
         0, 0, 0, 1;
    return m;
}

/* Boundary moves for the genus-2 equivalence search. */
const std::vector<Eigen::MatrixXd>& genus2_moves() {
    static const std::vector<Eigen::MatrixXd> moves = [] {
        std::vector<Eigen::MatrixXd> ms;
        Eigen::Matrix2d u;
        u << 0, 1, 1, 0;
        ms.push_back(embed_gl(u));
        u << 1, 0, 0, -1;
        ms.push_back(embed_gl(u));
        u << 1, 0, 1, 1;
        ms.push_back(embed_gl(u));
        u << 1, 0, -1, 1;
        ms.push_back(embed_gl(u));
        for (auto [i, j] : {std::pair{0, 0}, {1, 1}, {0, 1}})
            for (double sgn : {1.0, -1.0}) {
                Eigen::Matrix2d b = Eigen::Matrix2d::Zero();
                b(i, j) = sgn;
                b(j, i) = sgn;
                ms.push_back(translation(b));
            }
        ms.push_back(partial_inversion());
        return ms;
    }();
    return moves;
}

}  // namespace

Eigen::MatrixXcd sp_act(const Eigen::MatrixXd& m, const Eigen::MatrixXcd& z) {
    int g = (int)z.rows();
    Eigen::MatrixXcd num = m.topLeftCorner(g, g).cast<Complex>() * z +
                           m.topRightCorner(g, g).cast<Complex>();
    Eigen::MatrixXcd den = m.bottomLeftCorner(g, g).cast<Complex>() * z +
                           m.bottomRightCorner(g, g).cast<Complex>();
    // num * den^{-1}, solved through the transposed system
    return den.transpose().partialPivLu().solve(num.transpose()).transpose();
}

Eigen::MatrixXd embed_gl(const Eigen::MatrixXd& u) {
    int g = (int)u.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * g, 2 * g);
    m.topLeftCorner(g, g) = u;
    m.bottomRightCorner(g, g) =
        u.partialPivLu().solve(Eigen::MatrixXd::Identity(g, g)).transpose();
    return m;
}

Eigen::MatrixXd translation(const Eigen::MatrixXd& b) {
    int g = (int)b.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * g, 2 * g);
    m.topRightCorner(g, g) = b;
    return m;
}

Eigen::MatrixXd symplectic_form(int g) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * g, 2 * g);
    j.topRightCorner(g, g) = Eigen::MatrixXd::Identity(g, g);
    j.bottomLeftCorner(g, g) = -Eigen::MatrixXd::Identity(g, g);
    return j;
}

ReducedMatrix siegel_reduce(const Eigen::MatrixXcd& z0) {
    int g = (int)z0.rows();
    Eigen::MatrixXcd z = 0.5 * (z0 + z0.transpose().eval());
    Eigen::MatrixXd mtot = Eigen::MatrixXd::Identity(2 * g, 2 * g);
    ReducedMatrix out;

    int it = 0;
    for (it = 0; it < 1000 && !out.converged; ++it) {
        if (g == 2) {
            // lattice reduction of the imaginary part
            for (int k = 0; k < 200; ++k) {
                bool changed = false;
                if (z.imag()(0, 0) > z.imag()(1, 1) * (1 + kEps)) {
                    Eigen::Matrix2d u;
                    u << 0, 1, 1, 0;
                    apply_gl(z, mtot, u);
                    changed = true;
                }
                double q = red_round(z.imag()(0, 1) / z.imag()(0, 0));
                if (q != 0) {
                    Eigen::Matrix2d u;
                    u << 1, 0, -q, 1;
                    apply_gl(z, mtot, u);
                    changed = true;
                }
                if (z.imag()(0, 1) < -kEps * z.imag()(0, 0)) {
                    Eigen::Matrix2d u;
                    u << 1, 0, 0, -1;
                    apply_gl(z, mtot, u);
                    changed = true;
                }
                if (!changed) break;
            }
        }
        // integral translation of the real part, symmetrized from the upper triangle
        Eigen::MatrixXd b(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                b(i, j) = -red_round(z.real()(i, j));
                b(j, i) = b(i, j);
            }
        if (b.cwiseAbs().maxCoeff() > 0) {
            z += b.cast<Complex>();
            mtot = translation(b) * mtot;
        }
        // inversion step
        if (g == 1) {
            bool inside = std::abs(z(0, 0)) < 1 - kEps;
            bool boundary = std::abs(std::abs(z(0, 0)) - 1) <= kEps &&
                            z(0, 0).real() < -kEps;
            if (inside || boundary) {
                Eigen::Matrix2d minv;
                minv << 0, -1, 1, 0;
                z = sp_act(minv, z);
                mtot = minv * mtot;
                continue;
            }
            out.converged = true;
        } else if (g == 2) {
            if (std::abs(z(0, 0)) < 1 - kEps) {
                Eigen::Matrix4d minv = partial_inversion();
                z = sp_act(minv, z);
                mtot = minv * mtot;
                continue;
            }
            out.converged = true;
        } else {
            out.converged = true;  // best effort beyond genus 2
        }
    }
    out.iterations = it;
    out.symmetrization_defect = (z - z.transpose().eval()).cwiseAbs().maxCoeff();
    out.omega = 0.5 * (z + z.transpose().eval());
    out.transform.resize(2 * g, 2 * g);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * g; ++j) out.transform(i, j) = std::llround(mtot(i, j));
    out.canonical = out.converged && g <= 2;
    return out;
}

double compare_period_matrices(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                               int depth) {
    if (a.rows() != b.rows())
        throw GenusMismatchError("cannot compare period matrices of genus " +
                                 std::to_string(a.rows()) + " and genus " +
                                 std::to_string(b.rows()));
    int g = (int)a.rows();
    Eigen::MatrixXcd ra = siegel_reduce(a).omega;
    Eigen::MatrixXcd rb = siegel_reduce(b).omega;
    double d0 = (ra - rb).cwiseAbs().maxCoeff();

    if (g == 1) {
        if (d0 <= 1e-10) return d0;
        // fundamental-domain boundary identifications of the modular group
        Eigen::Matrix2d inv;
        inv << 0, -1, 1, 0;
        Eigen::MatrixXd one = Eigen::MatrixXd::Constant(1, 1, 1.0);
        double best = d0;
        for (const Eigen::MatrixXd& mv :
             {Eigen::MatrixXd(inv), translation(one), translation(-one)}) {
            Eigen::MatrixXcd w = siegel_reduce(sp_act(mv, ra)).omega;
            best = std::min(best, (w - rb).cwiseAbs().maxCoeff());
        }
        return best;
    }
    if (d0 < 1e-10 || g != 2) return d0;

    // bounded search over boundary moves, keeping the closest candidates
    double best = d0;
    std::vector<Eigen::MatrixXcd> frontier = {ra};
    for (int level = 0; level < depth; ++level) {
        std::vector<std::pair<double, Eigen::MatrixXcd>> next;
        for (const Eigen::MatrixXcd& z : frontier)
            for (const Eigen::MatrixXd& mv : genus2_moves()) {
                Eigen::MatrixXcd w = siegel_reduce(sp_act(mv, z)).omega;
                double d = (w - rb).cwiseAbs().maxCoeff();
                best = std::min(best, d);
                next.emplace_back(d, std::move(w));
            }
        std::stable_sort(next.begin(), next.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        frontier.clear();
        for (size_t k = 0; k < next.size() && k < 10; ++k)
            frontier.push_back(std::move(next[k].second));
        if (best < 1e-10) break;
    }
    return best;
}

}  // namespace polyperiod
