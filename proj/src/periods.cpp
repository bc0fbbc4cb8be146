#include "polyperiod/periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyperiod {

namespace {

Eigen::MatrixXd symplectic_j(int g) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * g, 2 * g);
    j.topRightCorner(g, g) = Eigen::MatrixXd::Identity(g, g);
    j.bottomLeftCorner(g, g) = -Eigen::MatrixXd::Identity(g, g);
    return j;
}

struct SiegelProjection {
    Eigen::MatrixXcd omega;  // point in the Siegel upper half-space
    double defect;           // max |G0 J G0 - J| of the projected Gram factor
};

/*
 * Project a symmetric positive definite Gram matrix, expressed in a
 * symplectic homology basis, onto the compatibility locus G J G = J, and read
 * off the period matrix from the projected blocks.  The polar factor is
 * obtained from symmetric eigendecompositions only: with X = G^{-1} J, the
 * map -X^2 equals G^{-1/2} W G^{1/2} for the positive definite
 * W = G^{-1/2} (J^T G^{-1} J) G^{-1/2}, so its square root is
 * G^{-1/2} W^{1/2} G^{1/2}.
 */
SiegelProjection gram_to_siegel(const Eigen::MatrixXd& gram) {
    int g2 = (int)gram.rows(), g = g2 / 2;
    Eigen::MatrixXd j = symplectic_j(g);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gram + gram.transpose()));
    if (es.info() != Eigen::Success) throw SolverError("Gram eigendecomposition failed");
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() <= 0.0) throw SolverError("Gram matrix is not positive definite");
    const Eigen::MatrixXd& e = es.eigenvectors();
    auto gram_pow = [&](double p) -> Eigen::MatrixXd {
        return e * ev.array().pow(p).matrix().asDiagonal() * e.transpose();
    };
    Eigen::MatrixXd ginv = gram_pow(-1.0);
    Eigen::MatrixXd ghalf = gram_pow(0.5);
    Eigen::MatrixXd gihalf = gram_pow(-0.5);

    Eigen::MatrixXd w = gihalf * (j.transpose() * ginv * j) * gihalf;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(0.5 * (w + w.transpose()));
    if (es2.info() != Eigen::Success) throw SolverError("polar eigendecomposition failed");
    Eigen::VectorXd wv = es2.eigenvalues();
    if (wv.minCoeff() <= 0.0) throw SolverError("polar factor is not positive definite");
    const Eigen::MatrixXd& f = es2.eigenvectors();
    Eigen::MatrixXd n_inv =
        gihalf * (f * wv.array().pow(-0.5).matrix().asDiagonal() * f.transpose()) * ghalf;

    Eigen::MatrixXd g0 = j.transpose() * (ginv * j * n_inv);
    double anti = (g0 - g0.transpose()).cwiseAbs().maxCoeff();
    double symm = (g0 + g0.transpose()).cwiseAbs().maxCoeff();
    if (anti > symm) g0 = -g0;

    SiegelProjection out;
    out.defect = (g0 * j * g0 - j).cwiseAbs().maxCoeff();
    Eigen::MatrixXd p0 = g0.topLeftCorner(g, g);
    Eigen::MatrixXd q0 = g0.topRightCorner(g, g);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(p0);
    Eigen::MatrixXd p0i = lu.solve(Eigen::MatrixXd::Identity(g, g));
    out.omega = (p0i * q0).cast<Complex>() + Complex(0.0, 1.0) * p0i.cast<Complex>();
    return out;
}

std::vector<double> primal_block_values(const WeightedSurfaceGraph& s, const Cochain1& c) {
    std::vector<double> v(s.edge_count);
    for (int e = 0; e < s.edge_count; ++e) v[e] = c.values[e].real();
    return v;
}

/* Holonomy tables of the harmonic basis over the raw homology basis. */
struct PeriodTables {
    Eigen::MatrixXd t;   // symplectic change of basis (columns = new cycles)
    Eigen::MatrixXd ag;  // ag(j, c) = integral of omega_j along primal rep c
    Eigen::MatrixXd ad;  // ad(j, c) = integral of *omega_j along dual rep c
};

PeriodTables build_tables(const WeightedSurfaceGraph& s, const HomologyBasis& basis,
                          const std::vector<HarmonicForm>& forms) {
    int g2 = 2 * basis.genus;
    if ((int)forms.size() != g2)
        throw ValidationError("harmonic basis size does not match the homology basis");
    PeriodTables tables;
    tables.t = symplectic_transform(basis.intersection).cast<double>();
    tables.ag.resize(g2, g2);
    tables.ad.resize(g2, g2);
    for (int jj = 0; jj < g2; ++jj) {
        std::vector<double> omega = primal_block_values(s, forms[jj].omega);
        std::vector<double> star(s.edge_count);
        for (int e = 0; e < s.edge_count; ++e) star[e] = s.rho[e] * omega[e];
        for (int c = 0; c < g2; ++c) {
            tables.ag(jj, c) = holonomy_primal(s, basis.primal_reps[c], omega);
            tables.ad(jj, c) = holonomy_dual(s, basis.dual_reps[c], star);
        }
    }
    return tables;
}

/* The doubly normalized period system: unit a-periods on both graphs. */
struct NormalizedSystem {
    Eigen::MatrixXcd sys;  // (2g x 2g) a-period matrix of the harmonic basis
    Eigen::MatrixXcd r;    // (2g x g) coefficients, basis after the t change
    double residual;
};

NormalizedSystem solve_normalized(const PeriodTables& tables, int g) {
    int g2 = 2 * g;
    Eigen::MatrixXd agn = tables.ag * tables.t;
    Eigen::MatrixXd adn = tables.ad * tables.t;
    NormalizedSystem out;
    out.sys.resize(g2, g2);
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(g2, g);
    for (int l = 0; l < g; ++l) {
        out.sys.row(l) = agn.col(l).transpose().cast<Complex>();
        out.sys.row(g + l) = Complex(0.0, 1.0) * adn.col(l).transpose().cast<Complex>();
        rhs(l, l) = 1.0;
        rhs(g + l, l) = 1.0;
    }
    out.r = out.sys.partialPivLu().solve(rhs);
    out.residual = (out.sys * out.r - rhs).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace

HolomorphicBasis holomorphic_basis(const WeightedSurfaceGraph& s, const HomologyBasis& basis,
                                   const std::vector<HarmonicForm>& forms) {
    int g = basis.genus, g2 = 2 * g;
    PeriodTables tables = build_tables(s, basis, forms);
    NormalizedSystem sol = solve_normalized(tables, g);

    HolomorphicBasis out;
    out.coefficients = tables.t.cast<Complex>() * sol.r;  // raw-basis coefficients
    out.normalization_residual = sol.residual;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sol.sys);
    double smin = svd.singularValues().minCoeff();
    out.condition_estimate = smin > 0.0 ? svd.singularValues().maxCoeff() / smin
                                        : std::numeric_limits<double>::infinity();
    for (int k = 0; k < g; ++k) {
        Cochain1 zeta = zero_cochain1(s, Support::full);
        for (int c = 0; c < g2; ++c) {
            Complex coef = out.coefficients(c, k);
            if (coef == Complex(0.0, 0.0)) continue;
            for (int e = 0; e < s.edge_count; ++e)
                zeta.values[e] += coef * forms[c].omega.values[e];
        }
        for (int e = 0; e < s.edge_count; ++e)
            zeta.values[s.edge_count + e] = Complex(0.0, 1.0) * s.rho[e] * zeta.values[e];
        out.zetas.push_back(std::move(zeta));
    }
    return out;
}

PeriodResult period_matrix(const WeightedSurfaceGraph& s, const HomologyBasis& basis,
                           const std::vector<HarmonicForm>& forms) {
    int g = basis.genus, g2 = 2 * g;
    if (g == 0) throw GenusZeroError("the surface has genus 0: there is no period matrix");
    PeriodTables tables = build_tables(s, basis, forms);

    PeriodResult result;
    result.genus = g;

    // primal pipeline: Gram of the harmonic basis, then the polar projection
    Eigen::MatrixXd gram = tables.t.transpose() * tables.ad * tables.t;
    SiegelProjection prim = gram_to_siegel(gram);
    result.pi = prim.omega;

    // dual pipeline: harmonic forms of the reciprocal weights, starred back
    std::vector<HarmonicForm> duals = dual_harmonic_forms(s, basis);
    Eigen::MatrixXd gram_dual(g2, g2);
    for (int jj = 0; jj < g2; ++jj) {
        std::vector<double> back(s.edge_count);
        for (int e = 0; e < s.edge_count; ++e)
            back[e] = -duals[jj].omega.values[s.edge_count + e].real() / s.rho[e];
        for (int c = 0; c < g2; ++c)
            gram_dual(jj, c) = holonomy_primal(s, basis.primal_reps[c], back);
    }
    SiegelProjection dual = gram_to_siegel(tables.t.transpose() * gram_dual * tables.t);
    result.pi_star = dual.omega;
    result.projection_defect = std::max(prim.defect, dual.defect);

    // doubly normalized system (diagnostic; basis-dependent)
    NormalizedSystem sol = solve_normalized(tables, g);
    Eigen::MatrixXcd agn = (tables.ag * tables.t).cast<Complex>();
    Eigen::MatrixXcd adn = (tables.ad * tables.t).cast<Complex>();
    Eigen::MatrixXcd pi_raw =
        (Complex(0.0, 1.0) * adn.rightCols(g)).transpose() * sol.r;
    Eigen::MatrixXcd pis_raw = agn.rightCols(g).transpose() * sol.r;
    result.pi_raw = pi_raw.transpose();
    result.pi_star_raw = pis_raw.transpose();
    result.normalization_residual = sol.residual;

    // residual bookkeeping
    double hres = 0.0, cres = 0.0;
    for (const std::vector<HarmonicForm>* list : {&forms, &std::as_const(duals)})
        for (const auto& form : *list) {
            hres = std::max(hres, form.solver_residual);
            HarmonicDefect defect = verify_harmonic(s, form.omega);
            cres = std::max(cres, std::max(defect.closedness, defect.coclosedness));
        }
    result.harmonic_residual = hres;
    result.closedness_residual = cres;

    result.symmetry_defect = (result.pi - result.pi.transpose().eval()).cwiseAbs().maxCoeff();
    Eigen::MatrixXd im = result.pi.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (im + im.transpose()));
    result.positivity_margin = es.eigenvalues().minCoeff();
    result.positivity_ok = result.positivity_margin > 0.0;
    result.pi_pi_star_defect = (result.pi - result.pi_star).cwiseAbs().maxCoeff();

    result.provenance.vertices = s.vertex_count;
    result.provenance.edges = s.edge_count;
    result.provenance.faces = s.face_count;
    result.provenance.min_rho =
        s.rho.empty() ? 0.0 : *std::min_element(s.rho.begin(), s.rho.end());

    result.flagged = !result.positivity_ok || result.harmonic_residual > 1e-6 ||
                     result.closedness_residual > 1e-6 ||
                     result.normalization_residual > 1e-6 ||
                     result.projection_defect > 1e-6;
    return result;
}

RiemannCheck riemann_check(const Eigen::MatrixXcd& omega, double tol) {
    RiemannCheck check;
    check.symmetry_defect = (omega - omega.transpose().eval()).cwiseAbs().maxCoeff();
    Eigen::MatrixXd im = omega.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (im + im.transpose()));
    check.positivity_margin = es.eigenvalues().minCoeff();
    double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
    check.ok = check.symmetry_defect <= tol * scale && check.positivity_margin > 0.0;
    return check;
}

PeriodResult compute_periods(const WeightedSurfaceGraph& s, int root) {
    if (s.genus == 0)
        throw GenusZeroError("the surface has genus 0: there is no period matrix");
    HomologyBasis basis = homotopy_basis(s, root);
    int pin = root >= 0 && root < s.vertex_count ? root : 0;
    std::vector<HarmonicForm> forms = harmonic_forms(s, basis, pin);
    return period_matrix(s, basis, forms);
}

}  // namespace polyperiod
