#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "polyperiod/siegel.hpp"
#include "polyperiod/surfaces.hpp"

using namespace polyperiod;
using Complex = std::complex<double>;

namespace {

Eigen::MatrixXcd scalar(Complex z) {
    Eigen::MatrixXcd m(1, 1);
    m << z;
    return m;
}

const Eigen::MatrixXcd& reference(const std::string& name) {
    for (const ReferenceMatrix& r : reference_matrices())
        if (r.name == name) return r.omega;
    throw std::runtime_error("unknown reference " + name);
}

Eigen::MatrixXcd random_siegel_point(int g, std::mt19937& rng) {
    std::normal_distribution<double> n;
    Eigen::MatrixXd x(g, g), a(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            x(i, j) = 2.0 * n(rng);
            a(i, j) = n(rng);
        }
    x = 0.5 * (x + x.transpose()).eval();
    // a a^T + eps is symmetric positive definite
    Eigen::MatrixXd y = a * a.transpose() + 0.05 * Eigen::MatrixXd::Identity(g, g);
    return x.cast<Complex>() + Complex(0.0, 1.0) * y.cast<Complex>();
}

Eigen::MatrixXd random_symplectic(int g, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-2, 2), pick(0, g - 1), which(0, 2);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * g, 2 * g);
    Eigen::MatrixXd j(2 * g, 2 * g);
    j = symplectic_form(g);
    for (int step = 0; step < 4; ++step) {
        switch (which(rng)) {
            case 0: {  // unimodular shear of the a-cycles (off-diagonal only)
                Eigen::MatrixXd u = Eigen::MatrixXd::Identity(g, g);
                if (g > 1) {
                    int r = pick(rng), c = pick(rng);
                    if (r != c) u(r, c) += coef(rng);
                }
                m = embed_gl(u) * m;
                break;
            }
            case 1: {  // integral translation
                Eigen::MatrixXd b = Eigen::MatrixXd::Zero(g, g);
                int r = pick(rng), c = pick(rng);
                b(r, c) = coef(rng);
                b(c, r) = b(r, c);
                m = translation(b) * m;
                break;
            }
            default:  // full inversion
                m = j * m;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("scalar reduction: translation and inversion") {
    ReducedMatrix a = siegel_reduce(scalar(Complex(5.0, 2.0)));
    CHECK(std::abs(a.omega(0, 0) - Complex(0.0, 2.0)) < 1e-12);
    CHECK(a.converged);
    CHECK(a.canonical);

    ReducedMatrix b = siegel_reduce(scalar(Complex(0.0, 0.25)));
    CHECK(std::abs(b.omega(0, 0) - Complex(0.0, 4.0)) < 1e-12);

    // a point of the unit circle with negative real part moves to the
    // positive side
    double im = std::sqrt(1.0 - 0.09);
    ReducedMatrix c = siegel_reduce(scalar(Complex(-0.3, im)));
    CHECK(std::abs(c.omega(0, 0) - Complex(0.3, im)) < 1e-9);
}

TEST_CASE("the accumulated transform reproduces the reduction") {
    std::mt19937 rng(43);
    for (int g : {1, 2}) {
        for (int trial = 0; trial < 40; ++trial) {
            Eigen::MatrixXcd z = random_siegel_point(g, rng);
            ReducedMatrix r = siegel_reduce(z);
            Eigen::MatrixXd m = r.transform.cast<double>();
            // the transform is integer symplectic
            CHECK((m * symplectic_form(g) * m.transpose() - symplectic_form(g))
                      .cwiseAbs()
                      .maxCoeff() < 1e-9);
            CHECK((sp_act(m, z) - r.omega).cwiseAbs().maxCoeff() <
                  1e-11 * (1.0 + z.cwiseAbs().maxCoeff()) + r.symmetrization_defect + 1e-12);
        }
    }
}

TEST_CASE("reduction is idempotent") {
    std::mt19937 rng(47);
    for (int g : {1, 2}) {
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::MatrixXcd z = random_siegel_point(g, rng);
            ReducedMatrix once = siegel_reduce(z);
            ReducedMatrix twice = siegel_reduce(once.omega);
            CHECK((twice.omega - once.omega).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("scalar reductions land in the fundamental domain") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::MatrixXcd z = random_siegel_point(1, rng);
        ReducedMatrix r = siegel_reduce(z);
        Complex w = r.omega(0, 0);
        CHECK(w.real() >= -0.5 - 1e-9);
        CHECK(w.real() <= 0.5 + 1e-9);
        CHECK(std::abs(w) >= 1.0 - 1e-9);
        CHECK(w.imag() > 0.0);
        if (std::abs(std::abs(w) - 1.0) < 1e-9) CHECK(w.real() >= -1e-9);
    }
}

TEST_CASE("genus-2 reductions satisfy the lattice normalization") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::MatrixXcd z = random_siegel_point(2, rng);
        ReducedMatrix r = siegel_reduce(z);
        if (!r.converged) continue;
        Eigen::MatrixXd y = r.omega.imag(), x = r.omega.real();
        CHECK(y(0, 0) <= y(1, 1) * (1.0 + 1e-8));
        CHECK(y(0, 1) >= -1e-8 * y(0, 0));
        CHECK(2.0 * y(0, 1) <= y(0, 0) * (1.0 + 1e-8));
        CHECK(x.cwiseAbs().maxCoeff() <= 0.5 + 1e-8);
        CHECK(std::abs(r.omega(0, 0)) >= 1.0 - 1e-8);
        CHECK(r.canonical);
    }
}

TEST_CASE("reduction is invariant under the integer symplectic group") {
    std::mt19937 rng(61);
    for (int g : {1, 2}) {
        Eigen::MatrixXcd z =
            g == 1 ? scalar(Complex(0.37, 1.21)) : reference("omega1");
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::MatrixXd m = random_symplectic(g, rng);
            Eigen::MatrixXcd moved = sp_act(m, z);
            CHECK(compare_period_matrices(moved, z) < 1e-8);
        }
    }
}

TEST_CASE("distinct reference surfaces are far apart") {
    CHECK(compare_period_matrices(reference("omega1"), reference("omega2")) > 0.1);
    CHECK(compare_period_matrices(reference("omega1"), reference("omega3")) > 0.1);
    CHECK(compare_period_matrices(reference("omega2"), reference("omega3")) > 0.1);
    // equal classes have distance zero
    CHECK(compare_period_matrices(reference("omega3"), reference("omega_l")) < 1e-14);
}

TEST_CASE("genus three still normalizes translations") {
    std::mt19937 rng(67);
    Eigen::MatrixXcd z = random_siegel_point(3, rng);
    ReducedMatrix r = siegel_reduce(z);
    CHECK(r.omega.real().cwiseAbs().maxCoeff() <= 0.5 + 1e-9);
    CHECK_FALSE(r.canonical);  // no fundamental-domain claim beyond genus 2
    // comparison falls back to the plain distance of the reductions
    double d = compare_period_matrices(z, z);
    CHECK(d < 1e-12);
}

TEST_CASE("size mismatch is an error") {
    CHECK_THROWS_AS(compare_period_matrices(scalar(Complex(0, 1)), reference("omega1")),
                    GenusMismatchError);
}

TEST_CASE("symplectic building blocks satisfy the group relations") {
    Eigen::MatrixXd u(2, 2);
    u << 2, 1, 1, 1;  // determinant 1
    Eigen::MatrixXd b(2, 2);
    b << 1, -2, -2, 3;
    Eigen::MatrixXd j = symplectic_form(2);
    for (const Eigen::MatrixXd& m : {embed_gl(u), translation(b), j})
        CHECK((m * j * m.transpose() - j).cwiseAbs().maxCoeff() < 1e-12);
    // the fractional-linear action composes
    std::mt19937 rng(71);
    Eigen::MatrixXcd z = random_siegel_point(2, rng);
    Eigen::MatrixXd m1 = random_symplectic(2, rng), m2 = random_symplectic(2, rng);
    Eigen::MatrixXcd lhs = sp_act(m1 * m2, z);
    Eigen::MatrixXcd rhs = sp_act(m1, sp_act(m2, z));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
}
