#include "doctest.h"

#include <cmath>
#include <random>

#include "vdg/refelem.hpp"

using namespace vdg;

TEST_CASE("linear element mass matrix") {
    const auto ops = build_reference(1);
    CHECK(ops.Np == 3);
    // hat-function mass on a triangle of area A: (A/12) [[2,1,1],[1,2,1],[1,1,2]]
    Eigen::Matrix3d expect;
    expect << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    expect *= 2.0 / 12.0;  // reference area 2
    CHECK((ops.M - expect).norm() < 1e-13);
}

TEST_CASE("differentiation is exact on P^N") {
    for (int N : {1, 2, 4, 6, 8}) {
        const auto ops = build_reference(N);
        for (int i = 0; i + 0 <= N; ++i)
            for (int j = 0; i + j <= N; ++j) {
                Eigen::VectorXd f(ops.Np), fr(ops.Np), fs(ops.Np);
                for (int n = 0; n < ops.Np; ++n) {
                    const double r = ops.r(n), s = ops.s(n);
                    f(n) = std::pow(r, i) * std::pow(s, j);
                    fr(n) = i ? i * std::pow(r, i - 1) * std::pow(s, j) : 0.0;
                    fs(n) = j ? j * std::pow(r, i) * std::pow(s, j - 1) : 0.0;
                }
                CHECK((ops.Dr * f - fr).lpNorm<Eigen::Infinity>() < 1e-10);
                CHECK((ops.Ds * f - fs).lpNorm<Eigen::Infinity>() < 1e-10);
            }
    }
}

TEST_CASE("mass matrix properties") {
    for (int N : {1, 3, 5, 8}) {
        const auto ops = build_reference(N);
        SUBCASE(("N = " + std::to_string(N)).c_str()) {
            // SPD and total area
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.M);
            CHECK(es.eigenvalues().minCoeff() > 0.0);
            const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ops.Np);
            CHECK(ones.dot(ops.M * ones) == doctest::Approx(2.0).epsilon(1e-13));
            // closed-form mass equals the quadrature-assembled one
            const auto q = triangle_quadrature(N + 2);
            const Eigen::MatrixXd P = vandermonde(N, q.r, q.s) * ops.Vinv;
            const Eigen::MatrixXd Mq = P.transpose() * q.w.asDiagonal() * P;
            CHECK((ops.M - Mq).norm() < 1e-12 * ops.M.norm());
        }
    }
}

TEST_CASE("vandermonde") {
    SUBCASE("constant mode normalization at the centroid") {
        Eigen::VectorXd r(1), s(1);
        r(0) = s(0) = -1.0 / 3.0;
        const Eigen::MatrixXd V = vandermonde(3, r, s);
        CHECK(V(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("well conditioned at the interpolation nodes") {
        for (int N = 1; N <= 8; ++N) {
            const auto ops = build_reference(N);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(ops.V);
            const double cond =
                svd.singularValues()(0) / svd.singularValues()(ops.Np - 1);
            CHECK(cond < 2e3);
        }
    }
    SUBCASE("degree guard") {
        CHECK_THROWS_AS(build_reference(0), std::invalid_argument);
        CHECK_THROWS_AS(build_reference(9), std::invalid_argument);
    }
}

TEST_CASE("face mass and lift") {
    for (int N : {1, 2, 5}) {
        const auto ops = build_reference(N);
        const double reflen[3] = {2.0, 2.0 * std::sqrt(2.0), 2.0};
        for (int f = 0; f < 3; ++f) {
            const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ops.Nfp);
            CHECK(ones.dot(ops.Mf[f] * ones) == doctest::Approx(reflen[f]).epsilon(1e-12));
            // lift consistency M * lift = E * Mf
            Eigen::MatrixXd E = Eigen::MatrixXd::Zero(ops.Np, ops.Nfp);
            for (int i = 0; i < ops.Nfp; ++i) E(ops.fmask[f][i], i) = 1.0;
            CHECK((ops.M * ops.lift[f] - E * ops.Mf[f]).norm() < 1e-12 * ops.Mf[f].norm());
        }
    }
}

TEST_CASE("discrete Gauss identity") {
    // (Sr + Sr^T) u . v equals the boundary quadrature of u v n_r, likewise s.
    for (int N : {1, 3, 6}) {
        const auto ops = build_reference(N);
        auto embed = [&](int f) {
            Eigen::MatrixXd E = Eigen::MatrixXd::Zero(ops.Np, ops.Np);
            for (int i = 0; i < ops.Nfp; ++i)
                for (int j = 0; j < ops.Nfp; ++j)
                    E(ops.fmask[f][i], ops.fmask[f][j]) = ops.Mf[f](i, j);
            return E;
        };
        const double s2 = 1.0 / std::sqrt(2.0);
        const Eigen::MatrixXd Br = s2 * embed(1) - embed(2);
        const Eigen::MatrixXd Bs = s2 * embed(1) - embed(0);
        CHECK((ops.Sr + ops.Sr.transpose() - Br).norm() < 1e-10);
        CHECK((ops.Ss + ops.Ss.transpose() - Bs).norm() < 1e-10);
    }
}

TEST_CASE("interpolation") {
    const auto ops = build_reference(4);
    SUBCASE("constants and monomials are exact") {
        Eigen::VectorXd c = Eigen::VectorXd::Constant(ops.Np, 3.25);
        CHECK(ops.interpolate(c, -0.2, -0.4) == doctest::Approx(3.25).epsilon(1e-14));
        Eigen::VectorXd f(ops.Np);
        for (int n = 0; n < ops.Np; ++n)
            f(n) = std::pow(ops.r(n), 3) * ops.s(n);  // degree 4 monomial
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-0.9, -0.1);
        for (int trial = 0; trial < 5; ++trial) {
            const double r = u(rng), s = u(rng);
            if (r + s > -0.05) continue;
            CHECK(ops.interpolate(f, r, s) == doctest::Approx(std::pow(r, 3) * s).epsilon(1e-12));
        }
    }
    SUBCASE("rejects points outside the element") {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(ops.Np);
        CHECK_THROWS_AS(ops.interpolate(c, 0.8, 0.8), std::invalid_argument);
    }
    SUBCASE("smooth-function error decays at order N+1") {
        // sample f on elements scaled by h and interpolate at a fixed
        // barycentric point; the error behaves like h^{N+1}
        const int N = 2;
        const auto o2 = build_reference(N);
        auto f = [](double x, double y) { return std::sin(1.3 * x + 0.4 * y * y); };
        std::vector<double> errs;
        for (double h : {0.5, 0.25, 0.125}) {
            Eigen::VectorXd nodal(o2.Np);
            for (int n = 0; n < o2.Np; ++n) nodal(n) = f(h * o2.r(n), h * o2.s(n));
            const double rp = -0.31, sp = -0.47;
            errs.push_back(std::abs(o2.interpolate(nodal, rp, sp) - f(h * rp, h * sp)));
        }
        const double rate = std::log2(errs[0] / errs[2]) / 2.0;
        CHECK(rate > N + 0.5);
    }
}
