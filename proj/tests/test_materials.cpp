#include "doctest.h"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "vdg/materials.hpp"

using namespace vdg;
using Eigen::Matrix3d;

TEST_CASE("moduli of the Table-1 presets") {
    double K, G, D;
    derive_moduli(MaterialSpec::preset("isotropic_sandstone"), K, G, D);
    CHECK(D == doctest::Approx(25.6e9).epsilon(1e-12));
    CHECK(G == doctest::Approx(16.2e9).epsilon(1e-12));
    CHECK(K == doctest::Approx(4.0e9).epsilon(1e-9));

    derive_moduli(MaterialSpec::preset("clay_shale"), K, G, D);
    CHECK(D == doctest::Approx((66.6 + 66.6 + 39.9) / 3 * 1e9).epsilon(1e-12));
    CHECK(G == doctest::Approx((10.9 + 10.9 + 23.4) / 3 * 1e9).epsilon(1e-12));
}

TEST_CASE("moduli with vanishing shear entries") {
    MaterialSpec m;
    m.c11 = m.c22 = m.c33 = 7.5e9;
    m.c44 = m.c55 = m.c66 = 0.0;
    double K, G, D;
    derive_moduli(m, K, G, D);
    CHECK(D == doctest::Approx(7.5e9));
    CHECK(G == 0.0);
    CHECK(K == doctest::Approx(7.5e9));
}

TEST_CASE("compliance inverse") {
    SUBCASE("diagonal stiffness") {
        MaterialSpec m;
        m.rho = 1000;
        m.c11 = m.c22 = m.c33 = 5e9;
        m.c12 = m.c13 = m.c23 = 0.0;
        m.c44 = m.c55 = m.c66 = 1e9;
        const Matrix3d r = compliance_inverse(m);
        CHECK(r(0, 0) == doctest::Approx(1.0 / 5e9).epsilon(1e-13));
        CHECK(r(0, 1) == doctest::Approx(0.0));
        CHECK(r(0, 2) == doctest::Approx(0.0));
    }
    SUBCASE("sandstone diagonal entry") {
        // closed form for a + b(J - I) structure: 1/3/(a+2b) + 2/3/(a-b)
        const double diag = 1.0 / 3.0 / 44.4e9 + 2.0 / 3.0 / 16.2e9;
        const Matrix3d r = compliance_inverse(MaterialSpec::preset("isotropic_sandstone"));
        CHECK(r(0, 0) == doctest::Approx(diag).epsilon(1e-12));
        CHECK(r(0, 0) == doctest::Approx(0.04866e-9).epsilon(1e-4));
    }
    SUBCASE("product recovers identity") {
        for (const auto& name : MaterialSpec::preset_names()) {
            const MaterialSpec m = MaterialSpec::preset(name);
            const Matrix3d prod = m.stiffness3() * compliance_inverse(m);
            CHECK((prod - Matrix3d::Identity()).norm() < 1e-12);
        }
    }
    SUBCASE("singular block rejected") {
        MaterialSpec m;
        m.rho = 1000;
        m.c11 = m.c22 = m.c33 = 1e9;
        m.c12 = m.c13 = m.c23 = 1e9;  // rank-one block
        m.c44 = m.c55 = m.c66 = 1e9;
        CHECK_THROWS_WITH_AS(compliance_inverse(m),
                             doctest::Contains("condition number"), std::invalid_argument);
    }
}

TEST_CASE("relaxation function chi") {
    RelaxationModel rm{3.72e-3, 3.36e-3};
    SUBCASE("elastic limit is constant one") {
        RelaxationModel el{2e-3, 2e-3};
        for (double t : {0.0, 1e-4, 5e-3, 1.0}) CHECK(el.chi(t) == doctest::Approx(1.0));
    }
    SUBCASE("unrelaxed value is one, relaxed value tau_sig/tau_eps") {
        CHECK(rm.chi(0.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rm.chi(100 * rm.tau_sig) ==
              doctest::Approx(rm.tau_sig / rm.tau_eps).epsilon(1e-12));
    }
    SUBCASE("causal") { CHECK(rm.chi(-1e-6) == 0.0); }
}

TEST_CASE("complex modulus") {
    RelaxationModel rm{3.72e-3, 3.36e-3};
    SUBCASE("elastic limit") {
        RelaxationModel el{2e-3, 2e-3};
        for (double w : {0.0, 10.0, 1e4}) {
            CHECK(el.modulus(w).real() == doctest::Approx(1.0));
            CHECK(el.modulus(w).imag() == doctest::Approx(0.0));
        }
    }
    SUBCASE("frequency limits") {
        CHECK(rm.modulus(0.0).real() == doctest::Approx(rm.tau_sig / rm.tau_eps));
        CHECK(rm.modulus(0.0).imag() == doctest::Approx(0.0));
        CHECK(rm.modulus(1e9).real() == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("conjugate symmetry and dissipative sign") {
        for (double w : {1.0, 50.0, 300.0, 2000.0}) {
            const auto m = rm.modulus(w);
            const auto mneg = rm.modulus(-w);
            CHECK(mneg.real() == doctest::Approx(m.real()).epsilon(1e-14));
            CHECK(mneg.imag() == doctest::Approx(-m.imag()).epsilon(1e-14));
            CHECK(m.imag() >= 0.0);
        }
    }
    SUBCASE("matches the numeric transform of d(chi H)/dt") {
        // d(chi H)/dt = chi(0) delta + chi_dot H; the transform of the tail is
        // integrated with Simpson's rule over 60 relaxation times.
        const int n = 60001;
        const double tmax = 60.0 * rm.tau_sig;
        const double dt = tmax / (n - 1);
        for (double w = 0.0; w <= 10.0 / rm.tau_sig; w += 2.5 / rm.tau_sig) {
            std::complex<double> acc(0.0, 0.0);
            for (int i = 0; i < n; ++i) {
                const double t = i * dt;
                const double simpson = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                acc += simpson * rm.chi_dot(t) *
                       std::exp(std::complex<double>(0.0, -w * t));
            }
            acc *= dt / 3.0;
            const auto numeric = rm.chi(0.0) + acc;
            const auto closed = rm.modulus(w);
            CHECK(std::abs(numeric - closed) / std::abs(closed) < 1e-6);
        }
    }
}

TEST_CASE("derived coefficients") {
    const auto sand = MaterialSpec::preset("isotropic_sandstone");
    const auto c = derive_visco_coefficients(sand);

    SUBCASE("relaxation rates") {
        CHECK(c.T1 == doctest::Approx((1.0 / 3.36e-3) * (3.36 / 3.72 - 1.0)).epsilon(1e-12));
        CHECK(c.T1 == doctest::Approx(-28.80).epsilon(1e-3));
        CHECK(c.T2 < 0.0);
    }
    SUBCASE("compliance combinations") {
        const Matrix3d r = compliance_inverse(sand);
        CHECK(c.d1 == doctest::Approx(r(0, 0) + r(0, 1) + r(0, 2)));
        CHECK(c.d2 == doctest::Approx(r(2, 2) + 2 * r(0, 2)));
    }
    SUBCASE("Qs_inv is SPD with the numeric 2D stress-block inverse") {
        for (const auto& name : MaterialSpec::preset_names()) {
            const auto cc = derive_visco_coefficients(MaterialSpec::preset(name));
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(cc.Qs_inv);
            CHECK(es.eigenvalues().minCoeff() > 0.0);
            const Matrix3d prod = cc.Qs_inv.topLeftCorner<3, 3>() * cc.Cp2;
            CHECK((prod - Matrix3d::Identity()).norm() < 1e-12);
        }
    }
    SUBCASE("symmetric part of S is negative semidefinite") {
        for (const auto& name : {"clay_shale", "phenolic", "isotropic_sandstone"}) {
            const auto cc = derive_visco_coefficients(MaterialSpec::preset(name));
            const Eigen::Matrix<double, 6, 6> sym = 0.5 * (cc.S + cc.S.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(sym);
            const double norm = cc.S.norm();
            CHECK(es.eigenvalues().maxCoeff() <= 1e-8 * norm);
        }
    }
    SUBCASE("elastic limit strips the viscous couplings") {
        const auto el = derive_visco_coefficients(sand.elastic_limit());
        CHECK(el.T1 == 0.0);
        CHECK(el.T2 == 0.0);
        CHECK(el.z_rows.norm() == 0.0);
        CHECK(el.g11.norm() == 0.0);
        CHECK(el.g21.norm() == 0.0);
        CHECK((el.g22 + Eigen::Vector3d(1 / el.tau_sig1, 1 / el.tau_sig2, 1 / el.tau_sig2)
                            .asDiagonal()
                            .toDenseMatrix())
                  .norm() == doctest::Approx(0.0));
        // the memory scaling collapses to the identity
        CHECK((el.L - Matrix3d::Identity()).norm() == 0.0);
    }
    SUBCASE("g12 keeps the printed coupling pattern") {
        const auto el = derive_visco_coefficients(sand.elastic_limit());
        Matrix3d expect;
        expect << el.K, 2 * el.G, 0, el.K, -2 * el.G, 0, 0, 0, sand.c55;
        CHECK((el.g12 - expect).norm() < 1e-9 * expect.norm());
    }
}

TEST_CASE("scaled memory system is the exact image of the physical one") {
    // dq/dt = P dx + R dz + D q in [s, e, v] pushed through
    // a = L e - z_rows s must reproduce the solver blocks.
    for (const auto& name : MaterialSpec::preset_names()) {
        const auto c = derive_visco_coefficients(MaterialSpec::preset(name));
        // physical local dynamics (zero velocity gradients):
        //   ds/dt = g12p e,  de/dt = -diag(1/tau) e
        Eigen::Matrix<double, 6, 6> De = Eigen::Matrix<double, 6, 6>::Zero();
        Matrix3d g12p;
        g12p << c.K, 2 * c.G, 0, c.K, -2 * c.G, 0, 0, 0, c.Cp2(2, 2);
        De.topRightCorner<3, 3>() = g12p;
        De.bottomRightCorner<3, 3>() =
            (-Eigen::Vector3d(1 / c.tau_sig1, 1 / c.tau_sig2, 1 / c.tau_sig2)).asDiagonal();
        Eigen::Matrix<double, 6, 6> X = Eigen::Matrix<double, 6, 6>::Identity();
        X.bottomLeftCorner<3, 3>() = -c.z_rows;
        X.bottomRightCorner<3, 3>() = c.L;
        const Eigen::Matrix<double, 6, 6> pushed = X * De * X.inverse();
        CHECK((pushed - c.Gblk).norm() < 1e-10 * (1.0 + c.Gblk.norm()));
    }
}

TEST_CASE("memory/physical round trip") {
    const auto c = derive_visco_coefficients(MaterialSpec::preset("clay_shale"));
    Eigen::Vector3d sigma(3e6, -1e6, 0.5e6), a(1e-4, -2e-4, 3e-4);
    const Eigen::Vector3d e = c.memory_to_physical(a, sigma);
    const Eigen::Vector3d back = c.memory_from_physical(e, sigma);
    CHECK((back - a).norm() < 1e-13 * (a.norm() + (c.z_rows * sigma).norm()));

    const auto el = derive_visco_coefficients(MaterialSpec::preset("clay_shale").elastic_limit());
    CHECK((el.memory_to_physical(a, sigma) - a).norm() == 0.0);
    CHECK((el.memory_to_physical(a, Eigen::Vector3d::Zero()) - a).norm() == 0.0);
}

TEST_CASE("characteristic speeds") {
    SUBCASE("sandstone peaks on the diagonal direction") {
        const auto m = MaterialSpec::preset("isotropic_sandstone");
        // 45-degree Christoffel: diag (c11+c55)/2, off (c13+c55)/2
        const double gd = (25.6 + 16.2) / 2 * 1e9, go = (9.4 + 16.2) / 2 * 1e9;
        const double expect = std::sqrt((gd + go) / 2500.0);
        CHECK(characteristic_speed(m) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(characteristic_speed(m) > std::sqrt(25.6e9 / 2500.0));
    }
    SUBCASE("acoustic degenerate case") {
        MaterialSpec m;
        m.rho = 2000;
        m.c11 = m.c22 = m.c33 = 9e9;
        m.c12 = m.c13 = m.c23 = 0.0;
        m.c44 = m.c55 = m.c66 = 0.0;
        CHECK(characteristic_speed(m) == doctest::Approx(std::sqrt(9e9 / 2000.0)));
    }
    SUBCASE("clay shale against a dense direction scan") {
        const auto m = MaterialSpec::preset("clay_shale");
        double ref = 0.0;
        for (const double th : {0.0, M_PI / 4, M_PI / 2}) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(
                christoffel(m, std::cos(th), std::sin(th)));
            ref = std::max(ref, std::sqrt(es.eigenvalues().maxCoeff() / m.rho));
        }
        CHECK(characteristic_speed(m) == doctest::Approx(ref));
    }
}

TEST_CASE("validation rejects bad input") {
    auto m = MaterialSpec::preset("isotropic_sandstone");
    SUBCASE("density") {
        m.rho = 0.0;
        CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    }
    SUBCASE("indefinite stiffness") {
        m.c12 = 60e9;
        CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    }
    SUBCASE("relaxation ordering") {
        m.tau_eps[1] = 0.5 * m.tau_sig[1];
        CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    }
    SUBCASE("unknown preset") {
        CHECK_THROWS_AS(MaterialSpec::preset("granite"), std::invalid_argument);
    }
}
