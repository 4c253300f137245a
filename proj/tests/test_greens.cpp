#include "doctest.h"

#include <cmath>
#include <complex>

#include "vdg/greens.hpp"

using namespace vdg;

TEST_CASE("complex Bessel functions") {
    SUBCASE("real arguments against the standard library") {
        for (double x : {0.05, 0.5, 2.0, 8.0, 11.9, 12.1, 20.0, 75.0, 200.0}) {
            CHECK(std::abs(bessel_j0(cplx(x, 0)) - std::cyl_bessel_j(0, x)) <
                  1e-10 * (1.0 + std::abs(std::cyl_bessel_j(0, x))));
            CHECK(std::abs(bessel_j1(cplx(x, 0)) - std::cyl_bessel_j(1, x)) < 1e-10);
            CHECK(std::abs(bessel_y0(cplx(x, 0)) - std::cyl_neumann(0, x)) < 1e-9);
            CHECK(std::abs(bessel_y1(cplx(x, 0)) - std::cyl_neumann(1, x)) <
                  1e-9 * (1.0 + std::abs(std::cyl_neumann(1, x))));
        }
    }
    SUBCASE("Wronskian for complex arguments") {
        for (cplx z : {cplx(3.0, -0.4), cplx(0.7, -0.05), cplx(11.0, -1.0), cplx(15.0, -2.0),
                       cplx(60.0, -4.0), cplx(300.0, -8.0)}) {
            const cplx w = bessel_j1(z) * bessel_y0(z) - bessel_j0(z) * bessel_y1(z);
            const cplx expect = 2.0 / (M_PI * z);
            CHECK(std::abs(w - expect) < 1e-10 * std::abs(expect));
        }
    }
    SUBCASE("H2 combination") {
        const cplx z(9.0, -0.3);
        CHECK(std::abs(hankel2_0(z) - (bessel_j0(z) - cplx(0, 1) * bessel_y0(z))) < 1e-12);
        CHECK(std::abs(hankel2_1(z) - (bessel_j1(z) - cplx(0, 1) * bessel_y1(z))) < 1e-12);
    }
    SUBCASE("series/asymptotic agree at the switch") {
        // evaluate both branches just inside and outside |z| = 12
        for (double im : {-0.0, -0.5, -2.0}) {
            const cplx a = hankel2_0(cplx(11.999, im));
            const cplx b = hankel2_0(cplx(12.001, im));
            CHECK(std::abs(a - b) < 2e-3 * std::abs(a));  // continuity, coarse
            const cplx w =
                bessel_j1(cplx(12.001, im)) * bessel_y0(cplx(12.001, im)) -
                bessel_j0(cplx(12.001, im)) * bessel_y1(cplx(12.001, im));
            CHECK(std::abs(w - 2.0 / (M_PI * cplx(12.001, im))) < 1e-10);
        }
    }
}

TEST_CASE("complex velocities") {
    const auto sand = MaterialSpec::preset("isotropic_sandstone").isotropized();
    SUBCASE("elastic limits agree across models") {
        const auto el = sand.elastic_limit();
        for (auto model : {VelocityModel::consistent, VelocityModel::lame}) {
            cplx cp, cs;
            complex_velocities(el, 100.0, model, cp, cs);
            CHECK(cp.real() == doctest::Approx(std::sqrt(el.c11 / el.rho)).epsilon(1e-12));
            CHECK(cs.real() == doctest::Approx(std::sqrt(el.c55 / el.rho)).epsilon(1e-12));
            CHECK(std::abs(cp.imag()) < 1e-12);
        }
    }
    SUBCASE("viscoelastic attenuation and dispersion signs") {
        cplx cp, cs;
        complex_velocities(sand, 2 * M_PI * 45.0, VelocityModel::consistent, cp, cs);
        CHECK(cp.imag() > 0.0);
        CHECK(cs.imag() > 0.0);
        CHECK(cp.real() < std::sqrt(sand.c11 / sand.rho));  // relaxed below unrelaxed
    }
    SUBCASE("printed model differs from the others in the elastic limit") {
        cplx cp_printed, cs_printed;
        complex_velocities(sand.elastic_limit(), 10.0, VelocityModel::printed, cp_printed,
                           cs_printed);
        CHECK(cp_printed.real() > 1.5 * std::sqrt(sand.c11 / sand.rho));
    }
}

TEST_CASE("frequency-domain point-force response") {
    GreensSetup setup;
    setup.material = MaterialSpec::preset("isotropic_sandstone").isotropized();
    setup.F0 = 1.0;
    SUBCASE("on-axis receiver has no horizontal motion") {
        setup.x = 0.0;
        setup.z = 300.0;
        cplx u1, u3;
        greens_frequency(setup, 2 * M_PI * 30.0, u1, u3);
        CHECK(std::abs(u1) == 0.0);
        CHECK(std::abs(u3) > 0.0);
    }
    SUBCASE("conjugate symmetry") {
        setup.x = 250.0;
        setup.z = 250.0;
        cplx u1p, u3p, u1m, u3m;
        greens_frequency(setup, 2 * M_PI * 40.0, u1p, u3p);
        greens_frequency(setup, -2 * M_PI * 40.0, u1m, u3m);
        CHECK(std::abs(u1m - std::conj(u1p)) < 1e-15);
        CHECK(std::abs(u3m - std::conj(u3p)) < 1e-15);
    }
    SUBCASE("zero frequency returns zero") {
        setup.x = 250.0;
        setup.z = 250.0;
        cplx u1, u3;
        greens_frequency(setup, 0.0, u1, u3);
        CHECK(std::abs(u1) == 0.0);
        CHECK(std::abs(u3) == 0.0);
    }
}

TEST_CASE("trace synthesis") {
    GreensSetup setup;
    setup.material = MaterialSpec::preset("isotropic_sandstone").isotropized().elastic_limit();
    setup.F0 = 1.0;
    setup.x = 250.0;
    setup.z = 250.0;
    SourceSpec w;
    w.kind = WaveletKind::gauss_cosine;
    w.f0 = 45.0;
    w.t0 = 1.2 / 45.0;
    std::vector<double> times;
    for (int i = 0; i <= 1500; ++i) times.push_back(0.35 * i / 1500);

    SUBCASE("zero wavelet gives a zero trace") {
        SourceSpec w0 = w;
        w0.amplitude = 0.0;
        const auto tr = greens_trace(setup, w0, times);
        double peak = 0.0;
        for (double v : tr.v3) peak = std::max(peak, std::abs(v));
        CHECK(peak == 0.0);
    }
    SUBCASE("elastic frequency synthesis matches the Eason convolution") {
        const auto freq = greens_trace(setup, w, times);
        const auto time = eason_elastic_trace(setup, w, times);
        double num1 = 0, num3 = 0, den1 = 0, den3 = 0;
        for (size_t i = 0; i < times.size(); ++i) {
            num1 += std::pow(freq.v1[i] - time.v1[i], 2);
            num3 += std::pow(freq.v3[i] - time.v3[i], 2);
            den1 += time.v1[i] * time.v1[i];
            den3 += time.v3[i] * time.v3[i];
        }
        CHECK(std::sqrt(num1 / den1) < 0.01);
        CHECK(std::sqrt(num3 / den3) < 0.01);
    }
    SUBCASE("causal to windowing tolerance") {
        setup.material = MaterialSpec::preset("isotropic_sandstone").isotropized();
        const auto tr = greens_trace(setup, w, times);
        const double cp_el = std::sqrt(setup.material.c11 / setup.material.rho);
        const double r = std::hypot(setup.x, setup.z);
        const double dw = M_PI * w.f0;  // delta-omega of the wavelet
        const double cutoff = r / cp_el + w.t0 - 6.0 / dw;
        double pre = 0.0, peak = 0.0;
        for (size_t i = 0; i < times.size(); ++i) {
            peak = std::max(peak, std::abs(tr.v3[i]));
            if (times[i] < cutoff) pre = std::max(pre, std::abs(tr.v3[i]));
        }
        CHECK(pre < 1e-3 * peak);
    }
    SUBCASE("Parseval identity of the synthesis") {
        // reproduce the synthesis sum on a full period and compare energies
        const double tmax = 0.35;
        const double df = 1.0 / (2.0 * tmax);
        const double fmax = 8.0 * w.f0;
        const int M = static_cast<int>(std::floor(fmax / df));
        const int n = 8192;
        const double period = 1.0 / df;
        std::vector<cplx> coef(M + 1, 0.0);
        for (int m = 1; m <= M; ++m) {
            const double f = m * df;
            double taper = 1.0;
            if (f > 0.5 * fmax) taper = 0.5 * (1.0 + std::cos(M_PI * (f - 0.5 * fmax) / (0.5 * fmax)));
            cplx u1, u3;
            greens_frequency(setup, 2 * M_PI * f, u1, u3);
            coef[m] = taper * u3 * gauss_cosine_spectrum(2 * M_PI * f, w.f0, w.t0) *
                      cplx(0, 2 * M_PI * f);
        }
        double et = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = period * i / n;
            double v = 0.0;
            for (int m = 1; m <= M; ++m)
                v += 2.0 * df * (coef[m] * std::exp(cplx(0, 2 * M_PI * m * df * t))).real();
            et += v * v * (period / n);
        }
        double ef = 0.0;
        for (int m = 1; m <= M; ++m) ef += 2.0 * df * std::norm(coef[m]);
        CHECK(et == doctest::Approx(ef).epsilon(1e-8));
    }
    SUBCASE("short time grid rejected") {
        std::vector<double> tooshort{0.0, 0.005, 0.01};
        CHECK_THROWS_AS(greens_trace(setup, w, tooshort), std::invalid_argument);
    }
}
