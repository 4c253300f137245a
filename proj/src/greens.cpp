#include "vdg/greens.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vdg {

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209;

// digamma(n+1) = -gamma + H_n
double psi_int(int n) {
    double h = 0.0;
    for (int m = 1; m <= n; ++m) h += 1.0 / m;
    return -euler_gamma + h;
}

cplx j_series(cplx z, int nu) {
    const cplx q = -0.25 * z * z;
    cplx term = (nu == 0) ? cplx(1.0) : 0.5 * z;
    cplx sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

cplx y0_series(cplx z) {
    // A&S 9.1.13: Y0 = (2/pi)[ln(z/2) J0(z) + sum (-1)^{k+1} H_k (z^2/4)^k / (k!)^2]
    const cplx q = 0.25 * z * z;
    cplx term(1.0);
    cplx sum(0.0);
    double hk = 0.0;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        const cplx add = ((k % 2) ? 1.0 : -1.0) * hk * term;
        sum += add;
        if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    return (2.0 / M_PI) * ((std::log(0.5 * z) + euler_gamma) * j_series(z, 0) + sum);
}

cplx y1_series(cplx z) {
    // A&S 9.1.11 for n = 1.
    const cplx q = -0.25 * z * z;
    cplx term = 0.5 * z;  // k = 0 term of (z/2)^{2k+1} / (k!(k+1)!)
    cplx sum = (psi_int(0) + psi_int(1)) * term;
    cplx t = term;
    for (int k = 1; k < 80; ++k) {
        t *= q / (static_cast<double>(k) * (k + 1));
        const cplx add = (psi_int(k) + psi_int(k + 1)) * t;
        sum += add;
        if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    return (2.0 / M_PI) * std::log(0.5 * z) * j_series(z, 1) - (2.0 / M_PI) / z -
           (1.0 / M_PI) * sum;
}

// H2(z) ~ sqrt(2/(pi z)) exp(-i chi) sum_k (-i)^k a_k(nu) / z^k with
// a_k = (4nu^2-1)(4nu^2-9)...(4nu^2-(2k-1)^2) / (k! 8^k), chi = z - nu pi/2 - pi/4.
cplx hankel2_asym(cplx z, int nu) {
    const double mu = 4.0 * nu * nu;
    const cplx i(0.0, 1.0);
    cplx term(1.0);
    cplx sum(1.0);
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 20; ++k) {
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k) * (-i) / z;
        const double mag = std::abs(term);
        if (mag > prev) break;  // divergent tail of the asymptotic series
        sum += term;
        prev = mag;
        if (mag < 1e-17) break;
    }
    const cplx chi = z - 0.5 * nu * M_PI - 0.25 * M_PI;
    return std::sqrt(2.0 / (M_PI * z)) * sum * std::exp(-i * chi);
}

constexpr double series_switch = 12.0;

}  // namespace

cplx bessel_j0(cplx z) {
    if (std::abs(z) <= series_switch) return j_series(z, 0);
    const cplx h2 = hankel2_asym(z, 0);
    const cplx h1 = std::conj(hankel2_asym(std::conj(z), 0));
    return 0.5 * (h1 + h2);
}

cplx bessel_j1(cplx z) {
    if (std::abs(z) <= series_switch) return j_series(z, 1);
    const cplx h2 = hankel2_asym(z, 1);
    const cplx h1 = std::conj(hankel2_asym(std::conj(z), 1));
    return 0.5 * (h1 + h2);
}

cplx bessel_y0(cplx z) {
    if (std::abs(z) <= series_switch) return y0_series(z);
    const cplx i(0.0, 1.0);
    return i * (hankel2_asym(z, 0) - bessel_j0(z));  // H2 = J - iY
}

cplx bessel_y1(cplx z) {
    if (std::abs(z) <= series_switch) return y1_series(z);
    const cplx i(0.0, 1.0);
    return i * (hankel2_asym(z, 1) - bessel_j1(z));
}

cplx hankel2_0(cplx z) {
    if (std::abs(z) <= series_switch) return j_series(z, 0) - cplx(0.0, 1.0) * y0_series(z);
    return hankel2_asym(z, 0);
}

cplx hankel2_1(cplx z) {
    if (std::abs(z) <= series_switch) return j_series(z, 1) - cplx(0.0, 1.0) * y1_series(z);
    return hankel2_asym(z, 1);
}

void complex_velocities(const MaterialSpec& mat, double omega, VelocityModel model, cplx& cp,
                        cplx& cs) {
    const cplx M1 = RelaxationModel{mat.tau_eps[0], mat.tau_sig[0]}.modulus(omega);
    const cplx M2 = RelaxationModel{mat.tau_eps[1], mat.tau_sig[1]}.modulus(omega);
    cplx Ep, Es;
    switch (model) {
        case VelocityModel::consistent: {
            double K, G, D;
            derive_moduli(mat, K, G, D);
            Ep = mat.c11 + K * (M1 - 1.0) + G * (M2 - 1.0);
            Es = mat.c55 * M2;
            break;
        }
        case VelocityModel::printed:
            Ep = (mat.c11 + mat.c33) * M1 + mat.c33 * M2;
            Es = mat.c33 * M2;
            break;
        case VelocityModel::lame: {
            const double lam = mat.c13, mu = mat.c55;
            Ep = (lam + mu) * M1 + mu * M2;
            Es = mu * M2;
            break;
        }
    }
    cp = std::sqrt(Ep / mat.rho);
    cs = std::sqrt(Es / mat.rho);
}

void greens_frequency(const GreensSetup& setup, double omega, cplx& u1, cplx& u3) {
    if (omega == 0.0) {
        u1 = u3 = 0.0;  // Hankel functions are singular at zero frequency
        return;
    }
    const double x = setup.x, z = setup.z;
    const double r = std::hypot(x, z);
    if (r <= 0.0) throw std::invalid_argument("greens_frequency: receiver at the source point");
    const bool negative = omega < 0.0;
    const double w = std::abs(omega);
    cplx cp, cs;
    complex_velocities(setup.material, w, setup.model, cp, cs);
    const cplx i(0.0, 1.0);
    const cplx zp = w * r / cp, zs = w * r / cs;
    const cplx G1 = -0.5 * i * M_PI *
                    (hankel2_0(zp) / (cp * cp) + hankel2_1(zs) / (w * r * cs) -
                     hankel2_1(zp) / (w * r * cp));
    const cplx G3 = 0.5 * i * M_PI *
                    (hankel2_0(zs) / (cs * cs) - hankel2_1(zs) / (w * r * cs) +
                     hankel2_1(zp) / (w * r * cp));
    const double pre = setup.F0 / (2.0 * M_PI * setup.material.rho);
    u1 = pre * (x * z / (r * r)) * (G1 + G3);
    u3 = pre * (1.0 / (r * r)) * (z * z * G1 - x * x * G3);
    if (negative) {  // u(-w) = conj(u(w))
        u1 = std::conj(u1);
        u3 = std::conj(u3);
    }
}

GreensTrace greens_trace(const GreensSetup& setup, const SourceSpec& wavelet,
                         const std::vector<double>& times) {
    if (wavelet.kind != WaveletKind::gauss_cosine)
        throw std::invalid_argument("greens_trace: analytic spectrum requires gauss_cosine");
    if (times.empty()) throw std::invalid_argument("greens_trace: empty time grid");
    const double tmax = times.back();
    const double support = wavelet.t0 + 8.0 / (M_PI * wavelet.f0);
    if (tmax < support)
        throw std::invalid_argument("greens_trace: time grid shorter than the wavelet support");
    const double df = 1.0 / (2.0 * tmax);
    const double fmax = 8.0 * wavelet.f0;
    const int M = static_cast<int>(std::floor(fmax / df));
    const double taper_start = 0.5 * fmax;

    GreensTrace tr;
    tr.t = times;
    tr.v1.assign(times.size(), 0.0);
    tr.v3.assign(times.size(), 0.0);
    const cplx i(0.0, 1.0);
    for (int m = 1; m <= M; ++m) {
        const double f = m * df;
        const double omega = 2.0 * M_PI * f;
        double taper = 1.0;
        if (f > taper_start)
            taper = 0.5 * (1.0 + std::cos(M_PI * (f - taper_start) / (fmax - taper_start)));
        cplx u1, u3;
        greens_frequency(setup, omega, u1, u3);
        const cplx F = gauss_cosine_spectrum(omega, wavelet.f0, wavelet.t0) * wavelet.amplitude;
        const cplx V1c = taper * u1 * F * (i * omega);
        const cplx V3c = taper * u3 * F * (i * omega);
        for (size_t n = 0; n < times.size(); ++n) {
            const cplx ph = std::exp(i * omega * times[n]);
            tr.v1[n] += 2.0 * df * (V1c * ph).real();
            tr.v3[n] += 2.0 * df * (V3c * ph).real();
        }
    }
    return tr;
}

namespace {

// int_{tau}^{t} g(s) wdot(t - s) ds for the three impulse-response pieces.
// Inverse square-root singularities at s = tau are removed by s = tau + u^2.
template <typename G>
double convolve_front(double tau, double t, const G& g, const SourceSpec& w) {
    if (t <= tau) return 0.0;
    const double umax = std::sqrt(t - tau);
    const int panels = 64;
    // 8-point Gauss-Legendre on [0,1]
    static const double gx[8] = {0.019855071751231884, 0.10166676129318664,
                                 0.2372337950418355,  0.40828267875217505,
                                 0.59171732124782495, 0.7627662049581645,
                                 0.89833323870681336, 0.98014492824876812};
    static const double gw[8] = {0.05061426814518813, 0.11119051722668724,
                                 0.15685332293894364, 0.18134189168918099,
                                 0.18134189168918099, 0.15685332293894364,
                                 0.11119051722668724, 0.05061426814518813};
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = umax * p / panels, b = umax * (p + 1) / panels;
        for (int q = 0; q < 8; ++q) {
            const double u = a + (b - a) * gx[q];
            const double s = tau + u * u;
            acc += (b - a) * gw[q] * 2.0 * u * g(s) * w.derivative(t - s);
        }
    }
    return acc;
}

}  // namespace

GreensTrace eason_elastic_trace(const GreensSetup& setup, const SourceSpec& wavelet,
                                const std::vector<double>& times) {
    const MaterialSpec mat = setup.material.elastic_limit();
    cplx cpz, csz;
    complex_velocities(mat, 1.0, setup.model, cpz, csz);
    if (std::abs(cpz.imag()) > 1e-10 * std::abs(cpz.real()))
        throw std::logic_error("eason_elastic_trace: velocities not real in the elastic limit");
    const double cp = cpz.real(), cs = csz.real();
    const double x = setup.x, z = setup.z;
    const double r = std::hypot(x, z);
    const double tp = r / cp, ts = r / cs;
    const double pre = setup.F0 / (2.0 * M_PI * mat.rho);

    // G1 = (1/cp^2)(t^2-tp^2)^{-1/2} H(t-tp) + (1/r^2)(t^2-tp^2)^{1/2} H(t-tp)
    //     - (1/r^2)(t^2-ts^2)^{1/2} H(t-ts)
    // G3 = -(1/cs^2)(t^2-ts^2)^{-1/2} H(t-ts) + same tail terms.
    auto inv_p = [&](double s) { return 1.0 / (cp * cp * std::sqrt(s * s - tp * tp)); };
    auto inv_s = [&](double s) { return 1.0 / (cs * cs * std::sqrt(s * s - ts * ts)); };
    auto tail_p = [&](double s) { return std::sqrt(s * s - tp * tp) / (r * r); };
    auto tail_s = [&](double s) { return std::sqrt(s * s - ts * ts) / (r * r); };

    GreensTrace tr;
    tr.t = times;
    tr.v1.resize(times.size());
    tr.v3.resize(times.size());
    for (size_t n = 0; n < times.size(); ++n) {
        const double t = times[n];
        const double ip = convolve_front(tp, t, inv_p, wavelet);
        const double is = convolve_front(ts, t, inv_s, wavelet);
        const double qp = convolve_front(tp, t, tail_p, wavelet);
        const double qs = convolve_front(ts, t, tail_s, wavelet);
        const double g1 = ip + qp - qs;
        const double g3 = -is + qp - qs;
        tr.v1[n] = pre * (x * z / (r * r)) * (g1 + g3);
        tr.v3[n] = pre * (1.0 / (r * r)) * (z * z * g1 - x * x * g3);
    }
    return tr;
}

}  // namespace vdg
