#pragma once

#include <complex>
#include <vector>

#include "vdg/materials.hpp"
#include "vdg/source.hpp"

namespace vdg {

using cplx = std::complex<double>;

// Bessel/Hankel functions of order 0 and 1 for complex argument with
// Re z > 0; power series below |z| = 12, Hankel asymptotics above.
cplx bessel_j0(cplx z);
cplx bessel_j1(cplx z);
cplx bessel_y0(cplx z);
cplx bessel_y1(cplx z);
cplx hankel2_0(cplx z);
cplx hankel2_1(cplx z);

/// Which complex-velocity model feeds the frequency-domain solution.
///   consistent: exactly the moduli the memory-variable system carries,
///               cp^2 = (c11 + K(M1-1) + G(M2-1))/rho, cs^2 = c55 M2 / rho;
///   printed:    cp^2 = ((c11+c33) M1 + c33 M2)/rho, cs^2 = c33 M2 / rho;
///   lame:       cp^2 = ((lam+mu) M1 + mu M2)/rho with lam = c13, mu = c55.
enum class VelocityModel { consistent, printed, lame };

struct GreensSetup {
    MaterialSpec material;
    double F0 = 1.0;          // N, point force along +z
    double x = 0.0, z = 0.0;  // receiver offset from the source, m
    VelocityModel model = VelocityModel::consistent;
};

// Complex phase velocities at angular frequency omega.
void complex_velocities(const MaterialSpec& mat, double omega, VelocityModel model, cplx& cp,
                        cplx& cs);

// Frequency-domain displacements (u1, u3) for the impulsive point force;
// returns zeros at omega = 0 where the Hankel functions are singular.
void greens_frequency(const GreensSetup& setup, double omega, cplx& u1, cplx& u3);

struct GreensTrace {
    std::vector<double> t;
    std::vector<double> v1, v3;  // particle velocities
};

/// Synthesizes particle-velocity traces by multiplying the frequency-domain
/// Green's function with the wavelet spectrum and i*omega, then inverse
/// transforming with Hermitian symmetry.  Frequencies run to 8*f0 in steps of
/// 1/(2*t_max) with a cosine taper over the top octave.
GreensTrace greens_trace(const GreensSetup& setup, const SourceSpec& wavelet,
                         const std::vector<double>& times);

// Independent elastic oracle: time-domain Eason convolution of the impulse
// response with the wavelet derivative (no Hankel functions involved).
GreensTrace eason_elastic_trace(const GreensSetup& setup, const SourceSpec& wavelet,
                                const std::vector<double>& times);

}  // namespace vdg
