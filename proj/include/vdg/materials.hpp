#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace vdg {

/// Raw material description: unrelaxed stiffnesses, density and the
/// relaxation-time pairs of the four dissipation modes (mode 1 dilatational,
/// modes 2..4 shear).  All quantities in SI units.
struct MaterialSpec {
    double rho = 0.0;  // kg/m^3
    // Orthorhombic stiffness entries (Pa), Voigt notation.
    double c11 = 0, c12 = 0, c13 = 0, c22 = 0, c23 = 0, c33 = 0;
    double c44 = 0, c55 = 0, c66 = 0;
    std::array<double, 4> tau_eps{};  // s
    std::array<double, 4> tau_sig{};  // s

    // Throws std::invalid_argument on rho <= 0, non-positive-definite
    // stiffness or invalid relaxation times (requires tau_eps >= tau_sig > 0).
    void validate() const;

    // 6x6 stiffness (orthorhombic pattern) and its upper-left 3x3 block.
    Eigen::Matrix<double, 6, 6> stiffness6() const;
    Eigen::Matrix3d stiffness3() const;

    // Copy with tau_eps := tau_sig (no dissipation).
    MaterialSpec elastic_limit() const;

    // Copy with an exactly isotropic stiffness built from lambda = c12 and
    // mu = (c11 - c12)/2; keeps density and relaxation times.  Used by the
    // analytic point-source comparison, which assumes isotropy.
    MaterialSpec isotropized() const;

    bool is_elastic() const;

    static MaterialSpec preset(std::string_view name);
    static std::vector<std::string> preset_names();
};

/// Single-mechanism Zener relaxation, normalized so the unrelaxed response
/// is 1: chi(0) = 1, M(inf) = 1, M(0) = chi(inf) = tau_sig/tau_eps.
struct RelaxationModel {
    double tau_eps = 1.0;
    double tau_sig = 1.0;

    double chi(double t) const;                        // 0 for t < 0
    double chi_dot(double t) const;
    double phi0() const;                               // chi_dot(0+)
    std::complex<double> modulus(double omega) const;  // M(omega)
};

/// Everything the solver needs, derived once per material.  The memory
/// variables are stored in scaled form a = L (e - Zp sigma), where L is the
/// Cholesky factor of the memory energy metric; with that scaling the block
/// matrix S below has a negative semi-definite symmetric part and the plain
/// quadratic form (Qs_inv sigma, sigma) + |a|^2 + rho|v|^2 is dissipated.
struct ViscoCoefficients {
    double rho = 0.0;
    double K = 0, G = 0, D = 0;  // Pa
    double T1 = 0, T2 = 0;       // 1/s (non-positive)
    double tau_sig1 = 0, tau_sig2 = 0, tau_eps1 = 0, tau_eps2 = 0;

    Eigen::Matrix3d Cp2;      // 2D stress stiffness [[c11,c13,0],[c13,c33,0],[0,0,c55]]
    Eigen::Matrix3d Cp2_inv;

    // 3x3 compliance of the full stiffness block (Appendix-style r_ij).
    Eigen::Matrix3d r3;
    double d1 = 0, d2 = 0;  // r11+r12+r13, r33+2*r13

    Eigen::Matrix3d Zp;        // physical z-map: e = a_phys + Zp sigma
    Eigen::Matrix3d Wp;        // physical decay: da_phys/dt = -Wp e
    Eigen::Matrix3d L, Linv;   // memory scaling, identity in the elastic limit
    Eigen::Matrix3d z_rows;    // L * Zp: state-space z-map

    Eigen::Matrix3d g11, g12, g21, g22;    // blocks of G (scaled variables)
    Eigen::Matrix<double, 6, 6> Qs, Qs_inv, S, Gblk;

    double lambda_max = 0.0;  // largest unrelaxed phase speed, m/s

    bool elastic = false;

    // e = Linv * (a + z_rows * sigma); inverse of memory_from_physical.
    Eigen::Vector3d memory_to_physical(const Eigen::Vector3d& a,
                                       const Eigen::Vector3d& sigma) const;
    Eigen::Vector3d memory_from_physical(const Eigen::Vector3d& e,
                                         const Eigen::Vector3d& sigma) const;
};

// Eq-9 moduli: D = (c11+c22+c33)/3, G = (c44+c55+c66)/3, K = D - 4G/3.
void derive_moduli(const MaterialSpec& spec, double& K, double& G, double& D);

// Numeric inverse of the 3x3 stiffness block; throws std::invalid_argument
// with a condition-number diagnostic when the block is near singular.
Eigen::Matrix3d compliance_inverse(const MaterialSpec& spec);

ViscoCoefficients derive_visco_coefficients(const MaterialSpec& spec);

// Largest unrelaxed phase speed over the propagation directions
// x, z and (x+z)/sqrt(2) of the plane Christoffel problem.
double characteristic_speed(const MaterialSpec& spec);

// 2D Christoffel matrix for unit direction (n1, n3).
Eigen::Matrix2d christoffel(const MaterialSpec& spec, double n1, double n3);

}  // namespace vdg
