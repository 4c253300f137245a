#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "vdg/dg.hpp"
#include "vdg/materials.hpp"

namespace vdg {

/// Plane-wave eigenmodes of the physical-memory system
///   omega q0 = (A kx + C kz - i D) q0
/// in the state ordering [s11, s33, s13, e1, e2, e5, v1, v3].
struct PlaneWaveSolution {
    Eigen::Vector2d k;                                        // 1/m
    std::array<std::complex<double>, 2> omega;                // qP, qS
    std::array<Eigen::Matrix<std::complex<double>, 8, 1>, 2> mode;  // normalized eigenvectors
    ViscoCoefficients coeffs;

    // max over modes of ||M q0 - omega q0|| / ||q0||.
    double dispersion_residual() const;
};

// The 8x8 complex matrix A kx + C kz - i D of the physical-memory system.
Eigen::Matrix<std::complex<double>, 8, 8> plane_wave_matrix(const ViscoCoefficients& c,
                                                            double kx, double kz);

// Solves the eigenproblem and selects the two forward-propagating modes
// (largest Re omega), normalized so mode 1 has sigma11-component 1 and mode 2
// has sigma33-component 1.
PlaneWaveSolution plane_wave_modes(const MaterialSpec& mat, double kx, double kz);

// Superposition of both modes evaluated at (x, z, t), mapped to the solver
// state (memory components scaled, a = L(e - Zp sigma), per mode before
// taking the real part).
void plane_wave_field(const PlaneWaveSolution& sol, double x, double z, double t,
                      Eigen::Matrix<double, 8, 1>& q);

// Same but returning the physical-memory state [s, e, v].
void plane_wave_field_physical(const PlaneWaveSolution& sol, double x, double z, double t,
                               Eigen::Matrix<double, 8, 1>& q);

ExactSolution plane_wave_exact(const PlaneWaveSolution& sol);

/// Dense global operator A_h with rhs(q) = A_h q; columns assembled by
/// applying the rhs to unit states.  Guarded against large systems.
Eigen::MatrixXd assemble_global_operator(const DGSystem& sys, int max_dofs = 20000);

struct SpectrumSummary {
    double max_real = 0.0;
    double spectral_radius = 0.0;
};

Eigen::VectorXcd operator_spectrum(const Eigen::MatrixXd& A);
SpectrumSummary summarize_spectrum(const Eigen::VectorXcd& eigs);

}  // namespace vdg
