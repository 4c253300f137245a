#include "vdg/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vdg {

Eigen::Matrix<std::complex<double>, 8, 8> plane_wave_matrix(const ViscoCoefficients& c,
                                                            double kx, double kz) {
    using Mat8 = Eigen::Matrix<double, 8, 8>;
    Mat8 P = Mat8::Zero();  // dq/dt = P dq/dx + R dq/dz + D q
    Mat8 R = Mat8::Zero();
    Mat8 D = Mat8::Zero();
    const double c11 = c.Cp2(0, 0), c13 = c.Cp2(0, 1), c33 = c.Cp2(1, 1), c55 = c.Cp2(2, 2);
    P(S11, V1) = c11;
    P(S33, V1) = c13;
    P(S13, V3) = c55;
    P(A1, V1) = c.T1;
    P(A2, V1) = 0.5 * c.T2;
    P(A5, V3) = c.T2;
    P(V1, S11) = 1.0 / c.rho;
    P(V3, S13) = 1.0 / c.rho;
    R(S11, V3) = c13;
    R(S33, V3) = c33;
    R(S13, V1) = c55;
    R(A1, V3) = c.T1;
    R(A2, V3) = -0.5 * c.T2;
    R(A5, V1) = c.T2;
    R(V1, S13) = 1.0 / c.rho;
    R(V3, S33) = 1.0 / c.rho;
    D(S11, A1) = c.K;
    D(S11, A2) = 2.0 * c.G;
    D(S33, A1) = c.K;
    D(S33, A2) = -2.0 * c.G;
    D(S13, A5) = c55;
    D(A1, A1) = -1.0 / c.tau_sig1;
    D(A2, A2) = -1.0 / c.tau_sig2;
    D(A5, A5) = -1.0 / c.tau_sig2;
    // omega q = (A kx + C kz - iD) q with A = -P, C = -R.
    const std::complex<double> i(0.0, 1.0);
    return (-(kx * P + kz * R)).cast<std::complex<double>>() - i * D.cast<std::complex<double>>();
}

// Impedance/strain scaling that puts all state components on the particle
// velocity scale; without it the SI-unit eigenproblem spans 14 orders of
// magnitude and the eigensolver's backward error swamps the residual check.
static Eigen::Matrix<double, 8, 1> balance_diag(const ViscoCoefficients& c) {
    const double z = std::sqrt(c.Cp2(0, 0) * c.rho);
    const double cv = std::sqrt(c.Cp2(0, 0) / c.rho);
    Eigen::Matrix<double, 8, 1> d;
    d << z, z, z, 1.0 / cv, 1.0 / cv, 1.0 / cv, 1.0, 1.0;
    return d;
}

PlaneWaveSolution plane_wave_modes(const MaterialSpec& mat, double kx, double kz) {
    if (kx == 0.0 && kz == 0.0)
        throw std::invalid_argument("plane_wave_modes: wave vector must be nonzero");
    PlaneWaveSolution sol;
    sol.k << kx, kz;
    sol.coeffs = derive_visco_coefficients(mat);
    const auto Mraw = plane_wave_matrix(sol.coeffs, kx, kz);
    const Eigen::Matrix<double, 8, 1> d = balance_diag(sol.coeffs);
    Eigen::Matrix<std::complex<double>, 8, 8> M = Mraw;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) M(i, j) = Mraw(i, j) * d(j) / d(i);
    Eigen::ComplexEigenSolver<Eigen::Matrix<std::complex<double>, 8, 8>> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("plane_wave_modes: eigenproblem failed");
    // forward-propagating modes: two largest real parts
    std::array<int, 8> idx{0, 1, 2, 3, 4, 5, 6, 7};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return es.eigenvalues()(a).real() > es.eigenvalues()(b).real();
    });
    const double split = 1e-8 * es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues()(idx[0]).real() < split || es.eigenvalues()(idx[1]).real() < split)
        throw std::runtime_error("plane_wave_modes: degenerate propagating modes");
    for (int l = 0; l < 2; ++l) {
        sol.omega[l] = es.eigenvalues()(idx[l]);
        Eigen::Matrix<std::complex<double>, 8, 1> v = es.eigenvectors().col(idx[l]);
        for (int f = 0; f < 8; ++f) v(f) *= d(f);  // undo the balancing
        std::complex<double> ref = v(l);  // gamma_1^(1) = gamma_2^(2) = 1
        if (std::abs(ref) < 1e-8 * v.norm()) {
            // degenerate for axis-aligned wave vectors; fall back to the
            // largest component (lowest index on near-ties)
            int best = 0;
            for (int f = 1; f < 8; ++f)
                if (std::abs(v(f)) > std::abs(v(best)) * (1.0 + 1e-12)) best = f;
            ref = v(best);
        }
        sol.mode[l] = v / ref;
    }
    return sol;
}

double PlaneWaveSolution::dispersion_residual() const {
    // measured on the balanced system, the scale-invariant form of the check
    const auto Mraw = plane_wave_matrix(coeffs, k(0), k(1));
    const Eigen::Matrix<double, 8, 1> d = balance_diag(coeffs);
    double worst = 0.0;
    for (int l = 0; l < 2; ++l) {
        Eigen::Matrix<std::complex<double>, 8, 1> v = mode[l];
        for (int f = 0; f < 8; ++f) v(f) /= d(f);
        Eigen::Matrix<std::complex<double>, 8, 1> r = -omega[l] * v;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) r(i) += Mraw(i, j) * d(j) / d(i) * v(j);
        worst = std::max(worst, r.norm() / (std::abs(omega[l]) * v.norm()));
    }
    return worst;
}

void plane_wave_field_physical(const PlaneWaveSolution& sol, double x, double z, double t,
                               Eigen::Matrix<double, 8, 1>& q) {
    const std::complex<double> i(0.0, 1.0);
    q.setZero();
    for (int l = 0; l < 2; ++l) {
        const auto ph = std::exp(i * (sol.omega[l] * t - sol.k(0) * x - sol.k(1) * z));
        for (int f = 0; f < 8; ++f) q(f) += (ph * sol.mode[l](f)).real();
    }
}

void plane_wave_field(const PlaneWaveSolution& sol, double x, double z, double t,
                      Eigen::Matrix<double, 8, 1>& q) {
    const std::complex<double> i(0.0, 1.0);
    q.setZero();
    const auto& c = sol.coeffs;
    for (int l = 0; l < 2; ++l) {
        const auto ph = std::exp(i * (sol.omega[l] * t - sol.k(0) * x - sol.k(1) * z));
        Eigen::Matrix<std::complex<double>, 8, 1> v = sol.mode[l];
        const Eigen::Vector3cd sig = v.head<3>();
        const Eigen::Vector3cd e = v.segment<3>(A1);
        v.segment<3>(A1) = c.L.cast<std::complex<double>>() * e -
                           c.z_rows.cast<std::complex<double>>() * sig;
        for (int f = 0; f < 8; ++f) q(f) += (ph * v(f)).real();
    }
}

ExactSolution plane_wave_exact(const PlaneWaveSolution& sol) {
    return [sol](double x, double z, double t, Eigen::Matrix<double, 8, 1>& q) {
        plane_wave_field(sol, x, z, t, q);
    };
}

Eigen::MatrixXd assemble_global_operator(const DGSystem& sys, int max_dofs) {
    const int n = sys.num_dofs();
    if (n > max_dofs)
        throw std::invalid_argument("assemble_global_operator: " + std::to_string(n) +
                                    " unknowns exceed the dense-assembly guard of " +
                                    std::to_string(max_dofs));
    Eigen::MatrixXd A(n, n);
    StateVector q = sys.make_state();
    StateVector dq = sys.make_state();
    for (int j = 0; j < n; ++j) {
        q.data.setZero();
        q.data(j % q.data.rows(), j / q.data.rows()) = 1.0;
        sys.rhs(q, 0.0, dq);
        A.col(j) = Eigen::Map<const Eigen::VectorXd>(dq.data.data(), n);
    }
    return A;
}

Eigen::VectorXcd operator_spectrum(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("operator_spectrum: eigensolver failed");
    return es.eigenvalues();
}

SpectrumSummary summarize_spectrum(const Eigen::VectorXcd& eigs) {
    SpectrumSummary s;
    s.max_real = eigs.real().maxCoeff();
    s.spectral_radius = eigs.cwiseAbs().maxCoeff();
    return s;
}

}  // namespace vdg
