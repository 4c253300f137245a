#include "vdg/materials.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vdg {

void MaterialSpec::validate() const {
    if (!(rho > 0.0))
        throw std::invalid_argument("material: density must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(stiffness6());
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("material: stiffness matrix is not positive definite");
    for (int nu = 0; nu < 4; ++nu) {
        if (!(tau_sig[nu] > 0.0))
            throw std::invalid_argument("material: tau_sig must be positive (mode " +
                                        std::to_string(nu + 1) + ")");
        if (tau_eps[nu] < tau_sig[nu])
            throw std::invalid_argument("material: requires tau_eps >= tau_sig (mode " +
                                        std::to_string(nu + 1) + ")");
    }
}

Eigen::Matrix<double, 6, 6> MaterialSpec::stiffness6() const {
    Eigen::Matrix<double, 6, 6> C = Eigen::Matrix<double, 6, 6>::Zero();
    C(0, 0) = c11; C(0, 1) = c12; C(0, 2) = c13;
    C(1, 0) = c12; C(1, 1) = c22; C(1, 2) = c23;
    C(2, 0) = c13; C(2, 1) = c23; C(2, 2) = c33;
    C(3, 3) = c44; C(4, 4) = c55; C(5, 5) = c66;
    return C;
}

Eigen::Matrix3d MaterialSpec::stiffness3() const {
    Eigen::Matrix3d C;
    C << c11, c12, c13,
         c12, c22, c23,
         c13, c23, c33;
    return C;
}

MaterialSpec MaterialSpec::elastic_limit() const {
    MaterialSpec m = *this;
    m.tau_eps = m.tau_sig;
    return m;
}

MaterialSpec MaterialSpec::isotropized() const {
    MaterialSpec m = *this;
    const double lambda = c12;
    const double mu = 0.5 * (c11 - c12);
    if (!(mu > 0.0))
        throw std::invalid_argument("material: isotropization needs c11 > c12");
    m.c11 = m.c22 = m.c33 = lambda + 2.0 * mu;
    m.c12 = m.c13 = m.c23 = lambda;
    m.c44 = m.c55 = m.c66 = mu;
    return m;
}

bool MaterialSpec::is_elastic() const {
    for (int nu = 0; nu < 4; ++nu)
        if (tau_eps[nu] != tau_sig[nu]) return false;
    return true;
}

MaterialSpec MaterialSpec::preset(std::string_view name) {
    MaterialSpec m;
    auto gpa = [](double v) { return v * 1e9; };
    if (name == "clay_shale") {
        m.rho = 2590.0;
        m.c11 = gpa(66.6); m.c12 = gpa(19.7); m.c13 = gpa(39.4);
        m.c22 = gpa(66.6); m.c23 = gpa(39.4); m.c33 = gpa(39.9);
        m.c44 = gpa(10.9); m.c55 = gpa(10.9); m.c66 = gpa(23.4);
        m.tau_eps = {8.00e-3, 8.00e-3, 8.00e-3, 8.00e-3};
        m.tau_sig = {7.49e-3, 7.25e-3, 7.25e-3, 7.25e-3};
    } else if (name == "phenolic") {
        m.rho = 1364.0;
        m.c11 = gpa(11.7); m.c12 = gpa(6.7); m.c13 = gpa(7.0);
        m.c22 = gpa(15.4); m.c23 = gpa(7.0); m.c33 = gpa(17.4);
        m.c44 = gpa(3.8);  m.c55 = gpa(3.5); m.c66 = gpa(3.1);
        m.tau_eps = {6.4e-3, 6.4e-3, 6.4e-3, 6.4e-3};
        m.tau_sig = {6.00e-3, 5.80e-3, 5.60e-3, 5.30e-3};
    } else if (name == "isotropic_sandstone") {
        m.rho = 2500.0;
        m.c11 = gpa(25.6); m.c12 = gpa(9.4); m.c13 = gpa(9.4);
        m.c22 = gpa(25.6); m.c23 = gpa(9.4); m.c33 = gpa(25.6);
        m.c44 = gpa(16.2); m.c55 = gpa(16.2); m.c66 = gpa(16.2);
        m.tau_eps = {3.72e-3, 3.78e-3, 3.78e-3, 3.78e-3};
        m.tau_sig = {3.36e-3, 3.30e-3, 3.30e-3, 3.30e-3};
    } else if (name == "sandstone_scaled") {
        // Nondimensionalized sandstone (stiffness/1e9, density/1e3, times/1e-3);
        // wave speeds come out O(1), used by the convergence and spectra studies.
        m.rho = 2.5;
        m.c11 = 25.6; m.c12 = 9.4; m.c13 = 9.4;
        m.c22 = 25.6; m.c23 = 9.4; m.c33 = 25.6;
        m.c44 = 16.2; m.c55 = 16.2; m.c66 = 16.2;
        m.tau_eps = {3.72, 3.78, 3.78, 3.78};
        m.tau_sig = {3.36, 3.30, 3.30, 3.30};
    } else {
        throw std::invalid_argument("unknown material preset: " + std::string(name));
    }
    m.validate();
    return m;
}

std::vector<std::string> MaterialSpec::preset_names() {
    return {"clay_shale", "phenolic", "isotropic_sandstone", "sandstone_scaled"};
}

double RelaxationModel::chi(double t) const {
    if (t < 0.0) return 0.0;
    const double r = tau_sig / tau_eps;
    return r * (1.0 - (1.0 - tau_eps / tau_sig) * std::exp(-t / tau_sig));
}

double RelaxationModel::chi_dot(double t) const {
    if (t < 0.0) return 0.0;
    const double r = tau_sig / tau_eps;
    return r * (1.0 - tau_eps / tau_sig) / tau_sig * std::exp(-t / tau_sig);
}

double RelaxationModel::phi0() const {
    return (1.0 / tau_sig) * (tau_sig / tau_eps - 1.0);
}

std::complex<double> RelaxationModel::modulus(double omega) const {
    const std::complex<double> i(0.0, 1.0);
    return (tau_sig / tau_eps) * (1.0 + i * omega * tau_eps) / (1.0 + i * omega * tau_sig);
}

void derive_moduli(const MaterialSpec& spec, double& K, double& G, double& D) {
    D = (spec.c11 + spec.c22 + spec.c33) / 3.0;
    G = (spec.c44 + spec.c55 + spec.c66) / 3.0;
    K = D - 4.0 * G / 3.0;
}

Eigen::Matrix3d compliance_inverse(const MaterialSpec& spec) {
    const Eigen::Matrix3d C = spec.stiffness3();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(C);
    const double cond = svd.singularValues()(0) / svd.singularValues()(2);
    if (!(svd.singularValues()(2) > 0.0) || cond > 1e12)
        throw std::invalid_argument(
            "material: 3x3 stiffness block is singular or ill-conditioned"
            " (condition number " + std::to_string(cond) + ")");
    return C.inverse();
}

Eigen::Matrix2d christoffel(const MaterialSpec& spec, double n1, double n3) {
    Eigen::Matrix2d g;
    g(0, 0) = spec.c11 * n1 * n1 + spec.c55 * n3 * n3;
    g(1, 1) = spec.c55 * n1 * n1 + spec.c33 * n3 * n3;
    g(0, 1) = g(1, 0) = (spec.c13 + spec.c55) * n1 * n3;
    return g;
}

double characteristic_speed(const MaterialSpec& spec) {
    const double s = 1.0 / std::sqrt(2.0);
    const double dirs[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {s, s}};
    double vmax = 0.0;
    for (auto& d : dirs) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(christoffel(spec, d[0], d[1]));
        vmax = std::max(vmax, std::sqrt(es.eigenvalues().maxCoeff() / spec.rho));
    }
    return vmax;
}

Eigen::Vector3d ViscoCoefficients::memory_to_physical(const Eigen::Vector3d& a,
                                                      const Eigen::Vector3d& sigma) const {
    return Linv * (a + z_rows * sigma);
}

Eigen::Vector3d ViscoCoefficients::memory_from_physical(const Eigen::Vector3d& e,
                                                        const Eigen::Vector3d& sigma) const {
    return L * e - z_rows * sigma;
}

ViscoCoefficients derive_visco_coefficients(const MaterialSpec& spec) {
    spec.validate();
    ViscoCoefficients c;
    c.rho = spec.rho;
    derive_moduli(spec, c.K, c.G, c.D);
    c.r3 = compliance_inverse(spec);
    c.d1 = c.r3(0, 0) + c.r3(0, 1) + c.r3(0, 2);
    c.d2 = c.r3(2, 2) + 2.0 * c.r3(0, 2);

    c.tau_eps1 = spec.tau_eps[0]; c.tau_sig1 = spec.tau_sig[0];
    c.tau_eps2 = spec.tau_eps[1]; c.tau_sig2 = spec.tau_sig[1];
    c.T1 = RelaxationModel{c.tau_eps1, c.tau_sig1}.phi0();
    c.T2 = RelaxationModel{c.tau_eps2, c.tau_sig2}.phi0();

    c.Cp2 << spec.c11, spec.c13, 0.0,
             spec.c13, spec.c33, 0.0,
             0.0, 0.0, spec.c55;
    c.Cp2_inv = c.Cp2.inverse();
    const double r11 = c.Cp2_inv(0, 0), r13 = c.Cp2_inv(0, 1), r33 = c.Cp2_inv(1, 1);
    const double e1 = r11 + r13;  // in-plane compliance sums
    const double e2 = r13 + r33;

    // Physical z-map and decay couplings of the in-plane reduction:
    //   e1: dilatation, mode 1;  e2: deviatoric (n = 2 split), mode 2;
    //   e5: 13-shear, mode 2.
    Eigen::Matrix3d Zp = Eigen::Matrix3d::Zero();
    Zp(0, 0) = c.T1 * e1;                    Zp(0, 1) = c.T1 * e2;
    Zp(1, 0) = 0.5 * c.T2 * (r11 - r13);     Zp(1, 1) = 0.5 * c.T2 * (r13 - r33);
    Zp(2, 2) = c.T2 / spec.c55;

    Eigen::Matrix3d Wp = Eigen::Matrix3d::Zero();
    Wp(0, 0) = c.T1 * c.K * (e1 + e2) + 1.0 / c.tau_sig1;
    Wp(0, 1) = 2.0 * c.G * c.T1 * (e1 - e2);
    Wp(1, 0) = 0.5 * c.T2 * c.K * (r11 - r33);
    Wp(1, 1) = c.G * c.T2 * (r11 - 2.0 * r13 + r33) + 1.0 / c.tau_sig2;
    Wp(2, 2) = c.T2 + 1.0 / c.tau_sig2;  // = 1/tau_eps2

    Eigen::Matrix3d g12p;
    g12p << c.K, 2.0 * c.G, 0.0,
            c.K, -2.0 * c.G, 0.0,
            0.0, 0.0, spec.c55;

    c.Zp = Zp;
    c.Wp = Wp;
    c.elastic = spec.is_elastic();

    // Memory energy metric Hm solving Zp^T Hm Wp = -Cp2_inv g12p; it removes
    // the stress/memory cross terms from the energy rate, leaving a
    // dissipation form in the memory variables alone.
    if (c.elastic) {
        c.L = Eigen::Matrix3d::Identity();
    } else {
        const double scale = std::max(std::abs(c.T1), std::abs(c.T2));
        if (std::min(std::abs(c.T1), std::abs(c.T2)) < 1e-12 * scale)
            throw std::invalid_argument(
                "material: mixed elastic/viscoelastic modes are not supported"
                " (either all tau_eps == tau_sig or none)");
        Eigen::Matrix3d Hm =
            -Zp.transpose().fullPivLu().solve(c.Cp2_inv * g12p * Wp.inverse());
        Hm = 0.5 * (Hm + Hm.transpose()).eval();
        Eigen::LLT<Eigen::Matrix3d> llt(Hm);
        if (llt.info() != Eigen::Success)
            throw std::invalid_argument("material: memory energy metric is not positive definite");
        c.L = llt.matrixU();
    }
    c.Linv = c.L.inverse();
    c.z_rows = c.L * Zp;

    c.g12 = g12p * c.Linv;
    c.g11 = g12p * Zp;
    c.g21 = -c.L * Wp * Zp;
    c.g22 = -c.L * Wp * c.Linv;

    c.Gblk.setZero();
    c.Gblk.topLeftCorner<3, 3>() = c.g11;
    c.Gblk.topRightCorner<3, 3>() = c.g12;
    c.Gblk.bottomLeftCorner<3, 3>() = c.g21;
    c.Gblk.bottomRightCorner<3, 3>() = c.g22;

    c.Qs.setZero();
    c.Qs.topLeftCorner<3, 3>() = c.Cp2;
    c.Qs.bottomRightCorner<3, 3>() = Eigen::Matrix3d::Identity();
    c.Qs_inv.setZero();
    c.Qs_inv.topLeftCorner<3, 3>() = c.Cp2_inv;
    c.Qs_inv.bottomRightCorner<3, 3>() = Eigen::Matrix3d::Identity();
    c.S = c.Qs_inv * c.Gblk;

    c.lambda_max = characteristic_speed(spec);
    return c;
}

}  // namespace vdg
