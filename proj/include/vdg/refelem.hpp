#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace vdg {

/// Degree-N nodal operators on the reference triangle with vertices
/// (-1,-1), (1,-1), (-1,1).  Nodes are Warp & Blend points; the modal basis
/// is the orthonormal Koornwinder-Dubiner basis, so the mass matrix is
/// (V V^T)^{-1} in closed form.
///
/// Faces: 0: s = -1 (v1->v2), 1: r + s = 0 (v2->v3), 2: r = -1 (v3->v1).
/// Face mass matrices integrate over the reference face arc, so
/// ones^T * Mf * ones equals the reference face length (2, 2*sqrt(2), 2).
struct ReferenceOperators {
    int N = 0;
    int Np = 0;
    int Nfp = 0;
    Eigen::VectorXd r, s;
    Eigen::MatrixXd V, Vinv;
    Eigen::MatrixXd Dr, Ds;        // nodal differentiation
    Eigen::MatrixXd Sr, Ss;        // weak form: M * D
    Eigen::MatrixXd M, Minv;
    std::array<std::vector<int>, 3> fmask;       // face node indices, ordered along the face
    std::array<Eigen::MatrixXd, 3> Mf;           // Nfp x Nfp reference face mass
    std::array<Eigen::MatrixXd, 3> lift;         // Np x Nfp, Minv * Mf scattered to faces

    static constexpr int max_degree = 8;

    // Polynomial evaluation of nodal data at a reference point.
    double interpolate(const Eigen::VectorXd& nodal, double rp, double sp) const;

    // Row vector w with w . nodal == value at (rp, sp).
    Eigen::RowVectorXd interpolation_row(double rp, double sp) const;
};

ReferenceOperators build_reference(int N);

// Orthonormal modal basis evaluated at given points; column j = mode j.
Eigen::MatrixXd vandermonde(int N, const Eigen::VectorXd& r, const Eigen::VectorXd& s);
void grad_vandermonde(int N, const Eigen::VectorXd& r, const Eigen::VectorXd& s,
                      Eigen::MatrixXd& Vr, Eigen::MatrixXd& Vs);

// Warp & Blend interpolation nodes.
void warp_blend_nodes(int N, Eigen::VectorXd& r, Eigen::VectorXd& s);

// Normalized Jacobi polynomial P_n^{a,b} and its derivative.
Eigen::VectorXd jacobi_poly(const Eigen::VectorXd& x, double a, double b, int n);
Eigen::VectorXd grad_jacobi_poly(const Eigen::VectorXd& x, double a, double b, int n);

// Tensorized quadrature on the reference triangle exact for total degree
// >= 2*npts - 2 in each collapsed direction; used as an integration oracle
// and for error norms.
struct TriQuadrature {
    Eigen::VectorXd r, s, w;  // sum(w) = 2 (reference area)
};
TriQuadrature triangle_quadrature(int npts);

}  // namespace vdg
