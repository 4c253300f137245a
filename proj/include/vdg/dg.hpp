#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "vdg/materials.hpp"
#include "vdg/mesh.hpp"
#include "vdg/refelem.hpp"

namespace vdg {

/// Field ordering of the 8-component state.
enum Field : int { S11 = 0, S33, S13, A1, A2, A5, V1, V3, NFIELDS };

/// Per-element nodal coefficients; column k holds element k's data as eight
/// contiguous blocks of Np values in Field order.
struct StateVector {
    int K = 0, Np = 0;
    double t = 0.0;
    Eigen::MatrixXd data;  // (8*Np) x K

    StateVector() = default;
    StateVector(int K_, int Np_) : K(K_), Np(Np_), data(Eigen::MatrixXd::Zero(8 * Np_, K_)) {}

    double* block(int k, int field) { return data.col(k).data() + field * Np; }
    const double* block(int k, int field) const { return data.col(k).data() + field * Np; }
    Eigen::Map<Eigen::VectorXd> field(int k, int f) {
        return Eigen::Map<Eigen::VectorXd>(block(k, f), Np);
    }
    Eigen::Map<const Eigen::VectorXd> field(int k, int f) const {
        return Eigen::Map<const Eigen::VectorXd>(block(k, f), Np);
    }
    void set_zero() { data.setZero(); }
};

/// Constant flux matrices of the first-order system and the penalty weights.
struct FluxOperators {
    double alpha_sigma = 0.5;
    double alpha_v = 0.5;

    // A_n = n1 A1 + n3 A3; memory rows are identically zero.
    static Eigen::Matrix<double, 6, 2> normal_matrix(double n1, double n3);
    static Eigen::Matrix<double, 6, 2> A1() { return normal_matrix(1.0, 0.0); }
    static Eigen::Matrix<double, 6, 2> A3() { return normal_matrix(0.0, 1.0); }
};

/// Numerical flux of the penalty scheme, per face node.
/// dtrac = A_n^T [[sigma]] (2 components), dv = [[v]].
void numerical_flux(const Eigen::Vector2d& dtrac, const Eigen::Vector2d& dv, double n1,
                    double n3, double alpha_sigma, double alpha_v,
                    Eigen::Vector3d& flux_sigma, Eigen::Vector2d& flux_v);

/// Boundary closure: exterior-state jumps for a boundary face.
void apply_bc(BoundaryTag tag, const Eigen::Vector3d& sigma_in, const Eigen::Vector2d& v_in,
              double n1, double n3, Eigen::Vector2d& dtrac, Eigen::Vector2d& dv);

using ExactSolution =
    std::function<void(double x, double z, double t, Eigen::Matrix<double, 8, 1>& q)>;

/// Semi-discrete DG operator on a fixed mesh/order/material setup.
class DGSystem {
  public:
    DGSystem(const Mesh& mesh, const ReferenceOperators& ops,
             std::vector<ViscoCoefficients> materials, FluxOperators flux,
             ExactSolution exact = nullptr, int num_threads = 1);

    // dq/dt of the full scheme (no sources).  Throws on shape mismatch.
    void rhs(const StateVector& q, double t, StateVector& dq) const;

    // 1/2 sum_k [(Qs^-1 sigma, sigma) + (rho v, v)] with exact mass quadrature.
    double energy(const StateVector& q) const;

    // Index of first element containing a non-finite value, or -1.
    int find_invalid(const StateVector& q) const;

    StateVector make_state() const { return StateVector(mesh_.num_elements(), ops_.Np); }

    const Mesh& mesh() const { return mesh_; }
    const ReferenceOperators& ops() const { return ops_; }
    const std::vector<ViscoCoefficients>& materials() const { return materials_; }
    const FluxOperators& flux() const { return flux_; }
    const Eigen::MatrixXd& x() const { return x_; }
    const Eigen::MatrixXd& z() const { return z_; }
    int num_dofs() const { return mesh_.num_elements() * ops_.Np * NFIELDS; }

    // Project a smooth solution onto the nodal basis (pointwise at nodes).
    void project(const ExactSolution& sol, double t, StateVector& q) const;

    // Relative L2 distance between a state and a reference solution using a
    // quadrature rule of degree 2N+2.
    double l2_error(const StateVector& q, const ExactSolution& ref, double t) const;

  private:
    void rhs_element(int k, const StateVector& q, double t, StateVector& dq,
                     Eigen::MatrixXd& dwork) const;

    const Mesh& mesh_;
    const ReferenceOperators& ops_;
    std::vector<ViscoCoefficients> materials_;
    FluxOperators flux_;
    ExactSolution exact_;
    int num_threads_;
    std::vector<std::array<std::vector<int>, 3>> perm_;
    Eigen::MatrixXd x_, z_;
    TriQuadrature quad_;
    Eigen::MatrixXd quad_interp_;  // quad points x Np
};

}  // namespace vdg
