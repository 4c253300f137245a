#include "vdg/dg.hpp"

#include <cmath>
#include <thread>

namespace vdg {

Eigen::Matrix<double, 6, 2> FluxOperators::normal_matrix(double n1, double n3) {
    Eigen::Matrix<double, 6, 2> An = Eigen::Matrix<double, 6, 2>::Zero();
    An(S11, 0) = n1;
    An(S33, 1) = n3;
    An(S13, 0) = n3;
    An(S13, 1) = n1;
    return An;
}

void numerical_flux(const Eigen::Vector2d& dtrac, const Eigen::Vector2d& dv, double n1,
                    double n3, double alpha_sigma, double alpha_v,
                    Eigen::Vector3d& flux_sigma, Eigen::Vector2d& flux_v) {
    // F_sigma = A_n (dv/2 + alpha_sigma/2 dtrac); F_v = dtrac/2 + alpha_v/2 A_n^T A_n dv.
    const double w1 = 0.5 * dv(0) + 0.5 * alpha_sigma * dtrac(0);
    const double w2 = 0.5 * dv(1) + 0.5 * alpha_sigma * dtrac(1);
    flux_sigma(0) = n1 * w1;
    flux_sigma(1) = n3 * w2;
    flux_sigma(2) = n3 * w1 + n1 * w2;
    const double u1 = n1 * dv(0), u2 = n3 * dv(1), u3 = n3 * dv(0) + n1 * dv(1);
    flux_v(0) = 0.5 * dtrac(0) + 0.5 * alpha_v * (n1 * u1 + n3 * u3);
    flux_v(1) = 0.5 * dtrac(1) + 0.5 * alpha_v * (n3 * u2 + n1 * u3);
}

void apply_bc(BoundaryTag tag, const Eigen::Vector3d& sigma_in, const Eigen::Vector2d& v_in,
              double n1, double n3, Eigen::Vector2d& dtrac, Eigen::Vector2d& dv) {
    const double t1 = n1 * sigma_in(0) + n3 * sigma_in(2);
    const double t2 = n3 * sigma_in(1) + n1 * sigma_in(2);
    switch (tag) {
        case BoundaryTag::free_surface:
            dtrac << -2.0 * t1, -2.0 * t2;
            dv.setZero();
            break;
        case BoundaryTag::absorbing:
            dtrac << -t1, -t2;
            dv = -v_in;
            break;
        default:
            throw std::invalid_argument("apply_bc: unsupported boundary tag");
    }
}

DGSystem::DGSystem(const Mesh& mesh, const ReferenceOperators& ops,
                   std::vector<ViscoCoefficients> materials, FluxOperators flux,
                   ExactSolution exact, int num_threads)
    : mesh_(mesh),
      ops_(ops),
      materials_(std::move(materials)),
      flux_(flux),
      exact_(std::move(exact)),
      num_threads_(std::max(1, num_threads)) {
    if (materials_.empty()) throw std::invalid_argument("DGSystem: no materials");
    for (int id : mesh.material)
        if (id < 0 || id >= static_cast<int>(materials_.size()))
            throw std::invalid_argument("DGSystem: element material id out of range");
    if (!(flux_.alpha_sigma >= 0.0) || !(flux_.alpha_v >= 0.0))
        throw std::invalid_argument("DGSystem: penalty parameters must be >= 0");
    perm_ = build_face_permutations(mesh_, ops_);
    nodal_coordinates(mesh_, ops_, x_, z_);
    bool needs_exact = false;
    for (const auto& tags : mesh_.btag)
        for (auto t : tags)
            if (t == BoundaryTag::exact) needs_exact = true;
    if (needs_exact && !exact_)
        throw std::invalid_argument("DGSystem: mesh demands exact-trace boundary data");
    quad_ = triangle_quadrature(ops_.N + 2);
    quad_interp_ = vandermonde(ops_.N, quad_.r, quad_.s) * ops_.Vinv;
}

void DGSystem::rhs_element(int k, const StateVector& q, double t, StateVector& dq,
                           Eigen::MatrixXd& dwork) const {
    const int Np = ops_.Np;
    const int Nfp = ops_.Nfp;
    const auto& mat = materials_[mesh_.material[k]];

    // physical derivatives of v1, v3, s11, s33, s13
    static constexpr int derivs[5] = {V1, V3, S11, S33, S13};
    // dwork layout: columns 0..4 = d/dx, 5..9 = d/dz, 10..17 = accumulators
    for (int i = 0; i < 5; ++i) {
        const auto u = q.field(k, derivs[i]);
        const Eigen::VectorXd ur = ops_.Dr * u;
        const Eigen::VectorXd us = ops_.Ds * u;
        dwork.col(i) = mesh_.rx(k) * ur + mesh_.sx(k) * us;
        dwork.col(5 + i) = mesh_.rz(k) * ur + mesh_.sz(k) * us;
    }
    const auto dv1dx = dwork.col(0), dv3dx = dwork.col(1);
    const auto ds11dx = dwork.col(2), ds13dx = dwork.col(4);
    const auto dv1dz = dwork.col(5), dv3dz = dwork.col(6);
    const auto ds33dz = dwork.col(8), ds13dz = dwork.col(9);

    auto acc = [&](int f) { return dwork.col(10 + f); };
    acc(S11) = dv1dx;
    acc(S33) = dv3dz;
    acc(S13) = dv3dx + dv1dz;
    acc(A1).setZero();
    acc(A2).setZero();
    acc(A5).setZero();
    acc(V1) = ds11dx + ds13dz;
    acc(V3) = ds13dx + ds33dz;

    Eigen::Matrix<double, Eigen::Dynamic, 5> fflux(Nfp, 5);
    Eigen::Vector3d fs;
    Eigen::Vector2d fv, dtrac, dv;
    Eigen::Vector3d sm;
    Eigen::Vector2d vm;
    Eigen::Matrix<double, 8, 1> qex;
    for (int f = 0; f < 3; ++f) {
        const int k2 = mesh_.etoe[k][f];
        const int f2 = mesh_.etof[k][f];
        const double n1 = mesh_.nx(k, f), n3 = mesh_.nz(k, f);
        const auto& fm = ops_.fmask[f];
        for (int i = 0; i < Nfp; ++i) {
            const int nid = fm[i];
            sm << q.data(S11 * Np + nid, k), q.data(S33 * Np + nid, k), q.data(S13 * Np + nid, k);
            vm << q.data(V1 * Np + nid, k), q.data(V3 * Np + nid, k);
            if (k2 >= 0) {
                const int nid2 = ops_.fmask[f2][perm_[k][f][i]];
                const Eigen::Vector3d sp(q.data(S11 * Np + nid2, k2), q.data(S33 * Np + nid2, k2),
                                         q.data(S13 * Np + nid2, k2));
                const Eigen::Vector2d vp(q.data(V1 * Np + nid2, k2), q.data(V3 * Np + nid2, k2));
                const Eigen::Vector3d ds = sp - sm;
                dtrac << n1 * ds(0) + n3 * ds(2), n3 * ds(1) + n1 * ds(2);
                dv = vp - vm;
            } else if (mesh_.btag[k][f] == BoundaryTag::exact) {
                exact_(x_(k, nid), z_(k, nid), t, qex);
                const Eigen::Vector3d ds = qex.head<3>() - sm;
                dtrac << n1 * ds(0) + n3 * ds(2), n3 * ds(1) + n1 * ds(2);
                dv = qex.segment<2>(V1) - vm;
            } else {
                apply_bc(mesh_.btag[k][f], sm, vm, n1, n3, dtrac, dv);
            }
            numerical_flux(dtrac, dv, n1, n3, flux_.alpha_sigma, flux_.alpha_v, fs, fv);
            fflux(i, 0) = fs(0);
            fflux(i, 1) = fs(1);
            fflux(i, 2) = fs(2);
            fflux(i, 3) = fv(0);
            fflux(i, 4) = fv(1);
        }
        const double scale = mesh_.Jf(k, f) / mesh_.J(k);
        acc(S11) += scale * (ops_.lift[f] * fflux.col(0));
        acc(S33) += scale * (ops_.lift[f] * fflux.col(1));
        acc(S13) += scale * (ops_.lift[f] * fflux.col(2));
        acc(V1) += scale * (ops_.lift[f] * fflux.col(3));
        acc(V3) += scale * (ops_.lift[f] * fflux.col(4));
    }

    // dq_sigma = Qs * (volume + flux) + G * sigma_hat, applied nodewise;
    // dq_v = (volume + flux) / rho.
    const auto& Qs = mat.Qs;
    const auto& Gm = mat.Gblk;
    for (int n = 0; n < Np; ++n) {
        Eigen::Matrix<double, 6, 1> r6, s6;
        for (int fld = 0; fld < 6; ++fld) {
            r6(fld) = acc(fld)(n);
            s6(fld) = q.data(fld * Np + n, k);
        }
        const Eigen::Matrix<double, 6, 1> out = Qs * r6 + Gm * s6;
        for (int fld = 0; fld < 6; ++fld) dq.data(fld * Np + n, k) = out(fld);
    }
    const double rinv = 1.0 / mat.rho;
    dq.field(k, V1) = rinv * acc(V1);
    dq.field(k, V3) = rinv * acc(V3);
}

void DGSystem::rhs(const StateVector& q, double t, StateVector& dq) const {
    const int K = mesh_.num_elements();
    if (q.K != K || q.Np != ops_.Np || dq.K != K || dq.Np != ops_.Np)
        throw std::invalid_argument("DGSystem::rhs: state shape mismatch");
    auto run = [&](int k0, int k1) {
        Eigen::MatrixXd dwork(ops_.Np, 18);
        for (int k = k0; k < k1; ++k) rhs_element(k, q, t, dq, dwork);
    };
    if (num_threads_ <= 1 || K < 4 * num_threads_) {
        run(0, K);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (K + num_threads_ - 1) / num_threads_;
        for (int t0 = 0; t0 < K; t0 += chunk)
            pool.emplace_back(run, t0, std::min(K, t0 + chunk));
        for (auto& th : pool) th.join();
    }
}

double DGSystem::energy(const StateVector& q) const {
    const int Np = ops_.Np;
    double total = 0.0;
    Eigen::MatrixXd Msig(Np, 6);
    for (int k = 0; k < mesh_.num_elements(); ++k) {
        const auto& mat = materials_[mesh_.material[k]];
        for (int f = 0; f < 6; ++f) Msig.col(f) = ops_.M * q.field(k, f);
        double e = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const double w = mat.Qs_inv(i, j);
                if (w != 0.0) e += w * q.field(k, i).dot(Msig.col(j));
            }
        e += mat.rho * (q.field(k, V1).dot(ops_.M * q.field(k, V1)) +
                        q.field(k, V3).dot(ops_.M * q.field(k, V3)));
        total += 0.5 * mesh_.J(k) * e;
    }
    return total;
}

int DGSystem::find_invalid(const StateVector& q) const {
    for (int k = 0; k < q.K; ++k)
        if (!q.data.col(k).allFinite()) return k;
    return -1;
}

void DGSystem::project(const ExactSolution& sol, double t, StateVector& q) const {
    Eigen::Matrix<double, 8, 1> vals;
    for (int k = 0; k < mesh_.num_elements(); ++k)
        for (int n = 0; n < ops_.Np; ++n) {
            sol(x_(k, n), z_(k, n), t, vals);
            for (int f = 0; f < NFIELDS; ++f) q.data(f * ops_.Np + n, k) = vals(f);
        }
    q.t = t;
}

double DGSystem::l2_error(const StateVector& q, const ExactSolution& ref, double t) const {
    const int nq = static_cast<int>(quad_.w.size());
    double num = 0.0, den = 0.0;
    Eigen::Matrix<double, 8, 1> vals;
    Eigen::MatrixXd qq(nq, NFIELDS);
    for (int k = 0; k < mesh_.num_elements(); ++k) {
        for (int f = 0; f < NFIELDS; ++f) qq.col(f) = quad_interp_ * q.field(k, f);
        for (int i = 0; i < nq; ++i) {
            const double l0 = -0.5 * (quad_.r(i) + quad_.s(i));
            const double l1 = 0.5 * (1.0 + quad_.r(i));
            const double l2 = 0.5 * (1.0 + quad_.s(i));
            const auto v = mesh_.vertices_of(k);
            const double xp = l0 * v[0].x() + l1 * v[1].x() + l2 * v[2].x();
            const double zp = l0 * v[0].y() + l1 * v[1].y() + l2 * v[2].y();
            ref(xp, zp, t, vals);
            for (int f = 0; f < NFIELDS; ++f) {
                const double d = qq(i, f) - vals(f);
                num += mesh_.J(k) * quad_.w(i) * d * d;
                den += mesh_.J(k) * quad_.w(i) * vals(f) * vals(f);
            }
        }
    }
    return std::sqrt(num / den);
}

}  // namespace vdg
