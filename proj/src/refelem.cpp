#include "vdg/refelem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vdg {

namespace {

double gamma_fn(double x) { return std::tgamma(x); }

// Gauss quadrature nodes/weights for the Jacobi weight (1-x)^a (1+x)^b via
// the Golub-Welsch eigenvalue method.
void gauss_jacobi(int n, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double h1 = 2.0 * i + a + b;
        J(i, i) = (h1 == 0.0) ? (b - a) / (a + b + 2.0)
                              : -(a * a - b * b) / (h1 * (h1 + 2.0));
        if (i + 1 < n) {
            const double num = (i + 1.0) * (i + 1.0 + a + b) * (i + 1.0 + a) * (i + 1.0 + b);
            const double den = (h1 + 1.0) * (h1 + 3.0);
            J(i, i + 1) = J(i + 1, i) = 2.0 / (h1 + 2.0) * std::sqrt(num / den);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x = es.eigenvalues();
    const double mu0 = std::pow(2.0, a + b + 1.0) * gamma_fn(a + 1.0) * gamma_fn(b + 1.0) /
                       gamma_fn(a + b + 2.0);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        w(i) = mu0 * v0 * v0;
    }
}

Eigen::VectorXd gauss_lobatto(int N) {
    // Endpoints plus the roots of P'_N, i.e. Gauss-Jacobi(1,1) with N-1 points.
    Eigen::VectorXd x(N + 1);
    x(0) = -1.0;
    x(N) = 1.0;
    if (N > 1) {
        Eigen::VectorXd xi, wi;
        gauss_jacobi(N - 1, 1.0, 1.0, xi, wi);
        for (int i = 0; i < N - 1; ++i) x(i + 1) = xi(i);
    }
    return x;
}

void rs_to_ab(const Eigen::VectorXd& r, const Eigen::VectorXd& s,
              Eigen::VectorXd& a, Eigen::VectorXd& b) {
    const int n = static_cast<int>(r.size());
    a.resize(n);
    b = s;
    for (int i = 0; i < n; ++i)
        a(i) = (std::abs(1.0 - s(i)) > 1e-14) ? 2.0 * (1.0 + r(i)) / (1.0 - s(i)) - 1.0 : -1.0;
}

Eigen::VectorXd simplex_basis(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int i, int j) {
    const Eigen::VectorXd h1 = jacobi_poly(a, 0.0, 0.0, i);
    const Eigen::VectorXd h2 = jacobi_poly(b, 2.0 * i + 1.0, 0.0, j);
    Eigen::VectorXd res = std::sqrt(2.0) * h1.array() * h2.array();
    for (int k = 0; k < res.size(); ++k) res(k) *= std::pow(1.0 - b(k), i);
    return res;
}

void grad_simplex_basis(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int i, int j,
                        Eigen::VectorXd& dr, Eigen::VectorXd& ds) {
    const Eigen::VectorXd fa = jacobi_poly(a, 0.0, 0.0, i);
    const Eigen::VectorXd dfa = grad_jacobi_poly(a, 0.0, 0.0, i);
    const Eigen::VectorXd gb = jacobi_poly(b, 2.0 * i + 1.0, 0.0, j);
    const Eigen::VectorXd dgb = grad_jacobi_poly(b, 2.0 * i + 1.0, 0.0, j);
    const int n = static_cast<int>(a.size());
    dr.resize(n);
    ds.resize(n);
    for (int k = 0; k < n; ++k) {
        const double onemb = 0.5 * (1.0 - b(k));
        double vdr = dfa(k) * gb(k);
        double vds = dfa(k) * (0.5 * (1.0 + a(k))) * gb(k);
        if (i > 0) {
            const double p = std::pow(onemb, i - 1);
            vdr *= p;
            vds *= p;
        }
        double tmp = dgb(k) * std::pow(onemb, i);
        if (i > 0) tmp -= 0.5 * i * gb(k) * std::pow(onemb, i - 1);
        vds += fa(k) * tmp;
        const double sc = std::pow(2.0, i + 0.5);
        dr(k) = sc * vdr;
        ds(k) = sc * vds;
    }
}

Eigen::VectorXd warp_factor(int N, const Eigen::VectorXd& rout) {
    const Eigen::VectorXd lgl = gauss_lobatto(N);
    Eigen::VectorXd req(N + 1);
    for (int i = 0; i <= N; ++i) req(i) = -1.0 + 2.0 * i / N;
    Eigen::MatrixXd Veq(N + 1, N + 1);
    for (int j = 0; j <= N; ++j) Veq.col(j) = jacobi_poly(req, 0.0, 0.0, j);
    Eigen::MatrixXd Pmat(N + 1, rout.size());
    for (int j = 0; j <= N; ++j) Pmat.row(j) = jacobi_poly(rout, 0.0, 0.0, j).transpose();
    const Eigen::MatrixXd Lmat = Veq.transpose().fullPivLu().solve(Pmat);
    const Eigen::VectorXd warp = Lmat.transpose() * (lgl - req);
    Eigen::VectorXd out(rout.size());
    for (int k = 0; k < rout.size(); ++k) {
        const bool interior = std::abs(rout(k)) < 1.0 - 1e-10;
        const double zf = interior ? 1.0 : 0.0;
        const double sf = 1.0 - (zf * rout(k)) * (zf * rout(k));
        out(k) = warp(k) / sf + warp(k) * (zf - 1.0);
    }
    return out;
}

}  // namespace

Eigen::VectorXd jacobi_poly(const Eigen::VectorXd& x, double a, double b, int n) {
    const int np = static_cast<int>(x.size());
    Eigen::MatrixXd PL(n + 1, np);
    const double gamma0 = std::pow(2.0, a + b + 1.0) / (a + b + 1.0) * gamma_fn(a + 1.0) *
                          gamma_fn(b + 1.0) / gamma_fn(a + b + 1.0);
    PL.row(0).setConstant(1.0 / std::sqrt(gamma0));
    if (n == 0) return PL.row(0);
    const double gamma1 = (a + 1.0) * (b + 1.0) / (a + b + 3.0) * gamma0;
    for (int k = 0; k < np; ++k)
        PL(1, k) = ((a + b + 2.0) * x(k) / 2.0 + (a - b) / 2.0) / std::sqrt(gamma1);
    if (n == 1) return PL.row(1);
    double aold = 2.0 / (2.0 + a + b) * std::sqrt((a + 1.0) * (b + 1.0) / (a + b + 3.0));
    for (int i = 1; i < n; ++i) {
        const double h1 = 2.0 * i + a + b;
        const double anew = 2.0 / (h1 + 2.0) *
                            std::sqrt((i + 1.0) * (i + 1.0 + a + b) * (i + 1.0 + a) *
                                      (i + 1.0 + b) / ((h1 + 1.0) * (h1 + 3.0)));
        const double bnew = -(a * a - b * b) / (h1 * (h1 + 2.0));
        for (int k = 0; k < np; ++k)
            PL(i + 1, k) = (-aold * PL(i - 1, k) + (x(k) - bnew) * PL(i, k)) / anew;
        aold = anew;
    }
    return PL.row(n);
}

Eigen::VectorXd grad_jacobi_poly(const Eigen::VectorXd& x, double a, double b, int n) {
    if (n == 0) return Eigen::VectorXd::Zero(x.size());
    return std::sqrt(n * (n + a + b + 1.0)) * jacobi_poly(x, a + 1.0, b + 1.0, n - 1);
}

void warp_blend_nodes(int N, Eigen::VectorXd& r, Eigen::VectorXd& s) {
    static const double alpopt[15] = {0.0000, 0.0000, 1.4152, 0.1001, 0.2751,
                                      0.9800, 1.0999, 1.2832, 1.3648, 1.4773,
                                      1.4959, 1.5743, 1.5770, 1.6223, 1.6258};
    const double alpha = (N < 16) ? alpopt[N - 1] : 5.0 / 3.0;
    const int Np = (N + 1) * (N + 2) / 2;
    Eigen::VectorXd L1(Np), L2(Np), L3(Np);
    int sk = 0;
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N - n; ++m) {
            L1(sk) = static_cast<double>(n) / N;
            L3(sk) = static_cast<double>(m) / N;
            ++sk;
        }
    L2 = Eigen::VectorXd::Ones(Np) - L1 - L3;
    Eigen::VectorXd x = -L2 + L3;
    Eigen::VectorXd y = (-L2 - L3 + 2.0 * L1) / std::sqrt(3.0);
    const Eigen::VectorXd blend1 = 4.0 * L2.array() * L3.array();
    const Eigen::VectorXd blend2 = 4.0 * L1.array() * L3.array();
    const Eigen::VectorXd blend3 = 4.0 * L1.array() * L2.array();
    const Eigen::VectorXd wf1 = warp_factor(N, L3 - L2);
    const Eigen::VectorXd wf2 = warp_factor(N, L1 - L3);
    const Eigen::VectorXd wf3 = warp_factor(N, L2 - L1);
    for (int k = 0; k < Np; ++k) {
        const double w1 = blend1(k) * wf1(k) * (1.0 + std::pow(alpha * L1(k), 2));
        const double w2 = blend2(k) * wf2(k) * (1.0 + std::pow(alpha * L2(k), 2));
        const double w3 = blend3(k) * wf3(k) * (1.0 + std::pow(alpha * L3(k), 2));
        x(k) += w1 + std::cos(2.0 * M_PI / 3.0) * w2 + std::cos(4.0 * M_PI / 3.0) * w3;
        y(k) += std::sin(2.0 * M_PI / 3.0) * w2 + std::sin(4.0 * M_PI / 3.0) * w3;
    }
    r.resize(Np);
    s.resize(Np);
    for (int k = 0; k < Np; ++k) {
        const double l1 = (std::sqrt(3.0) * y(k) + 1.0) / 3.0;
        const double l2 = (-3.0 * x(k) - std::sqrt(3.0) * y(k) + 2.0) / 6.0;
        const double l3 = (3.0 * x(k) - std::sqrt(3.0) * y(k) + 2.0) / 6.0;
        r(k) = -l2 + l3 - l1;
        s(k) = -l2 - l3 + l1;
    }
}

Eigen::MatrixXd vandermonde(int N, const Eigen::VectorXd& r, const Eigen::VectorXd& s) {
    Eigen::VectorXd a, b;
    rs_to_ab(r, s, a, b);
    const int Np = (N + 1) * (N + 2) / 2;
    Eigen::MatrixXd V(r.size(), Np);
    int sk = 0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N - i; ++j) V.col(sk++) = simplex_basis(a, b, i, j);
    return V;
}

void grad_vandermonde(int N, const Eigen::VectorXd& r, const Eigen::VectorXd& s,
                      Eigen::MatrixXd& Vr, Eigen::MatrixXd& Vs) {
    Eigen::VectorXd a, b;
    rs_to_ab(r, s, a, b);
    const int Np = (N + 1) * (N + 2) / 2;
    Vr.resize(r.size(), Np);
    Vs.resize(r.size(), Np);
    Eigen::VectorXd dr, ds;
    int sk = 0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N - i; ++j) {
            grad_simplex_basis(a, b, i, j, dr, ds);
            Vr.col(sk) = dr;
            Vs.col(sk) = ds;
            ++sk;
        }
}

ReferenceOperators build_reference(int N) {
    if (N < 1 || N > ReferenceOperators::max_degree)
        throw std::invalid_argument("build_reference: degree must be in [1, " +
                                    std::to_string(ReferenceOperators::max_degree) + "]");
    ReferenceOperators ops;
    ops.N = N;
    ops.Np = (N + 1) * (N + 2) / 2;
    ops.Nfp = N + 1;
    warp_blend_nodes(N, ops.r, ops.s);
    ops.V = vandermonde(N, ops.r, ops.s);
    ops.Vinv = ops.V.fullPivLu().inverse();
    Eigen::MatrixXd Vr, Vs;
    grad_vandermonde(N, ops.r, ops.s, Vr, Vs);
    ops.Dr = Vr * ops.Vinv;
    ops.Ds = Vs * ops.Vinv;
    ops.Minv = ops.V * ops.V.transpose();
    ops.M = ops.Minv.fullPivLu().inverse();
    ops.Sr = ops.M * ops.Dr;
    ops.Ss = ops.M * ops.Ds;

    const double tol = 1e-10;
    for (int i = 0; i < ops.Np; ++i) {
        if (std::abs(ops.s(i) + 1.0) < tol) ops.fmask[0].push_back(i);
        if (std::abs(ops.r(i) + ops.s(i)) < tol) ops.fmask[1].push_back(i);
        if (std::abs(ops.r(i) + 1.0) < tol) ops.fmask[2].push_back(i);
    }
    auto sort_by = [&](std::vector<int>& ids, const Eigen::VectorXd& key) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) { return key(a) < key(b); });
    };
    sort_by(ops.fmask[0], ops.r);
    sort_by(ops.fmask[1], ops.s);
    sort_by(ops.fmask[2], ops.s);

    // Face arc lengths per unit of the face parameter (r on face 0, s on 1/2).
    const double arc[3] = {1.0, std::sqrt(2.0), 1.0};
    for (int f = 0; f < 3; ++f) {
        const auto& fm = ops.fmask[f];
        Eigen::VectorXd t(ops.Nfp);
        for (int i = 0; i < ops.Nfp; ++i) t(i) = (f == 0) ? ops.r(fm[i]) : ops.s(fm[i]);
        Eigen::MatrixXd V1(ops.Nfp, ops.Nfp);
        for (int j = 0; j < ops.Nfp; ++j) V1.col(j) = jacobi_poly(t, 0.0, 0.0, j);
        ops.Mf[f] = arc[f] * (V1 * V1.transpose()).fullPivLu().inverse();
        Eigen::MatrixXd E = Eigen::MatrixXd::Zero(ops.Np, ops.Nfp);
        for (int i = 0; i < ops.Nfp; ++i) E(fm[i], i) = 1.0;
        ops.lift[f] = ops.Minv * (E * ops.Mf[f]);
    }
    return ops;
}

Eigen::RowVectorXd ReferenceOperators::interpolation_row(double rp, double sp) const {
    const double tol = 1e-9;
    if (rp < -1.0 - tol || sp < -1.0 - tol || rp + sp > tol)
        throw std::invalid_argument("interpolate: point outside reference triangle");
    Eigen::VectorXd rv(1), sv(1);
    rv(0) = rp;
    sv(0) = sp;
    return vandermonde(N, rv, sv) * Vinv;
}

double ReferenceOperators::interpolate(const Eigen::VectorXd& nodal, double rp, double sp) const {
    return interpolation_row(rp, sp).dot(nodal);
}

TriQuadrature triangle_quadrature(int npts) {
    // Collapsed-coordinate tensor rule: Gauss-Legendre in a, Gauss-Jacobi(1,0)
    // in b absorbing the (1-b)/2 area factor.
    Eigen::VectorXd xa, wa, xb, wb;
    gauss_jacobi(npts, 0.0, 0.0, xa, wa);
    gauss_jacobi(npts, 1.0, 0.0, xb, wb);
    TriQuadrature q;
    q.r.resize(npts * npts);
    q.s.resize(npts * npts);
    q.w.resize(npts * npts);
    int k = 0;
    for (int i = 0; i < npts; ++i)
        for (int j = 0; j < npts; ++j) {
            const double a = xa(i), b = xb(j);
            q.r(k) = 0.5 * (1.0 + a) * (1.0 - b) - 1.0;
            q.s(k) = b;
            q.w(k) = 0.5 * wa(i) * wb(j);
            ++k;
        }
    return q;
}

}  // namespace vdg
