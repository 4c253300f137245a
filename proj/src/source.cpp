#include "vdg/source.hpp"

#include <cmath>
#include <stdexcept>

namespace vdg {

double ricker(double t, double f0, double t0) {
    const double u = M_PI * f0 * (t - t0);
    return (1.0 - 2.0 * u * u) * std::exp(-u * u);
}

double gauss_cosine(double t, double f0, double t0) {
    const double wb = 2.0 * M_PI * f0;
    const double dw = 0.5 * wb;
    const double s = t - t0;
    return std::exp(-0.25 * dw * dw * s * s) * std::cos(wb * s);
}

double gauss_cosine_dot(double t, double f0, double t0) {
    const double wb = 2.0 * M_PI * f0;
    const double dw = 0.5 * wb;
    const double s = t - t0;
    const double env = std::exp(-0.25 * dw * dw * s * s);
    return env * (-0.5 * dw * dw * s * std::cos(wb * s) - wb * std::sin(wb * s));
}

std::complex<double> gauss_cosine_spectrum(double omega, double f0, double t0) {
    const double wb = 2.0 * M_PI * f0;
    const double dw = 0.5 * wb;
    const double lo = (omega - wb) / dw;
    const double hi = (omega + wb) / dw;
    const double mag = std::sqrt(M_PI) / dw * (std::exp(-lo * lo) + std::exp(-hi * hi));
    return mag * std::exp(std::complex<double>(0.0, -omega * t0));
}

double SourceSpec::value(double t) const {
    const double w = (kind == WaveletKind::ricker) ? ricker(t, f0, t0) : gauss_cosine(t, f0, t0);
    return amplitude * w;
}

double SourceSpec::derivative(double t) const {
    if (kind == WaveletKind::gauss_cosine) return amplitude * gauss_cosine_dot(t, f0, t0);
    // d/dt ricker
    const double a = M_PI * f0;
    const double u = a * (t - t0);
    return amplitude * std::exp(-u * u) * (2.0 * u * u * u - 3.0 * u) * 2.0 * a;
}

std::pair<int, Eigen::Vector2d> locate_point(const Mesh& mesh, double x, double z, double tol) {
    for (int k = 0; k < mesh.num_elements(); ++k) {
        const auto v = mesh.vertices_of(k);
        // barycentric coordinates
        const Eigen::Vector2d p(x, z);
        const Eigen::Vector2d d1 = v[1] - v[0], d2 = v[2] - v[0], dp = p - v[0];
        const double det = d1.x() * d2.y() - d2.x() * d1.y();
        const double l1 = (dp.x() * d2.y() - d2.x() * dp.y()) / det;
        const double l2 = (d1.x() * dp.y() - dp.x() * d1.y()) / det;
        const double l0 = 1.0 - l1 - l2;
        const double scale = std::sqrt(std::abs(det));
        const double eps = tol * std::max(1.0, scale);
        if (l0 >= -eps && l1 >= -eps && l2 >= -eps) {
            // x = l0 v0 + l1 v1 + l2 v2 with l1 = (1+r)/2, l2 = (1+s)/2
            return {k, Eigen::Vector2d(2.0 * l1 - 1.0, 2.0 * l2 - 1.0)};
        }
    }
    throw std::invalid_argument("locate_point: (" + std::to_string(x) + ", " + std::to_string(z) +
                                ") lies outside the mesh");
}

PointSource::PointSource(const SourceSpec& spec, const Mesh& mesh, const ReferenceOperators& ops)
    : spec_(spec) {
    const auto [k, rs] = locate_point(mesh, spec.x, spec.z);
    elem_ = k;
    material_ = mesh.material[k];
    const Eigen::RowVectorXd psi = ops.interpolation_row(rs.x(), rs.y());
    // delta = M_phys^{-1} psi^T = (1/J) Minv psi^T
    delta_ = (ops.Minv * psi.transpose()) / mesh.J(k);
}

void PointSource::inject(StateVector& rhs, const std::vector<ViscoCoefficients>& materials,
                         double t) const {
    const double w = spec_.value(t);
    if (w == 0.0) return;
    const double rho = materials[material_].rho;
    for (int f = 0; f < NFIELDS; ++f) {
        if (spec_.weights(f) == 0.0) continue;
        double scale = w * spec_.weights(f);
        if (f == V1 || f == V3) scale /= rho;
        rhs.field(elem_, f) += scale * delta_;
    }
}

ReceiverSet::ReceiverSet(const std::vector<Eigen::Vector2d>& pos, const Mesh& mesh,
                         const ReferenceOperators& ops)
    : positions(pos) {
    for (const auto& p : positions) {
        const auto [k, rs] = locate_point(mesh, p.x(), p.y());
        element.push_back(k);
        interp.push_back(ops.interpolation_row(rs.x(), rs.y()));
    }
    samples.resize(positions.size());
}

void ReceiverSet::record(const StateVector& q, double t) {
    times.push_back(t);
    for (size_t r = 0; r < positions.size(); ++r) {
        Eigen::Matrix<double, 8, 1> v;
        for (int f = 0; f < NFIELDS; ++f) v(f) = interp[r].dot(q.field(element[r], f));
        samples[r].push_back(v);
    }
}

}  // namespace vdg
