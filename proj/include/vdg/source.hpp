#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vdg/dg.hpp"
#include "vdg/mesh.hpp"
#include "vdg/refelem.hpp"

namespace vdg {

enum class WaveletKind { ricker, gauss_cosine };

// (1 - 2 (pi f0 (t-t0))^2) exp(-(pi f0 (t-t0))^2)
double ricker(double t, double f0, double t0);

// exp(-dw^2 (t-t0)^2 / 4) cos(wb (t-t0)), wb = 2 pi f0, dw = wb/2.
double gauss_cosine(double t, double f0, double t0);
double gauss_cosine_dot(double t, double f0, double t0);

// Continuous transform int f(t) exp(-i w t) dt of the gauss-cosine wavelet:
// sqrt(pi)/dw [exp(-((w-wb)/dw)^2) + exp(-((w+wb)/dw)^2)] exp(-i w t0).
std::complex<double> gauss_cosine_spectrum(double omega, double f0, double t0);

struct SourceSpec {
    WaveletKind kind = WaveletKind::ricker;
    double f0 = 1.0;        // Hz
    double t0 = 0.0;        // s
    double x = 0.0, z = 0.0;
    double amplitude = 1.0;
    // injection weights per field (only stress and velocity rows are used)
    Eigen::Matrix<double, 8, 1> weights = Eigen::Matrix<double, 8, 1>::Zero();

    double value(double t) const;
    double derivative(double t) const;
};

/// Nodal representation of a point delta: integrating the injected field
/// against any test polynomial returns the test value at the source point.
class PointSource {
  public:
    PointSource(const SourceSpec& spec, const Mesh& mesh, const ReferenceOperators& ops);

    // Adds w(t) * delta to the configured rhs rows.  Velocity targets are
    // divided by the local density (the forcing enters rho dv/dt = ... + f).
    void inject(StateVector& rhs, const std::vector<ViscoCoefficients>& materials,
                double t) const;

    int element() const { return elem_; }
    const SourceSpec& spec() const { return spec_; }

  private:
    SourceSpec spec_;
    int elem_ = -1;
    int material_ = 0;
    Eigen::VectorXd delta_;  // inverse-mass nodal delta on the owning element
};

/// Locates (x, z); returns element id and reference coordinates.  Ties are
/// broken by the lowest element id.  Throws when outside the mesh.
std::pair<int, Eigen::Vector2d> locate_point(const Mesh& mesh, double x, double z,
                                             double tol = 1e-9);

struct ReceiverSet {
    ReceiverSet() = default;
    ReceiverSet(const std::vector<Eigen::Vector2d>& positions, const Mesh& mesh,
                const ReferenceOperators& ops);

    void record(const StateVector& q, double t);

    int count() const { return static_cast<int>(positions.size()); }

    std::vector<Eigen::Vector2d> positions;
    std::vector<int> element;
    std::vector<Eigen::RowVectorXd> interp;  // per receiver, length Np
    std::vector<double> times;
    // samples[r][i] = 8 field values of receiver r at times[i]
    std::vector<std::vector<Eigen::Matrix<double, 8, 1>>> samples;
};

}  // namespace vdg
