#pragma once

#include <functional>

#include <Eigen/Dense>

#include "vdg/dg.hpp"
#include "vdg/mesh.hpp"

namespace vdg {

/// Five-stage fourth-order low-storage Runge-Kutta (Carpenter & Kennedy 1994).
struct LowStorageRK {
    static constexpr int stages = 5;
    static const double a[stages];
    static const double b[stages];
    static const double c[stages];
};

/// dt = min_k C_CFL / (lambda_max C_N ||J^f||_inf ||J^-1||_inf),
/// with C_N = (N+1)(N+2)/2.
double estimate_dt(const Mesh& mesh, const std::vector<ViscoCoefficients>& materials, int N,
                   double c_cfl);

using RhsFunction = std::function<void(const StateVector&, double, StateVector&)>;
using StepMonitor = std::function<void(int step, double t, const StateVector&)>;

/// Advances q from t0 to t1 with fixed dt (last step shortened to land on t1).
/// The monitor runs after every completed step.  Throws std::runtime_error on
/// non-finite state (checked every nan_check_interval steps).
void advance(const RhsFunction& rhs, StateVector& q, double t0, double t1, double dt,
             const StepMonitor& monitor = nullptr, int nan_check_interval = 50);

}  // namespace vdg
