#include "vdg/timeint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vdg {

// Carpenter & Kennedy (1994), "Fourth-order 2N-storage Runge-Kutta schemes",
// NASA TM-109112; solution 3 coefficients.
const double LowStorageRK::a[LowStorageRK::stages] = {
    0.0,
    -567301805773.0 / 1357537059087.0,
    -2404267990393.0 / 2016746695238.0,
    -3550918686646.0 / 2091501179385.0,
    -1275806237668.0 / 842570457699.0,
};
const double LowStorageRK::b[LowStorageRK::stages] = {
    1432997174477.0 / 9575080441755.0,
    5161836677717.0 / 13612068292357.0,
    1720146321549.0 / 2090206949498.0,
    3134564353537.0 / 4481467310338.0,
    2277821191437.0 / 14882151754819.0,
};
const double LowStorageRK::c[LowStorageRK::stages] = {
    0.0,
    1432997174477.0 / 9575080441755.0,
    2526269341429.0 / 6820363962896.0,
    2006345519317.0 / 3224310063776.0,
    2802321613138.0 / 2924317926251.0,
};

double estimate_dt(const Mesh& mesh, const std::vector<ViscoCoefficients>& materials, int N,
                   double c_cfl) {
    if (!(c_cfl > 0.0)) throw std::invalid_argument("estimate_dt: C_CFL must be positive");
    const double cn = 0.5 * (N + 1) * (N + 2);
    double dt = std::numeric_limits<double>::max();
    for (int k = 0; k < mesh.num_elements(); ++k) {
        const double lmax = materials[mesh.material[k]].lambda_max;
        const double jf = mesh.Jf.row(k).maxCoeff();
        const double jinv = 1.0 / mesh.J(k);
        if (!(mesh.J(k) > 0.0))
            throw std::invalid_argument("estimate_dt: zero-measure element " + std::to_string(k));
        dt = std::min(dt, c_cfl / (lmax * cn * jf * jinv));
    }
    return dt;
}

void advance(const RhsFunction& rhs, StateVector& q, double t0, double t1, double dt,
             const StepMonitor& monitor, int nan_check_interval) {
    if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
    StateVector res(q.K, q.Np);
    StateVector work(q.K, q.Np);
    double t = t0;
    int step = 0;
    q.t = t0;
    while (t < t1 - 1e-14 * std::max(1.0, std::abs(t1))) {
        const double h = std::min(dt, t1 - t);
        res.data.setZero();
        for (int s = 0; s < LowStorageRK::stages; ++s) {
            rhs(q, t + LowStorageRK::c[s] * h, work);
            res.data = LowStorageRK::a[s] * res.data + h * work.data;
            q.data += LowStorageRK::b[s] * res.data;
        }
        t += h;
        ++step;
        q.t = t;
        if (nan_check_interval > 0 && step % nan_check_interval == 0 && !q.data.allFinite())
            throw std::runtime_error("advance: non-finite state at step " + std::to_string(step) +
                                     ", t = " + std::to_string(t));
        if (monitor) monitor(step, t, q);
    }
}

}  // namespace vdg
