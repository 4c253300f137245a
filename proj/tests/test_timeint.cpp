#include "doctest.h"

#include <cmath>

#include "vdg/timeint.hpp"

using namespace vdg;

TEST_CASE("dt estimate") {
    const auto mat = derive_visco_coefficients(MaterialSpec::preset("isotropic_sandstone"));
    SUBCASE("halving h halves dt") {
        const Mesh m1 = uniform_tri_mesh(4, 4, 0, 1, 0, 1);
        const Mesh m2 = uniform_tri_mesh(8, 8, 0, 1, 0, 1);
        const double dt1 = estimate_dt(m1, {mat}, 3, 0.5);
        const double dt2 = estimate_dt(m2, {mat}, 3, 0.5);
        CHECK(dt1 == doctest::Approx(2 * dt2).epsilon(1e-12));
    }
    SUBCASE("doubling degree from 1 to 2 halves dt") {
        const Mesh m = uniform_tri_mesh(4, 4, 0, 1, 0, 1);
        const double dt1 = estimate_dt(m, {mat}, 1, 0.5);  // C_N = 3
        const double dt2 = estimate_dt(m, {mat}, 2, 0.5);  // C_N = 6
        CHECK(dt1 == doctest::Approx(2 * dt2).epsilon(1e-12));
    }
    SUBCASE("zero CFL rejected") {
        const Mesh m = uniform_tri_mesh(2, 2, 0, 1, 0, 1);
        CHECK_THROWS_AS(estimate_dt(m, {mat}, 2, 0.0), std::invalid_argument);
    }
}

namespace {

// embed a scalar linear ODE dq/dt = lambda q in the state container
StateVector scalar_state(double v) {
    StateVector q(1, 1);
    q.data(0, 0) = v;
    return q;
}

}  // namespace

TEST_CASE("low-storage RK advance") {
    SUBCASE("zero rhs leaves the state bit-identical") {
        StateVector q(2, 3);
        q.data.setRandom();
        const Eigen::MatrixXd before = q.data;
        advance([](const StateVector&, double, StateVector& o) { o.data.setZero(); }, q, 0.0, 1.0,
                0.125);
        CHECK((q.data - before).norm() == 0.0);
    }
    SUBCASE("single-step local error is fifth order") {
        const double lam = -1.3;
        auto rhs = [lam](const StateVector& s, double, StateVector& o) {
            o.data = lam * s.data;
        };
        // n-step errors at decreasing dt follow C dt^5 per step locally;
        // compare one step against the Taylor series of exp(lam dt)
        std::vector<double> errs;
        for (double dt : {0.2, 0.1, 0.05}) {
            StateVector q = scalar_state(1.0);
            advance(rhs, q, 0.0, dt, dt);
            errs.push_back(std::abs(q.data(0, 0) - std::exp(lam * dt)));
        }
        const double order = std::log2(errs[0] / errs[2]) / 2.0;
        CHECK(order == doctest::Approx(5.0).epsilon(0.1));
    }
    SUBCASE("global convergence order four") {
        const double lam = -1.0;
        auto rhs = [lam](const StateVector& s, double, StateVector& o) {
            o.data = lam * s.data;
        };
        std::vector<double> errs;
        for (int n : {8, 16, 32}) {
            StateVector q = scalar_state(1.0);
            advance(rhs, q, 0.0, 1.0, 1.0 / n);
            errs.push_back(std::abs(q.data(0, 0) - std::exp(-1.0)));
        }
        const double order = std::log2(errs[0] / errs[2]) / 2.0;
        CHECK(order == doctest::Approx(4.0).epsilon(0.025));
    }
    SUBCASE("lands exactly on the final time") {
        double last_t = 0.0;
        auto rhs = [](const StateVector& s, double, StateVector& o) { o.data = -s.data; };
        StateVector q = scalar_state(1.0);
        advance(rhs, q, 0.0, 1.0, 0.3, [&](int, double t, const StateVector&) { last_t = t; });
        CHECK(last_t == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(q.data(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));
    }
    SUBCASE("nan guard aborts with the step index") {
        auto rhs = [](const StateVector& s, double, StateVector& o) {
            o.data.setConstant(std::numeric_limits<double>::quiet_NaN());
        };
        StateVector q = scalar_state(1.0);
        CHECK_THROWS_WITH_AS(advance(rhs, q, 0.0, 1.0, 0.01, nullptr, 5),
                             doctest::Contains("step 5"), std::runtime_error);
    }
    SUBCASE("time-dependent rhs is sampled at the stage times") {
        // dq/dt = 3 t^2 integrates exactly to t^3 for any RK of order >= 3
        auto rhs = [](const StateVector&, double t, StateVector& o) {
            o.data.setConstant(3.0 * t * t);
        };
        StateVector q = scalar_state(0.0);
        advance(rhs, q, 0.0, 1.0, 0.25);
        CHECK(q.data(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    }
}
