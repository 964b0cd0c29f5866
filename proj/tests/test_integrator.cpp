#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflow/integrator.hpp"
#include "conflow/resonant.hpp"
#include "conflow/szego.hpp"
#include "support.hpp"

using namespace conflow;
using testsupport::max_abs_diff;
using testsupport::random_state;

namespace {

RhsFn conformal_rhs() {
    return [](double, const CVec& y, CVec& dy) { flow_rhs_into(y, dy); };
}

ChargeFn conformal_charges() {
    return [](const CVec& y) {
        const ChargeSet c = charges(ModeSpectrum(y));
        return std::vector<double>{c.Q, c.E, c.H};
    };
}

}  // namespace

TEST_CASE("one-mode flow: alpha_0(t) = e^{-it}, checked at t = pi") {
    CVec y0{Complex(1.0)};
    IntegratorConfig cfg;
    cfg.sample_interval = std::numbers::pi / 8;
    const Trajectory traj = integrate(conformal_rhs(), y0, std::numbers::pi, cfg);
    REQUIRE(traj.times.size() > 2);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Complex expected = std::polar(1.0, -traj.times[i]);
        CHECK(std::abs(traj.states[i][0] - expected) <= 1e-9);
    }
    CHECK(traj.times.back() == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(std::abs(traj.states.back()[0] - Complex(-1.0, 0.0)) <= 1e-9);
}

TEST_CASE("zero state stays zero") {
    IntegratorConfig cfg;
    cfg.sample_interval = 0.5;
    const Trajectory traj = integrate(conformal_rhs(), CVec(6, Complex(0)), 3.0, cfg);
    for (const auto& s : traj.states) CHECK(testsupport::max_abs(s) == 0.0);
}

TEST_CASE("szego two-mode data: |p(t)| matches the closed form, eps = 1") {
    // a0 = 1, b0 = 2 eps, p0 = 0; sup|p| = 1/sqrt(2) keeps the spectrum
    // compact, so a modest truncation resolves the orbit
    const double eps = 1.0;
    const std::size_t N = 64;
    const auto tm = szego::two_mode_instability(eps);
    const double period = 2.0 * std::numbers::pi / tm.omega;

    CVec y0(N, Complex(0));
    y0[0] = Complex(2.0 * eps);
    y0[1] = Complex(1.0);
    IntegratorConfig cfg;
    cfg.sample_interval = period / 256;
    const Trajectory traj = integrate(
        [](double, const CVec& y, CVec& dy) { szego::rhs_fast_into(y, dy); },
        y0, period, cfg);

    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Complex p_num = traj.states[i][2] / traj.states[i][1];
        const Complex p_ref = szego::two_mode_p(eps, traj.times[i]);
        CHECK(std::abs(std::abs(p_num) - std::abs(p_ref)) <= 1e-7);
    }
}

TEST_CASE("conservation drift: stationary orbit and single sample") {
    CVec y0(4, Complex(0));
    y0[1] = Complex(0.9, 0.2);
    IntegratorConfig cfg;
    cfg.sample_interval = 0.25;
    const Trajectory traj = integrate(conformal_rhs(), y0, 5.0, cfg,
                                      conformal_charges(), {"Q", "E", "H"});
    const auto drift = conservation_drift(traj);
    REQUIRE(drift.size() == 3);
    for (double d : drift) CHECK(d <= 1e-10);

    const Trajectory single = integrate(conformal_rhs(), y0, 0.0, cfg,
                                        conformal_charges(), {"Q", "E", "H"});
    for (double d : conservation_drift(single)) CHECK(d == 0.0);
}

TEST_CASE("loosening tolerances can only raise the drift (fixed test set)") {
    double total_loose = 0.0, total_mid = 0.0, total_tight = 0.0;
    for (unsigned seed : {11u, 12u, 13u}) {
        CVec y0 = random_state(10, 0.4, seed);
        for (auto [tol, total] : {std::pair<double, double*>{1e-6, &total_loose},
                                  {1e-8, &total_mid},
                                  {1e-10, &total_tight}}) {
            IntegratorConfig cfg;
            cfg.rel_tol = cfg.abs_tol = tol;
            cfg.sample_interval = 1.0;
            const Trajectory traj = integrate(conformal_rhs(), y0, 20.0, cfg,
                                              conformal_charges());
            for (double d : conservation_drift(traj)) *total += d;
        }
    }
    CHECK(total_tight <= total_mid);
    CHECK(total_mid <= total_loose);
}

TEST_CASE("backward-then-forward returns to the initial state") {
    CVec y0 = random_state(8, 0.5, 77);
    IntegratorConfig cfg;
    cfg.sample_interval = 0.5;
    const Trajectory back = integrate(conformal_rhs(), y0, -2.0, cfg);
    CHECK(back.times.back() == doctest::Approx(-2.0));
    const Trajectory forth = integrate(conformal_rhs(), back.states.back(), 2.0, cfg);
    CHECK(max_abs_diff(forth.states.back(), y0) <= 10.0 * cfg.rel_tol);
}

TEST_CASE("blow-up is reported as step-size underflow with the time reached") {
    // y' = y^2 from y(0) = 2 blows up at t = 1/2
    const RhsFn rhs = [](double, const CVec& y, CVec& dy) {
        dy.resize(1);
        dy[0] = y[0] * y[0];
    };
    IntegratorConfig cfg;
    cfg.sample_interval = 0.05;
    try {
        integrate(rhs, CVec{Complex(2.0)}, 1.0, cfg);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.time_reached() == doctest::Approx(0.5).epsilon(1e-3));
    }
}

TEST_CASE("configuration and state validation") {
    IntegratorConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate(conformal_rhs(), CVec{Complex(1)}, 1.0, bad),
                    std::invalid_argument);
    IntegratorConfig cfg;
    CHECK_THROWS_AS(
        integrate(conformal_rhs(),
                  CVec{Complex(std::numeric_limits<double>::quiet_NaN())}, 1.0,
                  cfg),
        IntegrationError);
}

TEST_CASE("max_step is honored") {
    IntegratorConfig cfg;
    cfg.sample_interval = 0.5;
    cfg.max_step = 0.01;
    CVec y0{Complex(1.0)};
    const Trajectory traj = integrate(conformal_rhs(), y0, 1.0, cfg);
    CHECK(std::abs(traj.states.back()[0] - std::polar(1.0, -1.0)) <= 1e-9);
}
