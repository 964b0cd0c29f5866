#include "conflow/integrator.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace conflow {

namespace {

namespace odeint = boost::numeric::odeint;

// Fehlberg 7(8): order >= 5 with embedded error estimate; the high order
// keeps secular drift of conserved quantities well below the per-step
// tolerance over long horizons.
using Stepper = odeint::runge_kutta_fehlberg78<CVec>;
using Controlled = odeint::controlled_runge_kutta<Stepper>;

bool finite(const CVec& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace

Trajectory integrate(const RhsFn& rhs, CVec y0, double t_end,
                     const IntegratorConfig& cfg, const ChargeFn& charge_fn,
                     std::vector<std::string> charge_names) {
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) ||
        !(cfg.abs_tol > 0.0 && cfg.abs_tol < 1.0))
        throw std::invalid_argument("integrate: tolerances must lie in (0,1)");
    if (!(cfg.max_step > 0.0) || !(cfg.sample_interval > 0.0))
        throw std::invalid_argument(
            "integrate: max_step and sample_interval must be positive");
    if (!finite(y0)) throw IntegrationError("non-finite initial state", 0.0);

    Trajectory traj;
    traj.charge_names = std::move(charge_names);
    auto emit = [&](double t, const CVec& y) {
        traj.times.push_back(t);
        traj.states.push_back(y);
        if (charge_fn) traj.charge_log.push_back(charge_fn(y));
    };
    emit(0.0, y0);
    if (t_end == 0.0) return traj;

    const double dir = t_end > 0.0 ? 1.0 : -1.0;
    auto system = [&rhs](const CVec& y, CVec& dydt, double t) { rhs(t, y, dydt); };

    Controlled ctrl = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, Stepper());

    CVec y = std::move(y0);
    double t = 0.0;
    // initial step from the derivative scale
    double h;
    {
        CVec d(y.size());
        rhs(0.0, y, d);
        if (!finite(d)) throw IntegrationError("non-finite derivative", 0.0);
        double ynorm = 0.0, dnorm = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
            ynorm = std::max(ynorm, std::abs(y[i]) / sc);
            dnorm = std::max(dnorm, std::abs(d[i]) / sc);
        }
        h = (ynorm < 1e-8 || dnorm < 1e-8) ? 1e-6 : 0.01 * ynorm / dnorm;
        h = dir * std::min({h, cfg.max_step, cfg.sample_interval, std::abs(t_end)});
    }

    long sample_idx = 1;
    int failures = 0;
    while (dir * (t_end - t) > 0.0) {
        const double next_sample =
            static_cast<double>(sample_idx) * cfg.sample_interval * dir;
        const double target =
            dir * (t_end - next_sample) > 0.0 ? next_sample : t_end;

        if (std::abs(h) > cfg.max_step) h = dir * cfg.max_step;
        bool lands = false;
        if (dir * (t + h - target) >= 0.0) {
            h = target - t;
            lands = true;
        }
        if (std::abs(h) < 4.0 * std::numeric_limits<double>::epsilon() *
                              std::max(1.0, std::abs(t)))
            throw IntegrationError("step-size underflow", t);

        const auto res = ctrl.try_step(system, y, t, h);
        if (res == odeint::success) {
            failures = 0;
            if (!finite(y))
                throw IntegrationError("non-finite state or derivative", t);
            if (lands) {
                t = target;  // land exactly, free of accumulated round-off
                emit(t, y);
                if (target == next_sample) ++sample_idx;
            }
        } else if (++failures > 500) {
            throw IntegrationError("no progress (repeated step rejections)", t);
        }
    }
    return traj;
}

std::vector<double> conservation_drift(const Trajectory& traj) {
    constexpr double eps_floor = 1e-300;
    if (traj.charge_log.empty()) return {};
    const std::size_t m = traj.charge_log.front().size();
    std::vector<double> drift(m, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
        const double ref = traj.charge_log.front()[c];
        const double denom = std::max(std::abs(ref), eps_floor);
        for (const auto& row : traj.charge_log)
            drift[c] = std::max(drift[c], std::abs(row[c] - ref) / denom);
    }
    return drift;
}

}  // namespace conflow
