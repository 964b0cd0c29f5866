// Adaptive time integration for complex mode vectors: embedded
// Dormand-Prince 5(4) with local error control, dense trajectory sampling at
// a fixed interval, and per-sample conservation monitoring.

#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "conflow/types.hpp"

namespace conflow {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double sample_interval = 0.1;
};

// dy/dt = f(t, y); the callback writes the derivative into `dydt`.
using RhsFn = std::function<void(double t, const CVec& y, CVec& dydt)>;

// Optional per-sample charge evaluator; one value per monitored charge.
using ChargeFn = std::function<std::vector<double>(const CVec& y)>;

struct Trajectory {
    std::vector<double> times;               // strictly monotone in the
    std::vector<CVec> states;                // direction of integration
    std::vector<std::string> charge_names;
    std::vector<std::vector<double>> charge_log;  // one row per sample
};

class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what + " at t = " + std::to_string(t)),
          time_reached_(t) {}
    double time_reached() const { return time_reached_; }

  private:
    double time_reached_;
};

// Integrates from t = 0 to t_end (either sign).  Samples are emitted at
// t = 0, +-sample_interval, +-2 sample_interval, ..., t_end; steps land on
// sample times exactly, so no interpolation enters the recorded states.
Trajectory integrate(const RhsFn& rhs, CVec y0, double t_end,
                     const IntegratorConfig& cfg, const ChargeFn& charge_fn = {},
                     std::vector<std::string> charge_names = {});

// max_t |C(t) - C(0)| / max(|C(0)|, eps_floor), one entry per charge column.
std::vector<double> conservation_drift(const Trajectory& traj);

}  // namespace conflow
