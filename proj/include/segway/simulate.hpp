#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "segway/control.hpp"

namespace segway {

enum class ModelKind { Nonlinear, Linear };

const char* model_kind_name(ModelKind m);

// Sample flags (bitmask).
inline constexpr unsigned kFlagDiverged = 1u;
inline constexpr unsigned kFlagSaturated = 2u;

struct Sample {
    double t;
    State s;
    double torque;  // torque applied over [t, t + dt)
    Mode mode;
    unsigned flags;
};

struct Trajectory {
    std::vector<Sample> samples;
    bool diverged = false;
    bool settled = false;
    bool not_settled = false;  // reached t_max without a confirmed settle
    // Scenario bookkeeping (NaN for open-loop runs).
    double v_des = std::nan("");
    double release_time = std::nan("");
    double release_x = std::nan("");
    double release_v = std::nan("");
    double x_target = std::nan("");
    double settle_enter_time = std::nan("");  // start of the confirmed in-band interval
};

// Classical fourth-order Runge-Kutta step with the torque held constant over
// the step (zero-order hold).
// Throws: NonFinite when the advanced state is not finite.
template <typename Derivative>
State rk4_step(Derivative&& deriv, const State& s, double t, double dt, double torque) {
    auto add = [](const State& a, const State& b, double h) {
        return State{a.x + h * b.x, a.v + h * b.v, a.theta + h * b.theta, a.omega + h * b.omega};
    };
    const State k1 = deriv(t, s, torque);
    const State k2 = deriv(t + 0.5 * dt, add(s, k1, 0.5 * dt), torque);
    const State k3 = deriv(t + 0.5 * dt, add(s, k2, 0.5 * dt), torque);
    const State k4 = deriv(t + dt, add(s, k3, dt), torque);
    const State out{
        s.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
        s.theta + dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
        s.omega + dt / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega)};
    if (!std::isfinite(out.x) || !std::isfinite(out.v) || !std::isfinite(out.theta) ||
        !std::isfinite(out.omega))
        raise(ErrorCode::NonFinite, "rk4_step: non-finite state");
    return out;
}

struct Scenario {
    SegwayParams params{};
    PlantSource source = PlantSource::Derived;
    ModelKind model = ModelKind::Nonlinear;
    double theta_i = 0.2617993877991494;  // pi/12
    double t_hold = 3.0;
    double dt = 1e-3;
    double t_max = 30.0;
    std::optional<Vec4> gains_mode1;  // default: synthesized for the source
    std::optional<Vec4> gains_mode2;
    std::optional<double> torque_limit;
    // Controller refresh period; must be a whole multiple of dt. Defaults to
    // dt (torque recomputed every step). Coarser values keep the commanded
    // staircase fixed while dt refines, for integration-error studies.
    std::optional<double> control_period;
    bool run_to_t_max = false;  // keep integrating after the settle confirms
};

struct ResponseMetrics {
    std::optional<double> rise_time;           // 10% to 90% of the traversal
    std::optional<double> settling_time;       // entry of the final in-band interval
    std::optional<double> overshoot;           // fraction of the traversal
    std::optional<double> steady_state_error;  // |last - target|
    bool settled = false;                      // last sample inside the band
};

struct ScenarioMetrics {
    // Phase-2 signals, times relative to release.
    ResponseMetrics x, v, theta, omega;
    // Phase-1 velocity against v_des.
    ResponseMetrics hold_v;
    double settle_time_total = std::nan("");  // absolute in-band entry, from t = 0
};

struct ScenarioResult {
    Scenario scenario;
    SystemConstants constants;
    StateSpace plant;
    Vec4 gains_mode1, gains_mode2;
    Trajectory trajectory;
    ScenarioMetrics metrics;
};

// Validates the scenario, synthesizes any missing gains, runs the two-phase
// maneuver and computes metrics. Stops early once all four states have been
// inside their settle bands for a full second (unless run_to_t_max).
// Throws: InvalidArgument (range violations; nonlinear model with the paper
// source), plus anything the synthesis can raise when gains are defaulted.
ScenarioResult run_scenario(const Scenario& sc);

// Open-loop response from upright rest to a constant torque step. Divergence
// guards truncate the run instead of throwing.
// Throws: InvalidArgument.
Trajectory run_open_loop(const SegwayParams& params, PlantSource source, ModelKind model,
                         double torque_step, double t_max, double dt);

// Metrics of one state signal over samples[first..], measured against
// target. Band: max(0.02 * |target - initial|, band_floor).
ResponseMetrics compute_metrics(const std::vector<Sample>& samples, size_t first,
                                int state_index, double target, double band_floor);

}  // namespace segway
