#include "segway/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace segway {

const char* model_kind_name(ModelKind m) {
    return m == ModelKind::Nonlinear ? "nonlinear" : "linear";
}

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void validate_common(double dt, double t_max, PlantSource source, ModelKind model) {
    if (!(dt > 0.0) || dt > 0.01)
        raise(ErrorCode::InvalidArgument, "dt must satisfy 0 < dt <= 0.01");
    if (!std::isfinite(t_max) || !(t_max > 0.0))
        raise(ErrorCode::InvalidArgument, "t_max must be positive and finite");
    if (model == ModelKind::Nonlinear && source == PlantSource::Paper)
        raise(ErrorCode::InvalidArgument,
              "the nonlinear model is undefined for the paper-numeric plant; "
              "no positive parameter set reproduces it");
}

// One controller refresh every `sub` integration steps.
int control_substeps(const Scenario& sc) {
    if (!sc.control_period) return 1;
    const double cp = *sc.control_period;
    if (!(cp > 0.0)) raise(ErrorCode::InvalidArgument, "control_period must be positive");
    const double ratio = cp / sc.dt;
    const int sub = static_cast<int>(std::lround(ratio));
    if (sub < 1 || std::fabs(ratio - sub) > 1e-9 * std::max(1.0, ratio))
        raise(ErrorCode::InvalidArgument, "control_period must be a whole multiple of dt");
    return sub;
}

double apply_limit(double torque, const std::optional<double>& limit, unsigned& flags) {
    if (limit && std::fabs(torque) > *limit) {
        flags |= kFlagSaturated;
        return std::copysign(*limit, torque);
    }
    return torque;
}

bool state_diverged(const State& s) {
    return std::fabs(s.theta) > kHalfPi || std::fabs(s.x) > 1e6 || std::fabs(s.v) > 1e6 ||
           std::fabs(s.omega) > 1e6 || !std::isfinite(s.x) || !std::isfinite(s.v) ||
           !std::isfinite(s.theta) || !std::isfinite(s.omega);
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc) {
    if (!std::isfinite(sc.theta_i) || std::fabs(sc.theta_i) >= kHalfPi)
        raise(ErrorCode::InvalidArgument, "theta_i must satisfy |theta_i| < pi/2");
    if (!std::isfinite(sc.t_hold) || sc.t_hold < 0.0)
        raise(ErrorCode::InvalidArgument, "t_hold must be nonnegative");
    validate_common(sc.dt, sc.t_max, sc.source, sc.model);
    if (!(sc.t_max > sc.t_hold))
        raise(ErrorCode::InvalidArgument, "t_max must exceed t_hold");
    if (sc.torque_limit && !(*sc.torque_limit > 0.0))
        raise(ErrorCode::InvalidArgument, "torque_limit must be positive");

    ScenarioResult out;
    out.scenario = sc;
    out.constants = derive_constants(sc.params);
    out.plant = sc.source == PlantSource::Derived
                    ? linearize(out.constants, sc.params.torque_ratio)
                    : paper_numeric_plant();
    out.gains_mode1 = sc.gains_mode1 ? *sc.gains_mode1 : default_gains_mode1(out.plant);
    out.gains_mode2 = sc.gains_mode2 ? *sc.gains_mode2 : default_gains_mode2(out.plant);

    const int sub = control_substeps(sc);
    const double dt = sc.dt;
    const SystemConstants& c = out.constants;
    const double kappa = sc.params.torque_ratio;

    auto clamped = [&](double, const State& s, double torque) {
        const Accel a = clamped_acceleration(c, torque);
        return State{s.v, a.xdd, 0.0, 0.0};
    };
    auto free_nl = [&](double, const State& s, double torque) {
        const Accel a = accelerations(c, kappa, s, torque);
        return State{s.v, a.xdd, s.omega, a.thetadd};
    };
    auto free_lin = [&](double, const State& s, double torque) {
        const Vec4 v{s.x, s.v, s.theta, s.omega};
        Vec4 d = mat_vec(out.plant.A, v);
        for (int i = 0; i < 4; ++i) d[i] += out.plant.B[i] * torque;
        return State{d[0], d[1], d[2], d[3]};
    };
    auto free_deriv = [&](double t, const State& s, double torque) {
        return sc.model == ModelKind::Nonlinear ? free_nl(t, s, torque) : free_lin(t, s, torque);
    };

    Trajectory& traj = out.trajectory;
    traj.v_des = velocity_calibration(sc.theta_i);
    const double g_v = std::fabs(out.gains_mode1[1]);

    State s{0.0, 0.0, sc.theta_i, 0.0};
    ControllerState cs;
    double torque = 0.0;
    unsigned torque_flags = 0;
    long first_free = -1;
    // Settle bands, fixed at release.
    double band_x = 0.0, band_v = 0.0, band_th = 0.0, band_om = 0.0;
    long k_enter = -1;

    for (long k = 0;; ++k) {
        const double t = k * dt;
        if (cs.mode == Mode::HoldTilt) step_mode_machine(cs, s, t, sc.t_hold, false);

        if (cs.mode == Mode::HoldTilt) {
            if (k % sub == 0) {
                torque_flags = 0;
                torque = apply_limit(hold_torque(g_v, traj.v_des, s.v), sc.torque_limit,
                                     torque_flags);
            }
            traj.samples.push_back({t, s, torque, Mode::HoldTilt, torque_flags});
            try {
                s = rk4_step(clamped, s, t, dt, torque);
            } catch (const Error&) {
                traj.samples.back().flags |= kFlagDiverged;
                traj.diverged = true;
                break;
            }
            if (state_diverged(s)) {
                traj.samples.push_back(
                    {(k + 1) * dt, s, torque, Mode::HoldTilt, torque_flags | kFlagDiverged});
                traj.diverged = true;
                break;
            }
            continue;
        }

        if (first_free < 0) {
            first_free = k;
            traj.release_time = cs.release_time;
            traj.release_x = cs.release_x;
            traj.release_v = cs.release_v;
            traj.x_target = cs.x_target;
            band_x = std::max(0.02 * std::fabs(cs.x_target - cs.release_x), 0.05);
            band_v = std::max(0.02 * std::fabs(cs.release_v), 0.05);
            band_th = std::max(0.02 * std::fabs(s.theta), 0.01);
            band_om = std::max(0.02 * std::fabs(s.omega), 0.01);
        }

        if (t > sc.t_max + 1e-12) {
            if (!traj.settled) traj.not_settled = true;
            break;
        }

        if ((k - first_free) % sub == 0) {
            torque_flags = 0;
            torque = apply_limit(stop_torque(out.gains_mode2, s, cs.x_target), sc.torque_limit,
                                 torque_flags);
        }

        if (!traj.settled) {
            const bool in_band = std::fabs(s.x - cs.x_target) <= band_x &&
                                 std::fabs(s.v) <= band_v && std::fabs(s.theta) <= band_th &&
                                 std::fabs(s.omega) <= band_om;
            if (in_band && k_enter < 0) k_enter = k;
            if (!in_band) k_enter = -1;
            if (k_enter >= 0 && (k - k_enter) * dt >= 1.0 - 1e-12) {
                traj.settled = true;
                traj.settle_enter_time = k_enter * dt;
            }
        }
        step_mode_machine(cs, s, t, sc.t_hold, traj.settled);
        traj.samples.push_back({t, s, torque, cs.mode, torque_flags});
        if (traj.settled && !sc.run_to_t_max) break;

        try {
            s = rk4_step(free_deriv, s, t, dt, torque);
        } catch (const Error&) {
            traj.samples.back().flags |= kFlagDiverged;
            traj.diverged = true;
            break;
        }
        if (state_diverged(s)) {
            traj.samples.push_back(
                {(k + 1) * dt, s, torque, cs.mode, torque_flags | kFlagDiverged});
            traj.diverged = true;
            break;
        }
    }
    if (traj.diverged) traj.not_settled = !traj.settled;

    // Metrics. Phase-2 times are relative to the release sample.
    const size_t nfree = first_free >= 0 ? static_cast<size_t>(first_free) : traj.samples.size();
    ScenarioMetrics& m = out.metrics;
    if (nfree > 0) {
        std::vector<Sample> hold(traj.samples.begin(), traj.samples.begin() + nfree);
        m.hold_v = compute_metrics(hold, 0, 1, traj.v_des, 0.05);
    }
    if (nfree < traj.samples.size()) {
        m.x = compute_metrics(traj.samples, nfree, 0, traj.x_target, 0.05);
        m.v = compute_metrics(traj.samples, nfree, 1, 0.0, 0.05);
        m.theta = compute_metrics(traj.samples, nfree, 2, 0.0, 0.01);
        m.omega = compute_metrics(traj.samples, nfree, 3, 0.0, 0.01);
    }
    m.settle_time_total = traj.settle_enter_time;
    return out;
}

Trajectory run_open_loop(const SegwayParams& params, PlantSource source, ModelKind model,
                         double torque_step, double t_max, double dt) {
    validate_common(dt, t_max, source, model);
    if (!std::isfinite(torque_step))
        raise(ErrorCode::InvalidArgument, "torque_step must be finite");
    const SystemConstants c = derive_constants(params);
    const StateSpace plant =
        source == PlantSource::Derived ? linearize(c, params.torque_ratio) : paper_numeric_plant();

    auto deriv = [&](double, const State& s, double torque) {
        if (model == ModelKind::Nonlinear) {
            const Accel a = accelerations(c, params.torque_ratio, s, torque);
            return State{s.v, a.xdd, s.omega, a.thetadd};
        }
        const Vec4 v{s.x, s.v, s.theta, s.omega};
        Vec4 d = mat_vec(plant.A, v);
        for (int i = 0; i < 4; ++i) d[i] += plant.B[i] * torque;
        return State{d[0], d[1], d[2], d[3]};
    };

    Trajectory traj;
    State s{};
    for (long k = 0;; ++k) {
        const double t = k * dt;
        if (t > t_max + 1e-12) break;
        traj.samples.push_back({t, s, torque_step, Mode::OpenLoop, 0});
        try {
            s = rk4_step(deriv, s, t, dt, torque_step);
        } catch (const Error&) {
            traj.samples.back().flags |= kFlagDiverged;
            traj.diverged = true;
            break;
        }
        if (state_diverged(s)) {
            traj.samples.push_back({(k + 1) * dt, s, torque_step, Mode::OpenLoop, kFlagDiverged});
            traj.diverged = true;
            break;
        }
    }
    return traj;
}

ResponseMetrics compute_metrics(const std::vector<Sample>& samples, size_t first, int state_index,
                                double target, double band_floor) {
    ResponseMetrics r;
    if (first >= samples.size()) return r;
    auto value = [&](size_t i) {
        const State& s = samples[i].s;
        switch (state_index) {
            case 0: return s.x;
            case 1: return s.v;
            case 2: return s.theta;
            default: return s.omega;
        }
    };
    const size_t n = samples.size();
    const double t0 = samples[first].t;
    const double y0 = value(first);
    const double traversal = target - y0;
    const double band = std::max(0.02 * std::fabs(traversal), band_floor);

    r.steady_state_error = std::fabs(value(n - 1) - target);
    r.settled = *r.steady_state_error <= band;

    // Settling: entry time of the final interval that stays in the band.
    if (r.settled) {
        size_t last_out = first;
        bool any_out = false;
        for (size_t i = first; i < n; ++i) {
            if (std::fabs(value(i) - target) > band) {
                last_out = i;
                any_out = true;
            }
        }
        if (!any_out)
            r.settling_time = 0.0;
        else if (last_out + 1 < n)
            r.settling_time = samples[last_out + 1].t - t0;
    }

    if (std::fabs(traversal) >= 1e-12) {
        const double d = traversal > 0.0 ? 1.0 : -1.0;
        // 10% and 90% crossings of the traversal, first-sample resolution.
        std::optional<double> t10, t90;
        for (size_t i = first; i < n; ++i) {
            const double progress = (value(i) - y0) / traversal;
            if (!t10 && progress >= 0.1) t10 = samples[i].t;
            if (t10 && progress >= 0.9) {
                t90 = samples[i].t;
                break;
            }
        }
        if (t10 && t90) r.rise_time = *t90 - *t10;
        double excursion = 0.0;
        for (size_t i = first; i < n; ++i)
            excursion = std::max(excursion, d * (value(i) - target));
        r.overshoot = std::max(0.0, excursion) / std::fabs(traversal);
    } else {
        // No traversal: rise is undefined; overshoot only defined when the
        // signal never leaves the target at all.
        double excursion = 0.0;
        for (size_t i = first; i < n; ++i)
            excursion = std::max(excursion, std::fabs(value(i) - target));
        if (excursion == 0.0) r.overshoot = 0.0;
    }
    return r;
}

}  // namespace segway
