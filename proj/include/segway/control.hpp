#pragma once

#include <optional>

#include "segway/synthesis.hpp"

namespace segway {

// Two-phase maneuver: hold the tilt and accelerate, then release and bring
// everything to rest at a precomputed stop position.
enum class Mode { HoldTilt, FreeStop, Settled, OpenLoop };

const char* mode_name(Mode m);                    // "hold", "free", "settled", "open"
std::optional<Mode> mode_from_name(const char* s);

// Commanded cruise velocity for a commanded tilt: v_des = 7 tanh(2.5 theta_i).
double velocity_calibration(double theta_i);

// Stop-target offset from the release point: 3.2 * v_release.
double stopping_distance(double v_release);

// Phase-1 law on the clamped plant (xdd = T/k1): T = g_v * (v_des - v).
// g_v must be positive; callers take the magnitude of the mode-1 velocity
// gain, since negative feedback on this plant means a positive coefficient
// on the velocity error.
double hold_torque(double g_v, double v_des, double v);

// Phase-2 law: full-state feedback toward (x_target, 0, 0, 0).
double stop_torque(const Vec4& gains, const State& s, double x_target);

// The two fixed design targets. Mode 1 leaves a root at the origin
// (position is not regulated while cruising); mode 2 regulates all four
// states for the stop.
RealPolynomial mode1_target_polynomial();  // s^4 + 110 s^3 + 54.2575 s^2 + 15 s
RealPolynomial mode2_target_polynomial();  // s^4 + 15 s^3 + 31.2575 s^2 + 30 s + 9

// Gains synthesized for a given plant from the fixed target polynomials.
Vec4 default_gains_mode1(const StateSpace& ss);
Vec4 default_gains_mode2(const StateSpace& ss);

struct ControllerState {
    Mode mode = Mode::HoldTilt;
    double x_target = 0.0;
    double release_time = 0.0;
    double release_x = 0.0;
    double release_v = 0.0;
};

// Mode transitions only move forward: HoldTilt -> FreeStop on the first grid
// time at or past t_hold (captures the release state and stop target),
// FreeStop -> Settled when the caller's settle predicate has confirmed.
void step_mode_machine(ControllerState& cs, const State& s, double t, double t_hold,
                       bool settle_confirmed);

}  // namespace segway
