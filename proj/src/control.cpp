#include "segway/control.hpp"

#include <cmath>
#include <cstring>

namespace segway {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::HoldTilt: return "hold";
        case Mode::FreeStop: return "free";
        case Mode::Settled: return "settled";
        case Mode::OpenLoop: return "open";
    }
    return "?";
}

std::optional<Mode> mode_from_name(const char* s) {
    if (std::strcmp(s, "hold") == 0) return Mode::HoldTilt;
    if (std::strcmp(s, "free") == 0) return Mode::FreeStop;
    if (std::strcmp(s, "settled") == 0) return Mode::Settled;
    if (std::strcmp(s, "open") == 0) return Mode::OpenLoop;
    return std::nullopt;
}

double velocity_calibration(double theta_i) { return 7.0 * std::tanh(2.5 * theta_i); }

double stopping_distance(double v_release) { return 3.2 * v_release; }

double hold_torque(double g_v, double v_des, double v) { return g_v * (v_des - v); }

double stop_torque(const Vec4& gains, const State& s, double x_target) {
    return gains[0] * (x_target - s.x) + gains[1] * (0.0 - s.v) +
           gains[2] * (0.0 - s.theta) + gains[3] * (0.0 - s.omega);
}

RealPolynomial mode1_target_polynomial() {
    return RealPolynomial{{0.0, 15.0, 54.2575, 110.0, 1.0}};
}

RealPolynomial mode2_target_polynomial() {
    return RealPolynomial{{9.0, 30.0, 31.2575, 15.0, 1.0}};
}

Vec4 default_gains_mode1(const StateSpace& ss) {
    return place_poles(ss, mode1_target_polynomial()).gains;
}

Vec4 default_gains_mode2(const StateSpace& ss) {
    return place_poles(ss, mode2_target_polynomial()).gains;
}

void step_mode_machine(ControllerState& cs, const State& s, double t, double t_hold,
                       bool settle_confirmed) {
    if (cs.mode == Mode::HoldTilt && t >= t_hold) {
        cs.mode = Mode::FreeStop;
        cs.release_time = t;
        cs.release_x = s.x;
        cs.release_v = s.v;
        cs.x_target = s.x + stopping_distance(s.v);
    }
    if (cs.mode == Mode::FreeStop && settle_confirmed) cs.mode = Mode::Settled;
}

}  // namespace segway
