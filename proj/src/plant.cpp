#include "segway/plant.hpp"

#include <cmath>

namespace segway {

void validate_params(const SegwayParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            raise(ErrorCode::InvalidArgument, std::string("parameter must be positive and finite: ") + name);
    };
    positive(p.rod_mass, "m");
    positive(p.wheel_mass, "M");
    positive(p.rod_inertia, "I_r");
    positive(p.wheel_inertia, "I_w");
    positive(p.rod_length, "l");
    positive(p.wheel_radius, "R");
    positive(p.gravity, "g");
    if (!std::isfinite(p.torque_ratio))
        raise(ErrorCode::InvalidArgument, "parameter must be finite: K");
}

SystemConstants derive_constants(const SegwayParams& p) {
    validate_params(p);
    const double m = p.rod_mass, M = p.wheel_mass, l = p.rod_length, R = p.wheel_radius;
    SystemConstants c{};
    c.k1 = (M + m) * R + p.wheel_inertia / R;
    c.k2 = m * l * R;
    c.k3 = m * l;
    c.k4 = p.rod_inertia + m * l * l;
    c.k5 = m * p.gravity * l;
    c.k6 = m * l * R;
    c.delta = c.k1 * c.k4 - c.k2 * c.k3;
    // delta = ((M+m)R + I_w/R)(I_r + m l^2) - m^2 l^2 R
    //       = (M R + I_w/R)(I_r + m l^2) + m R I_r  > 0 for positive params.
    if (!(c.delta > 0.0) || !std::isfinite(c.delta))
        raise(ErrorCode::NonFinite, "derive_constants: delta not positive finite");
    return c;
}

Accel accelerations(const SystemConstants& c, double torque_ratio, const State& s, double torque) {
    const double ct = std::cos(s.theta);
    const double st = std::sin(s.theta);
    const std::array<std::array<double, 2>, 2> mass{{{c.k1, c.k2 * ct}, {c.k3 * ct, c.k4}}};
    const Vec2 rhs{torque + c.k6 * st * s.omega * s.omega,
                   c.k5 * st - torque_ratio * torque};
    const Vec2 sol = solve_linear_2x2(mass, rhs);
    if (!std::isfinite(sol[0]) || !std::isfinite(sol[1]))
        raise(ErrorCode::NonFinite, "accelerations: non-finite result");
    return {sol[0], sol[1]};
}

Accel clamped_acceleration(const SystemConstants& c, double torque) {
    return {torque / c.k1, 0.0};
}

double mechanical_energy(const SystemConstants& c, const State& s) {
    const double R = c.k2 / c.k3;  // m l R / (m l)
    const double ct = std::cos(s.theta);
    return 0.5 * (c.k1 / R) * s.v * s.v + c.k3 * ct * s.v * s.omega +
           0.5 * c.k4 * s.omega * s.omega + c.k5 * ct;
}

double input_power(const SystemConstants& c, double torque_ratio, const State& s, double torque) {
    const double R = c.k2 / c.k3;
    return torque * (s.v / R - torque_ratio * s.omega);
}

}  // namespace segway
