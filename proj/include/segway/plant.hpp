#pragma once

#include "segway/errors.hpp"
#include "segway/numerics.hpp"

namespace segway {

// Physical parameters of the planar self-balancing vehicle. Velocities are
// of the wheel center; theta is the rod tilt from upright, and the input T
// is the motor torque applied at the wheel.
struct SegwayParams {
    double rod_mass = 2.0;           // m, kg
    double wheel_mass = 3.5;         // M, kg (wheel/base assembly)
    double rod_inertia = 0.02667;    // I_r, kg m^2, about the pivot offset used below
    double wheel_inertia = 0.004375; // I_w, kg m^2
    double rod_length = 0.2;         // l, m, pivot to rod center of mass
    double wheel_radius = 0.05;      // R, m
    double gravity = 9.81;           // g, m/s^2
    double torque_ratio = 6.0;       // K, reaction-torque coupling, dimensionless
};

// Grouped coefficients of the equations of motion:
//   k1*xdd + (k2 cos th)*thdd = T + (k6 sin th)*thd^2
//   (k3 cos th)*xdd + k4*thdd = k5 sin th - K*T
// delta = k1*k4 - k2*k3, the theta=0 mass-matrix determinant; the
// configuration-dependent determinant k1*k4 - k2*k3*cos^2 th never falls
// below it.
struct SystemConstants {
    double k1, k2, k3, k4, k5, k6;
    double delta;
};

struct State {
    double x = 0.0;      // wheel position, m
    double v = 0.0;      // wheel velocity, m/s
    double theta = 0.0;  // rod tilt, rad
    double omega = 0.0;  // tilt rate, rad/s
};

struct Accel {
    double xdd;      // m/s^2
    double thetadd;  // rad/s^2
};

// Validates positivity/range invariants shared by every entry point.
// Throws: InvalidArgument.
void validate_params(const SegwayParams& p);

// Computes k1..k6 and delta from physical parameters.
// Throws: InvalidArgument (via validate_params), NonFinite.
SystemConstants derive_constants(const SegwayParams& p);

// Full nonlinear accelerations: assembles the 2x2 mass matrix at the current
// tilt and solves it. The determinant is bounded below by delta > 0, so the
// solve cannot hit the singular branch for valid constants.
// Throws: SingularMatrix, NonFinite.
Accel accelerations(const SystemConstants& c, double torque_ratio, const State& s, double torque);

// Phase-1 plant: tilt held rigidly, wheel translation only. xdd = T / k1.
Accel clamped_acceleration(const SystemConstants& c, double torque);

// Kinetic plus potential energy of the free model; the zero-torque trajectory
// conserves it. Uses R = k2/k3 (both scale with rod mass times length).
double mechanical_energy(const SystemConstants& c, const State& s);

// Power delivered by the motor torque, d/dt of mechanical_energy along
// trajectories: T * (v/R - K*omega).
double input_power(const SystemConstants& c, double torque_ratio, const State& s, double torque);

}  // namespace segway
