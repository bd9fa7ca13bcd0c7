#pragma once

#include <functional>

#include "segway/errors.hpp"

// Reference values frozen from an independent computation (closed forms via
// Cramer's rule plus numpy cross-checks), not read back from the library.
// Tolerances in the tests allow for summation-order differences only.
namespace ref {

// Grouped constants for the default parameter set.
inline constexpr double k1 = 0.36250000000000004;
inline constexpr double k2 = 0.020000000000000004;
inline constexpr double k3 = 0.4;
inline constexpr double k4 = 0.10667000000000001;
inline constexpr double k5 = 3.9240000000000004;
inline constexpr double k6 = 0.020000000000000004;
inline constexpr double delta = 0.03066787500000001;

// Cramer on [[k1, k2], [k3, k4]] u = (1, 0).
inline constexpr double unit_solve_x = 3.4782325152949127;
inline constexpr double unit_solve_y = -13.042964339720307;

// accelerations at theta = 0.1, omega = 0, T = 1.
inline constexpr double accel_xdd = 7.098916780921693;
inline constexpr double accel_thetadd = -79.06285159341435;

// Linearization of the default parameters.
inline constexpr double d_a23 = -2.5590296034531246;
inline constexpr double d_a43 = 46.382411562587876;
inline constexpr double d_b2 = 7.391121817211006;
inline constexpr double d_b4 = -83.96408293694947;
inline constexpr double d_pole = 6.810463388242233;   // +sqrt(a43)
inline constexpr double d_zero = 4.160710290906001;   // x/T numerator zero

// Pinned numeric plant.
inline constexpr double p_a23 = -3.7200;
inline constexpr double p_a43 = 6.7425;
inline constexpr double p_b2 = 4.3735;
inline constexpr double p_b4 = -2.9270;
inline constexpr double p_pole = 2.596632434519757;
inline constexpr double p_zero = 2.062246377974975;
inline constexpr double p_c0 = -18.599883749999996;   // a23 b4 - a43 b2

// [B, AB, A^2B, A^3B] for the pinned plant, row-major.
inline constexpr double p_ctrb[16] = {
    0.0,     4.3735, 0.0,       10.888440000000001,
    4.3735,  0.0,    10.888440000000001, 0.0,
    0.0,     -2.927, 0.0,       -19.735297499999998,
    -2.927,  0.0,    -19.735297499999998, 0.0,
};

// Placement outputs for the two fixed design targets.
inline constexpr double mode1_kcanon[4] = {0.0, 15.0, 61.0, 110.0};
inline constexpr double g1_paper[4] = {0.0, -0.8064566532573071, -20.840450973693198,
                                       -38.78614218415471};
inline constexpr double g2_paper[4] = {-0.48387399195438513, -1.6129133065146177,
                                       -13.705576666830373, -7.534703227209319};
inline constexpr double g1_derived[4] = {0.0, -0.11723193807339923, -1.1986066904126216,
                                         -1.3204035780206211};
inline constexpr double g2_derived[4] = {-0.0703391628440363, -0.2344638761467886,
                                         -0.9308717983900422, -0.19928701041017202};
inline constexpr double mode1_kcanon_derived2 = 100.63991156258788;

// Roots of the mode-1 target s^4 + 110 s^3 + 54.2575 s^2 + 15 s.
inline constexpr double mode1_real_root = -109.50577473146737;
inline constexpr double mode1_pair_re = -0.2471126342663154;
inline constexpr double mode1_pair_im = 0.27552572194393976;
inline constexpr double mode1_zeta = 0.6676791767766019;

// Roots of the mode-2 target s^4 + 15 s^3 + 31.2575 s^2 + 30 s + 9.
inline constexpr double mode2_real_fast = -12.724421960940077;
inline constexpr double mode2_pair_re = -0.8876902362654935;
inline constexpr double mode2_pair_im = 0.7912331378101558;
inline constexpr double mode2_real_slow = -0.5001975665289335;

// Calibration.
inline constexpr double v_des_pi12 = 4.022833626969675;
inline constexpr double v_des_pi6 = 6.048149731281461;
inline constexpr double stop_dist_pi12 = 12.87306760630296;

// Stop maneuver on the pinned plant (linear model, synthesized gains,
// theta_i = pi/12, t_hold = 3, dt = 1e-3).
inline constexpr double fig_release_x = 10.264524588176004;
inline constexpr double fig_release_v = 4.017789710937586;
inline constexpr double fig_x_target = 23.12145166317628;
inline constexpr double fig_settle_enter = 11.339;
inline constexpr double fig_end_t = 12.339;
inline constexpr double fig_x_final = 23.024189385927407;
inline constexpr double fig_sse = 0.09726227724887337;
inline constexpr double fig_theta_min = -0.2391687677879083;
inline constexpr double fig_omega_min = -0.608280271603958;
inline constexpr double fig_omega_max = 0.08925159441498538;
inline constexpr double fig_hold_ratio = 0.9987433827095815;  // v(3s) / v_des

// Linear-vs-nonlinear tilt gap, derived plant with its own gains.
inline constexpr double lin_nl_gap_pi12 = 0.017811235839988088;
inline constexpr double lin_nl_gap_pi6 = 0.06751169151849662;

// Free nonlinear motion from theta = 0.3: initial energy and worst relative
// drift over 10 s at dt = 1e-3.
inline constexpr double energy_theta03 = 3.748740383328878;
inline constexpr double energy_drift_rel = 2.2356304840035516e-10;

// Open-loop checks: log-slope of |theta| on the pinned linear plant under a
// unit step, and the nonlinear divergence time for the default parameters.
inline constexpr double openloop_logslope = 2.6021709133972806;
inline constexpr double openloop_nl_divergence_t = 0.191;

}  // namespace ref

// True when fn throws segway::Error with exactly the wanted code.
inline bool raises(segway::ErrorCode want, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const segway::Error& e) {
        return e.code() == want;
    } catch (...) {
        return false;
    }
    return false;
}
