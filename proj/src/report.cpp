#include "segway/report.hpp"

#include <cmath>
#include <sstream>

namespace segway {

namespace {

std::string format_complex(const Complex& z) {
    if (z.imag() == 0.0) return format_double(z.real());
    const std::string re = format_double(z.real());
    const std::string im = format_double(std::fabs(z.imag()));
    return re + (z.imag() >= 0.0 ? "+" : "-") + im + "i";
}

template <typename Seq>
std::string format_complex_list(const Seq& zs) {
    std::string out;
    for (const Complex& z : zs) {
        if (!out.empty()) out += ", ";
        out += format_complex(z);
    }
    return out;
}

std::string format_vec(const Vec4& v) {
    std::string out = "[";
    for (int i = 0; i < 4; ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    return out + "]";
}

std::string format_poly(const RealPolynomial& p) {
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const double c = p.c[i];
        if (c == 0.0 && !(out.empty() && i == 0)) continue;
        const double mag = std::fabs(c);
        if (out.empty()) {
            if (c < 0.0) out += "-";
        } else {
            out += c < 0.0 ? " - " : " + ";
        }
        const bool unit = mag == 1.0 && i > 0;
        if (!unit) out += format_double(mag);
        if (i > 1)
            out += (unit ? "s^" : " s^") + std::to_string(i);
        else if (i == 1)
            out += unit ? "s" : " s";
    }
    return out;
}

std::string section(const std::string& name) { return "-- " + name + " --\n"; }

void matrix_rows(std::ostringstream& os, const Mat4& m, const char* indent) {
    for (int i = 0; i < 4; ++i) {
        os << indent << "[";
        for (int j = 0; j < 4; ++j) {
            if (j) os << ", ";
            os << format_double(m[i][j]);
        }
        os << "]\n";
    }
}

std::string format_metric(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("-");
}

}  // namespace

std::string analysis_report(const SegwayParams& params, PlantSource source) {
    const SystemConstants c = derive_constants(params);
    const StateSpace derived = linearize(c, params.torque_ratio);
    const StateSpace paper = paper_numeric_plant();
    const StateSpace& ss = source == PlantSource::Derived ? derived : paper;

    std::ostringstream os;
    os << "segway plant analysis\n=====================\n\n";

    os << section("parameters");
    os << "source : " << plant_source_name(source) << "\n";
    if (source == PlantSource::Derived) {
        os << "m      = " << format_double(params.rod_mass) << "   rod mass, kg\n";
        os << "M      = " << format_double(params.wheel_mass) << "   wheel assembly mass, kg\n";
        os << "I_r    = " << format_double(params.rod_inertia) << "   rod inertia, kg m^2\n";
        os << "I_w    = " << format_double(params.wheel_inertia) << "   wheel inertia, kg m^2\n";
        os << "l      = " << format_double(params.rod_length) << "   pivot to rod c.o.m., m\n";
        os << "R      = " << format_double(params.wheel_radius) << "   wheel radius, m\n";
        os << "g      = " << format_double(params.gravity) << "   gravity, m/s^2\n";
        os << "K      = " << format_double(params.torque_ratio) << "   reaction torque ratio\n";
    } else {
        os << "note   : numeric matrix pinned from the reference tables; no positive\n"
              "         parameter set reproduces it (it would require k3 < 0), so no\n"
              "         parameter breakdown applies.\n";
    }
    os << "\n" << section("constants");
    if (source == PlantSource::Derived) {
        os << "k1 = " << format_double(c.k1) << "\n";
        os << "k2 = " << format_double(c.k2) << "\n";
        os << "k3 = " << format_double(c.k3) << "\n";
        os << "k4 = " << format_double(c.k4) << "\n";
        os << "k5 = " << format_double(c.k5) << "\n";
        os << "k6 = " << format_double(c.k6) << "\n";
        os << "delta = " << format_double(c.delta) << "   (k1 k4 - k2 k3 > 0)\n";
    } else {
        os << "not applicable for the pinned numeric plant.\n";
    }

    os << "\n" << section("state space");
    os << "state order (x, v, theta, omega), input torque\n";
    os << "a23 = " << format_double(ss.A[1][2]) << "   (theta -> xdd)\n";
    os << "a43 = " << format_double(ss.A[3][2]) << "   (theta -> thetadd)\n";
    os << "b2  = " << format_double(ss.B[1]) << "   (T -> xdd)\n";
    os << "b4  = " << format_double(ss.B[3]) << "   (T -> thetadd)\n";
    os << "sign note: solving the linearized force balance for (xdd, thetadd) fixes\n"
          "a43 > 0 (gravity destabilizes the upright pole pair at +/-sqrt(a43)) and\n"
          "b4 < 0; the reference displays both rows with flipped signs, contradicting\n"
          "its own transfer functions and pole locations.\n";

    const TransferSet tf = transfer_functions(ss);
    os << "\n" << section("transfer functions");
    os << "common denominator: " << format_poly(tf.den) << "\n";
    os << "x/T     : " << format_poly(tf.num[0]) << "\n";
    os << "v/T     : " << format_poly(tf.num[1]) << "\n";
    os << "theta/T : " << format_poly(tf.num[2]) << "\n";
    os << "omega/T : " << format_poly(tf.num[3]) << "\n";
    os << "zeros of x/T: " << format_complex_list(poly_roots(tf.num[0])) << "\n";
    os << "note: numerators and denominator share roots at the origin; common\n"
          "factors are reported, not cancelled.\n";

    const Mat4 ctrb = controllability_matrix(ss);
    const int r = rank(ctrb);
    os << "\n" << section("controllability");
    os << "columns [B, AB, A^2B, A^3B]:\n";
    matrix_rows(os, ctrb, "  ");
    if (r == 4)
        os << "rank 4 (full): all four states reachable from the torque input.\n";
    else
        os << "rank " << r << ": NOT fully controllable.\n";

    const StabilityReport st = classify_stability(ss);
    os << "\n" << section("stability");
    os << "open-loop poles: " << format_complex_list(st.poles) << "\n";
    os << "verdict: " << (st.unstable ? "unstable" : "not unstable")
       << (st.marginal ? " (marginal poles on the imaginary axis)" : "") << "\n";

    const StabilityReport st_d = classify_stability(derived);
    const StabilityReport st_p = classify_stability(paper);
    const std::vector<Complex> zeros_d = poly_roots(transfer_functions(derived).num[0]);
    const std::vector<Complex> zeros_p = poly_roots(transfer_functions(paper).num[0]);
    os << "\n" << section("discrepancies");
    os << "entry         derived          reference\n";
    os << "a23           " << format_double(derived.A[1][2]) << "      " << format_double(paper.A[1][2]) << "\n";
    os << "a43           " << format_double(derived.A[3][2]) << "       " << format_double(paper.A[3][2]) << "\n";
    os << "b2            " << format_double(derived.B[1]) << "       " << format_double(paper.B[1]) << "\n";
    os << "b4            " << format_double(derived.B[3]) << "      " << format_double(paper.B[3]) << "\n";
    os << "unstable pole " << format_double(st_d.poles[3].real()) << "       " << format_double(st_p.poles[3].real()) << "\n";
    os << "x/T zero      " << format_double(zeros_d.back().real()) << "       " << format_double(zeros_p.back().real()) << "\n";
    os << "the same Figure-1 parameters feed both; the reference's numeric tables are\n"
          "not reproducible from any positive parameter assignment.\n";
    os << "held velocity: calibration 7 tanh(2.5 theta) gives "
       << format_double(velocity_calibration(0.2617993877991494))
       << " m/s at tilt pi/12 where the reference narration says about 2.5 m/s;\n"
          "the discrepancy is unresolved there, the calibration above is what runs.\n";
    os << "mode-1 velocity gain: applied as a magnitude (positive coefficient on the\n"
          "velocity error), since the clamped plant xdd = T/k1 needs positive feedback\n"
          "to chase v_des.\n";
    return os.str();
}

std::string placement_report(PlantSource source, const StateSpace& ss,
                             const Placement& placement) {
    std::ostringstream os;
    os << "pole placement\n==============\n\n";
    os << "plant source  : " << plant_source_name(source) << "\n";
    os << "desired poly  : " << format_poly(placement.desired) << "\n";
    os << "desired roots : " << format_complex_list(placement.desired_roots) << "\n";
    os << "k_canon       : " << format_vec(placement.k_canon) << "   (ascending, s^0..s^3)\n";
    os << "gains         : kp_x = " << format_double(placement.gains[0])
       << ", kd_x = " << format_double(placement.gains[1])
       << ", kp_theta = " << format_double(placement.gains[2])
       << ", kd_theta = " << format_double(placement.gains[3]) << "\n";
    os << "achieved poles: " << format_complex_list(placement.achieved) << "\n";
    os << "max pole error: " << format_double(placement.max_pole_error) << "\n";
    bool unstable = false, marginal = false;
    for (const Complex& p : placement.achieved) {
        if (p.real() > 1e-9) unstable = true;
        if (std::fabs(p.real()) <= 1e-9) marginal = true;
    }
    os << "closed loop   : " << (unstable ? "unstable" : "stable")
       << (marginal ? " (marginal pole on the imaginary axis)" : "") << "\n";
    (void)ss;
    return os.str();
}

std::string metrics_report(const ScenarioResult& result) {
    const Scenario& sc = result.scenario;
    const Trajectory& traj = result.trajectory;
    const ScenarioMetrics& m = result.metrics;
    std::ostringstream os;
    os << "scenario metrics\n================\n\n";
    os << "model         : " << model_kind_name(sc.model) << "\n";
    os << "plant source  : " << plant_source_name(sc.source) << "\n";
    os << "theta_i       = " << format_double(sc.theta_i) << "\n";
    os << "t_hold        = " << format_double(sc.t_hold) << "\n";
    os << "dt            = " << format_double(sc.dt) << "\n";
    os << "v_des         = " << format_double(traj.v_des) << " m/s\n";
    os << "gains mode 1  : " << format_vec(result.gains_mode1) << "\n";
    os << "gains mode 2  : " << format_vec(result.gains_mode2) << "\n";
    if (std::isfinite(traj.release_time)) {
        os << "release       : t = " << format_double(traj.release_time)
           << ", x = " << format_double(traj.release_x)
           << ", v = " << format_double(traj.release_v) << "\n";
        os << "x_target      = " << format_double(traj.x_target) << "\n";
    } else {
        os << "release       : never reached\n";
    }
    os << "hold phase clamps the tilt and uses constants from the scenario parameters\n"
          "regardless of plant source.\n";
    if (traj.settled)
        os << "settled       : yes, in band from t = " << format_double(traj.settle_enter_time)
           << " (confirmed after 1 s more)\n";
    else
        os << "settled       : no\n";
    os << "flags         : " << (traj.diverged ? "diverged" : (traj.not_settled ? "not settled" : "none"))
       << "\n";
    os << "samples       = " << traj.samples.size() << "\n";

    os << "\nphase-2 metrics (times relative to release, absent printed as -)\n";
    os << "signal  rise        settle      overshoot   sse\n";
    const auto row = [&](const char* name, const ResponseMetrics& rm) {
        os << name << format_metric(rm.rise_time) << "  " << format_metric(rm.settling_time)
           << "  " << format_metric(rm.overshoot) << "  "
           << format_metric(rm.steady_state_error) << "\n";
    };
    row("x       ", m.x);
    row("v       ", m.v);
    row("theta   ", m.theta);
    row("omega   ", m.omega);
    os << "\nhold-phase velocity vs v_des: rise " << format_metric(m.hold_v.rise_time)
       << ", sse " << format_metric(m.hold_v.steady_state_error) << "\n";
    return os.str();
}

std::string open_loop_summary(const Trajectory& traj, PlantSource source, ModelKind model,
                              double torque_step) {
    std::ostringstream os;
    os << "open-loop run\n=============\n\n";
    os << "model         : " << model_kind_name(model) << "\n";
    os << "plant source  : " << plant_source_name(source) << "\n";
    os << "torque step   = " << format_double(torque_step) << " N m\n";
    os << "samples       = " << traj.samples.size() << "\n";
    if (!traj.samples.empty()) {
        const Sample& last = traj.samples.back();
        os << "end           : t = " << format_double(last.t)
           << ", theta = " << format_double(last.s.theta) << "\n";
    }
    os << "diverged      : " << (traj.diverged ? "yes (truncated, flagged in the csv)" : "no")
       << "\n";
    return os.str();
}

}  // namespace segway
