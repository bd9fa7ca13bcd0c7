#include "segway/capi.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "segway/report.hpp"

using namespace segway;

struct sgw_model {
    SegwayParams params;
    PlantSource source;
    SystemConstants constants;
    StateSpace plant;
};

struct sgw_trajectory {
    Trajectory traj;
    // Present only for scenario runs.
    bool is_scenario;
    ScenarioResult scenario;
    // Open-loop bookkeeping for the summary.
    PlantSource source;
    ModelKind model;
    double torque_step;
};

namespace {

thread_local std::string g_last_error = "ok";

sgw_status code_to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return SGW_ERR_INVALID_ARGUMENT;
        case ErrorCode::SingularMatrix: return SGW_ERR_SINGULAR_MATRIX;
        case ErrorCode::NoConvergence: return SGW_ERR_NO_CONVERGENCE;
        case ErrorCode::Uncontrollable: return SGW_ERR_UNCONTROLLABLE;
        case ErrorCode::VerificationFailed: return SGW_ERR_VERIFICATION_FAILED;
        case ErrorCode::NonFinite: return SGW_ERR_NONFINITE;
        case ErrorCode::IoError: return SGW_ERR_IO;
        case ErrorCode::ConfigError: return SGW_ERR_CONFIG;
    }
    return SGW_ERR_INVALID_ARGUMENT;
}

sgw_status fail(sgw_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs the body, translating exceptions into statuses.
template <typename Fn>
sgw_status guarded(Fn&& fn) {
    try {
        fn();
        return SGW_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return code_to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SGW_ERR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SGW_ERR_INVALID_ARGUMENT;
    }
}

SegwayParams to_params(const sgw_params& p) {
    SegwayParams out;
    out.rod_mass = p.m;
    out.wheel_mass = p.M;
    out.rod_inertia = p.I_r;
    out.wheel_inertia = p.I_w;
    out.rod_length = p.l;
    out.wheel_radius = p.R;
    out.gravity = p.g;
    out.torque_ratio = p.K;
    return out;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void fill_placement(const Placement& p, sgw_placement* out) {
    for (int i = 0; i < 5; ++i) out->desired[i] = p.desired.c[4 - i];
    for (int i = 0; i < 4; ++i) {
        out->k_canon[i] = p.k_canon[i];
        out->gains[i] = p.gains[i];
        out->poles_re[i] = p.achieved[i].real();
        out->poles_im[i] = p.achieved[i].imag();
    }
    out->max_pole_error = p.max_pole_error;
}

Placement placement_from(const sgw_model* model, const sgw_placement* p) {
    // Rebuild through the same pipeline so reports always describe verified
    // gains, whatever the caller did to the struct.
    RealPolynomial desired{{p->desired[4], p->desired[3], p->desired[2], p->desired[1],
                            p->desired[0]}};
    return place_poles(model->plant, desired);
}

}  // namespace

extern "C" {

const char* sgw_status_name(sgw_status status) {
    switch (status) {
        case SGW_OK: return "ok";
        case SGW_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SGW_ERR_SINGULAR_MATRIX: return "singular matrix";
        case SGW_ERR_NO_CONVERGENCE: return "no convergence";
        case SGW_ERR_UNCONTROLLABLE: return "uncontrollable";
        case SGW_ERR_VERIFICATION_FAILED: return "verification failed";
        case SGW_ERR_NONFINITE: return "non-finite value";
        case SGW_ERR_IO: return "io error";
        case SGW_ERR_CONFIG: return "config error";
    }
    return "unknown";
}

const char* sgw_last_error(void) { return g_last_error.c_str(); }

sgw_params sgw_params_default(void) {
    return sgw_params{2.0, 3.5, 0.02667, 0.004375, 0.2, 0.05, 9.81, 6.0};
}

sgw_status sgw_model_create(const sgw_params* params, sgw_plant_source source, sgw_model** out) {
    if (!params || !out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    *out = nullptr;
    return guarded([&] {
        auto model = std::make_unique<sgw_model>();
        model->params = to_params(*params);
        model->source = source == SGW_PLANT_PAPER ? PlantSource::Paper : PlantSource::Derived;
        model->constants = derive_constants(model->params);
        model->plant = model->source == PlantSource::Derived
                           ? linearize(model->constants, model->params.torque_ratio)
                           : paper_numeric_plant();
        *out = model.release();
    });
}

void sgw_model_free(sgw_model* model) { delete model; }

sgw_status sgw_model_constants(const sgw_model* model, double k_out[6], double* delta_out) {
    if (!model || !k_out || !delta_out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    const SystemConstants& c = model->constants;
    k_out[0] = c.k1;
    k_out[1] = c.k2;
    k_out[2] = c.k3;
    k_out[3] = c.k4;
    k_out[4] = c.k5;
    k_out[5] = c.k6;
    *delta_out = c.delta;
    return SGW_OK;
}

sgw_status sgw_model_state_space(const sgw_model* model, double a_out[16], double b_out[4]) {
    if (!model || !a_out || !b_out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a_out[i * 4 + j] = model->plant.A[i][j];
        b_out[i] = model->plant.B[i];
    }
    return SGW_OK;
}

sgw_status sgw_model_controllability(const sgw_model* model, double c_out[16], int* rank_out) {
    if (!model || !c_out || !rank_out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        const Mat4 ctrb = controllability_matrix(model->plant);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) c_out[i * 4 + j] = ctrb[i][j];
        *rank_out = rank(ctrb);
    });
}

sgw_status sgw_place_poles_coeffs(const sgw_model* model, const double desired_descending[5],
                                  sgw_placement* out) {
    if (!model || !desired_descending || !out)
        return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        RealPolynomial desired{{desired_descending[4], desired_descending[3],
                                desired_descending[2], desired_descending[1],
                                desired_descending[0]}};
        fill_placement(place_poles(model->plant, desired), out);
    });
}

sgw_status sgw_place_poles_roots(const sgw_model* model, const double roots_re[4],
                                 const double roots_im[4], sgw_placement* out) {
    if (!model || !roots_re || !roots_im || !out)
        return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        std::vector<Complex> roots;
        for (int i = 0; i < 4; ++i) roots.emplace_back(roots_re[i], roots_im[i]);
        fill_placement(place_poles(model->plant, roots), out);
    });
}

sgw_status sgw_place_poles_kcanon(const sgw_model* model, const double k_canon[4],
                                  sgw_placement* out) {
    if (!model || !k_canon || !out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        const RealPolynomial open = characteristic_polynomial(model->plant.A).poly;
        RealPolynomial desired = open;
        for (int i = 0; i < 4; ++i) desired.c[i] = open.c[i] + k_canon[i];
        fill_placement(place_poles(model->plant, desired), out);
    });
}

sgw_status sgw_default_gains(const sgw_model* model, double mode1_out[4], double mode2_out[4]) {
    if (!model || !mode1_out || !mode2_out)
        return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        const Vec4 g1 = default_gains_mode1(model->plant);
        const Vec4 g2 = default_gains_mode2(model->plant);
        for (int i = 0; i < 4; ++i) {
            mode1_out[i] = g1[i];
            mode2_out[i] = g2[i];
        }
    });
}

sgw_status sgw_analyze_report(const sgw_model* model, char** text_out) {
    if (!model || !text_out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] { *text_out = dup_string(analysis_report(model->params, model->source)); });
}

sgw_status sgw_placement_report(const sgw_model* model, const sgw_placement* placement,
                                char** text_out) {
    if (!model || !placement || !text_out)
        return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        const Placement p = placement_from(model, placement);
        *text_out = dup_string(placement_report(model->source, model->plant, p));
    });
}

void sgw_string_free(char* text) { delete[] text; }

sgw_scenario sgw_scenario_default(void) {
    sgw_scenario sc{};
    sc.theta_i = 0.2617993877991494;  // pi/12
    sc.t_hold = 3.0;
    sc.dt = 1e-3;
    sc.t_max = 30.0;
    sc.model = SGW_MODEL_NONLINEAR;
    sc.use_default_gains = 1;
    sc.has_torque_limit = 0;
    sc.torque_limit = 0.0;
    sc.control_period = 0.0;
    sc.run_to_t_max = 0;
    return sc;
}

sgw_status sgw_run_scenario(const sgw_model* model, const sgw_scenario* scenario,
                            sgw_trajectory** out) {
    if (!model || !scenario || !out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    *out = nullptr;
    return guarded([&] {
        Scenario sc;
        sc.params = model->params;
        sc.source = model->source;
        sc.model = scenario->model == SGW_MODEL_LINEAR ? ModelKind::Linear : ModelKind::Nonlinear;
        sc.theta_i = scenario->theta_i;
        sc.t_hold = scenario->t_hold;
        sc.dt = scenario->dt;
        sc.t_max = scenario->t_max;
        if (!scenario->use_default_gains) {
            Vec4 g1, g2;
            for (int i = 0; i < 4; ++i) {
                g1[i] = scenario->gains_mode1[i];
                g2[i] = scenario->gains_mode2[i];
            }
            sc.gains_mode1 = g1;
            sc.gains_mode2 = g2;
        }
        if (scenario->has_torque_limit) sc.torque_limit = scenario->torque_limit;
        if (scenario->control_period > 0.0) sc.control_period = scenario->control_period;
        sc.run_to_t_max = scenario->run_to_t_max != 0;

        auto traj = std::make_unique<sgw_trajectory>();
        traj->scenario = run_scenario(sc);
        traj->traj = traj->scenario.trajectory;
        traj->is_scenario = true;
        traj->source = sc.source;
        traj->model = sc.model;
        traj->torque_step = 0.0;
        *out = traj.release();
    });
}

sgw_status sgw_run_open_loop(const sgw_model* model, sgw_model_kind kind, double torque_step,
                             double t_max, double dt, sgw_trajectory** out) {
    if (!model || !out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    *out = nullptr;
    return guarded([&] {
        const ModelKind mk = kind == SGW_MODEL_LINEAR ? ModelKind::Linear : ModelKind::Nonlinear;
        auto traj = std::make_unique<sgw_trajectory>();
        traj->traj = run_open_loop(model->params, model->source, mk, torque_step, t_max, dt);
        traj->is_scenario = false;
        traj->source = model->source;
        traj->model = mk;
        traj->torque_step = torque_step;
        *out = traj.release();
    });
}

size_t sgw_trajectory_size(const sgw_trajectory* traj) {
    return traj ? traj->traj.samples.size() : 0;
}

sgw_status sgw_trajectory_sample(const sgw_trajectory* traj, size_t i, double* t_out,
                                 double state_out[4], double* torque_out, int* mode_out,
                                 unsigned* flags_out) {
    if (!traj || !t_out || !state_out || !torque_out || !mode_out || !flags_out)
        return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (i >= traj->traj.samples.size())
        return fail(SGW_ERR_INVALID_ARGUMENT, "sample index out of range");
    const Sample& s = traj->traj.samples[i];
    *t_out = s.t;
    state_out[0] = s.s.x;
    state_out[1] = s.s.v;
    state_out[2] = s.s.theta;
    state_out[3] = s.s.omega;
    *torque_out = s.torque;
    *mode_out = static_cast<int>(s.mode);
    *flags_out = s.flags;
    return SGW_OK;
}

int sgw_trajectory_diverged(const sgw_trajectory* traj) {
    return traj && traj->traj.diverged ? 1 : 0;
}

int sgw_trajectory_settled(const sgw_trajectory* traj) {
    return traj && traj->traj.settled ? 1 : 0;
}

sgw_status sgw_trajectory_write_csv(const sgw_trajectory* traj, const char* path) {
    if (!traj || !path) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] { write_trajectory_csv(traj->traj, path); });
}

sgw_status sgw_trajectory_csv(const sgw_trajectory* traj, char** text_out) {
    if (!traj || !text_out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] { *text_out = dup_string(trajectory_to_csv(traj->traj)); });
}

sgw_status sgw_metrics_report(const sgw_trajectory* traj, char** text_out) {
    if (!traj || !text_out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (!traj->is_scenario)
        return fail(SGW_ERR_INVALID_ARGUMENT, "metrics report requires a scenario trajectory");
    return guarded([&] { *text_out = dup_string(metrics_report(traj->scenario)); });
}

sgw_status sgw_open_loop_report(const sgw_trajectory* traj, char** text_out) {
    if (!traj || !text_out) return fail(SGW_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (traj->is_scenario)
        return fail(SGW_ERR_INVALID_ARGUMENT, "open-loop report requires an open-loop trajectory");
    return guarded([&] {
        *text_out =
            dup_string(open_loop_summary(traj->traj, traj->source, traj->model, traj->torque_step));
    });
}

void sgw_trajectory_free(sgw_trajectory* traj) { delete traj; }

}  // extern "C"
