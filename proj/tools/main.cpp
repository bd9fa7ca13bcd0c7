// Command-line front end. Links only the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "segway/capi.h"

namespace {

// Exit codes: 0 success, 1 usage, 2 numeric/synthesis failure, 3 config or
// file problem.
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitConfig = 3;

struct ConfigFail {
    std::string message;
};

[[noreturn]] void config_fail(const std::string& message) { throw ConfigFail{message}; }

int status_exit_code(sgw_status status) {
    switch (status) {
        case SGW_OK: return 0;
        case SGW_ERR_SINGULAR_MATRIX:
        case SGW_ERR_NO_CONVERGENCE:
        case SGW_ERR_UNCONTROLLABLE:
        case SGW_ERR_VERIFICATION_FAILED:
        case SGW_ERR_NONFINITE: return kExitNumeric;
        default: return kExitConfig;
    }
}

[[noreturn]] void fail_status(const std::string& what, sgw_status status) {
    std::fprintf(stderr, "error: %s: %s (%s)\n", what.c_str(), sgw_last_error(),
                 sgw_status_name(status));
    std::exit(status_exit_code(status));
}

double parse_double(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') config_fail(what + ": not a number: '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

void parse_vec(const std::string& text, const std::string& what, double* out, int n) {
    const std::vector<std::string> parts = split(text, ',');
    if (static_cast<int>(parts.size()) != n)
        config_fail(what + ": expected " + std::to_string(n) + " comma-separated values");
    for (int i = 0; i < n; ++i) out[i] = parse_double(parts[i], what);
}

// Accepts "a" or "a+bi" / "a-bi".
void parse_complex(const std::string& text, double* re, double* im) {
    const char* begin = text.c_str();
    char* end = nullptr;
    *re = std::strtod(begin, &end);
    if (end == begin) config_fail("poles: not a number: '" + text + "'");
    *im = 0.0;
    if (*end == '\0') return;
    char* end2 = nullptr;
    *im = std::strtod(end, &end2);
    if (end2 == end || end2[0] != 'i' || end2[1] != '\0')
        config_fail("poles: expected re+im*i form: '" + text + "'");
}

// Everything a subcommand needs, accumulated from defaults, then the config
// file, then --param pairs, then dedicated flags.
struct Settings {
    sgw_params params = sgw_params_default();
    sgw_plant_source source = SGW_PLANT_DERIVED;
    sgw_scenario scenario = sgw_scenario_default();
    bool have_gains1 = false, have_gains2 = false;
    double gains1[4] = {}, gains2[4] = {};
    std::string out;
    double torque_step = 1.0;
    bool dt_set = false, t_max_set = false;
};

void apply_kv(Settings& s, const std::string& key, const std::string& value) {
    auto num = [&] { return parse_double(value, key); };
    if (key == "m") s.params.m = num();
    else if (key == "M") s.params.M = num();
    else if (key == "I_r") s.params.I_r = num();
    else if (key == "I_w") s.params.I_w = num();
    else if (key == "l") s.params.l = num();
    else if (key == "R") s.params.R = num();
    else if (key == "g") s.params.g = num();
    else if (key == "K") s.params.K = num();
    else if (key == "plant" || key == "plant_source") {
        if (value == "derived") s.source = SGW_PLANT_DERIVED;
        else if (value == "paper") s.source = SGW_PLANT_PAPER;
        else config_fail(key + ": expected derived|paper, got '" + value + "'");
    } else if (key == "model") {
        if (value == "nonlinear") s.scenario.model = SGW_MODEL_NONLINEAR;
        else if (value == "linear") s.scenario.model = SGW_MODEL_LINEAR;
        else config_fail("model: expected nonlinear|linear, got '" + value + "'");
    } else if (key == "theta_i") s.scenario.theta_i = num();
    else if (key == "t_hold") s.scenario.t_hold = num();
    else if (key == "dt") {
        s.scenario.dt = num();
        s.dt_set = true;
    } else if (key == "t_max") {
        s.scenario.t_max = num();
        s.t_max_set = true;
    }
    else if (key == "torque_limit") {
        s.scenario.torque_limit = num();
        s.scenario.has_torque_limit = 1;
    } else if (key == "control_period") s.scenario.control_period = num();
    else if (key == "run_to_t_max") {
        if (value == "true") s.scenario.run_to_t_max = 1;
        else if (value == "false") s.scenario.run_to_t_max = 0;
        else config_fail("run_to_t_max: expected true|false, got '" + value + "'");
    } else if (key == "gains_mode1") {
        parse_vec(value, key, s.gains1, 4);
        s.have_gains1 = true;
    } else if (key == "gains_mode2") {
        parse_vec(value, key, s.gains2, 4);
        s.have_gains2 = true;
    } else if (key == "out") s.out = value;
    else if (key == "torque_step") s.torque_step = num();
    else config_fail("unknown config key: '" + key + "'");
}

// Flat key = value lines; '#' starts a comment; blank lines ignored.
void load_config_file(Settings& s, const std::string& path) {
    std::ifstream f(path);
    if (!f) config_fail("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string t) {
            const size_t a = t.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const size_t b = t.find_last_not_of(" \t\r");
            return t.substr(a, b - a + 1);
        };
        const std::string stripped = strip(line);
        if (stripped.empty()) continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            config_fail(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(stripped.substr(0, eq));
        const std::string value = strip(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            config_fail(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_kv(s, key, value);
    }
}

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> params;
    std::string plant;
    std::string model;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_model) {
    cmd->add_option("--config", flags.config_path, "flat key = value config file");
    cmd->add_option("--param", flags.params, "override one config key, key=value (repeatable)");
    cmd->add_option("--plant", flags.plant, "plant source: derived|paper");
    if (with_model) cmd->add_option("--model", flags.model, "model: nonlinear|linear");
    cmd->add_option("--out", flags.out, "output file path");
}

Settings build_settings(const CommonFlags& flags) {
    Settings s;
    if (!flags.config_path.empty()) load_config_file(s, flags.config_path);
    for (const std::string& kv : flags.params) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) config_fail("--param expects key=value: '" + kv + "'");
        apply_kv(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!flags.plant.empty()) apply_kv(s, "plant", flags.plant);
    if (!flags.model.empty()) apply_kv(s, "model", flags.model);
    if (!flags.out.empty()) s.out = flags.out;
    return s;
}

using ModelPtr = std::unique_ptr<sgw_model, decltype(&sgw_model_free)>;
using TrajPtr = std::unique_ptr<sgw_trajectory, decltype(&sgw_trajectory_free)>;

ModelPtr make_model(const Settings& s) {
    sgw_model* model = nullptr;
    const sgw_status st = sgw_model_create(&s.params, s.source, &model);
    if (st != SGW_OK) fail_status("model", st);
    return ModelPtr(model, &sgw_model_free);
}

void emit_text(const Settings& s, char* text) {
    if (s.out.empty()) {
        std::fputs(text, stdout);
    } else {
        std::ofstream f(s.out, std::ios::binary | std::ios::trunc);
        if (!f) {
            sgw_string_free(text);
            config_fail("cannot open for writing: " + s.out);
        }
        f << text;
    }
    sgw_string_free(text);
}

int cmd_analyze(const Settings& s) {
    const ModelPtr model = make_model(s);
    char* text = nullptr;
    const sgw_status st = sgw_analyze_report(model.get(), &text);
    if (st != SGW_OK) fail_status("analyze", st);
    emit_text(s, text);
    return 0;
}

int cmd_gains(const Settings& s, const std::string& char_opt, const std::string& poles_opt,
              const std::string& kcanon_opt) {
    const ModelPtr model = make_model(s);
    std::string reports;
    auto run_one = [&](const sgw_placement& p) {
        char* text = nullptr;
        const sgw_status st = sgw_placement_report(model.get(), &p, &text);
        if (st != SGW_OK) fail_status("gains report", st);
        reports += text;
        sgw_string_free(text);
    };

    sgw_placement placement{};
    if (!char_opt.empty()) {
        double coeffs[5];
        parse_vec(char_opt, "--char", coeffs, 5);
        const sgw_status st = sgw_place_poles_coeffs(model.get(), coeffs, &placement);
        if (st != SGW_OK) fail_status("gains", st);
        run_one(placement);
    } else if (!poles_opt.empty()) {
        const std::vector<std::string> parts = split(poles_opt, ',');
        if (parts.size() != 4) config_fail("--poles: expected 4 comma-separated poles");
        double re[4], im[4];
        for (int i = 0; i < 4; ++i) parse_complex(parts[i], &re[i], &im[i]);
        const sgw_status st = sgw_place_poles_roots(model.get(), re, im, &placement);
        if (st != SGW_OK) fail_status("gains", st);
        run_one(placement);
    } else if (!kcanon_opt.empty()) {
        double kc[4];
        parse_vec(kcanon_opt, "--kcanon", kc, 4);
        const sgw_status st = sgw_place_poles_kcanon(model.get(), kc, &placement);
        if (st != SGW_OK) fail_status("gains", st);
        run_one(placement);
    } else {
        // No target given: report both fixed two-mode design targets.
        const double mode1[5] = {1.0, 110.0, 54.2575, 15.0, 0.0};
        const double mode2[5] = {1.0, 15.0, 31.2575, 30.0, 9.0};
        for (const double* coeffs : {mode1, mode2}) {
            const sgw_status st = sgw_place_poles_coeffs(model.get(), coeffs, &placement);
            if (st != SGW_OK) fail_status("gains", st);
            run_one(placement);
            reports += "\n";
        }
    }
    if (s.out.empty()) {
        std::fputs(reports.c_str(), stdout);
    } else {
        std::ofstream f(s.out, std::ios::binary | std::ios::trunc);
        if (!f) config_fail("cannot open for writing: " + s.out);
        f << reports;
    }
    return 0;
}

int cmd_simulate(const Settings& s) {
    const ModelPtr model = make_model(s);
    sgw_scenario sc = s.scenario;
    if (s.have_gains1 || s.have_gains2) {
        double d1[4], d2[4];
        const sgw_status st = sgw_default_gains(model.get(), d1, d2);
        if (st != SGW_OK) fail_status("default gains", st);
        for (int i = 0; i < 4; ++i) {
            sc.gains_mode1[i] = s.have_gains1 ? s.gains1[i] : d1[i];
            sc.gains_mode2[i] = s.have_gains2 ? s.gains2[i] : d2[i];
        }
        sc.use_default_gains = 0;
    }
    sgw_trajectory* traj_raw = nullptr;
    sgw_status st = sgw_run_scenario(model.get(), &sc, &traj_raw);
    if (st != SGW_OK) fail_status("simulate", st);
    const TrajPtr traj(traj_raw, &sgw_trajectory_free);

    const std::string csv_path = s.out.empty() ? "trajectory.csv" : s.out;
    st = sgw_trajectory_write_csv(traj.get(), csv_path.c_str());
    if (st != SGW_OK) fail_status("write csv", st);

    char* text = nullptr;
    st = sgw_metrics_report(traj.get(), &text);
    if (st != SGW_OK) fail_status("metrics", st);
    std::fputs(text, stdout);
    sgw_string_free(text);
    std::fprintf(stdout, "\ntrajectory csv: %s\n", csv_path.c_str());
    return 0;
}

int cmd_openloop(const Settings& s, double step, double t_max, double dt) {
    const ModelPtr model = make_model(s);
    sgw_trajectory* traj_raw = nullptr;
    sgw_status st =
        sgw_run_open_loop(model.get(), s.scenario.model, step, t_max, dt, &traj_raw);
    if (st != SGW_OK) fail_status("openloop", st);
    const TrajPtr traj(traj_raw, &sgw_trajectory_free);

    const std::string csv_path = s.out.empty() ? "openloop.csv" : s.out;
    st = sgw_trajectory_write_csv(traj.get(), csv_path.c_str());
    if (st != SGW_OK) fail_status("write csv", st);

    char* text = nullptr;
    st = sgw_open_loop_report(traj.get(), &text);
    if (st != SGW_OK) fail_status("openloop report", st);
    std::fputs(text, stdout);
    sgw_string_free(text);
    std::fprintf(stdout, "\ntrajectory csv: %s\n", csv_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar segway analysis, gain synthesis and simulation"};
    app.require_subcommand(1);

    CommonFlags analyze_flags, gains_flags, simulate_flags, openloop_flags;
    std::string char_opt, poles_opt, kcanon_opt;
    double ol_step = 1.0, ol_tmax = 2.0, ol_dt = 1e-3;

    CLI::App* analyze = app.add_subcommand("analyze", "plant constants, poles, discrepancies");
    add_common(analyze, analyze_flags, false);

    CLI::App* gains = app.add_subcommand("gains", "pole-placement gain synthesis");
    add_common(gains, gains_flags, false);
    gains->add_option("--char", char_opt,
                      "desired characteristic polynomial, 5 descending coefficients");
    gains->add_option("--poles", poles_opt, "4 desired poles, real or re+im*i");
    gains->add_option("--kcanon", kcanon_opt, "canonical feedback, 4 ascending entries");

    CLI::App* simulate = app.add_subcommand("simulate", "two-mode maneuver to a csv trajectory");
    add_common(simulate, simulate_flags, true);

    CLI::App* openloop = app.add_subcommand("openloop", "constant-torque response from rest");
    add_common(openloop, openloop_flags, true);
    openloop->add_option("--step", ol_step, "torque step, N m")->capture_default_str();
    openloop->add_option("--t-max", ol_tmax, "horizon, s")->capture_default_str();
    openloop->add_option("--dt", ol_dt, "integration step, s")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(build_settings(analyze_flags));
        if (gains->parsed()) {
            if ((!char_opt.empty()) + (!poles_opt.empty()) + (!kcanon_opt.empty()) > 1) {
                std::fprintf(stderr, "usage error: --char, --poles and --kcanon are exclusive\n");
                return kExitUsage;
            }
            return cmd_gains(build_settings(gains_flags), char_opt, poles_opt, kcanon_opt);
        }
        if (simulate->parsed()) return cmd_simulate(build_settings(simulate_flags));
        if (openloop->parsed()) {
            Settings s = build_settings(openloop_flags);
            // Config keys apply unless the dedicated flag was given.
            if (openloop->count("--step") == 0) ol_step = s.torque_step;
            if (openloop->count("--t-max") == 0 && s.t_max_set) ol_tmax = s.scenario.t_max;
            if (openloop->count("--dt") == 0 && s.dt_set) ol_dt = s.scenario.dt;
            return cmd_openloop(s, ol_step, ol_tmax, ol_dt);
        }
    } catch (const ConfigFail& e) {
        std::fprintf(stderr, "config error: %s\n", e.message.c_str());
        return kExitConfig;
    }
    return 0;
}
