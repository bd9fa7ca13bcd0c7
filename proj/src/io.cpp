#include "segway/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace segway {

const char* const kTrajectoryCsvHeader = "t,x,v,theta,omega,torque,mode,flag";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = kTrajectoryCsvHeader;
    out += '\n';
    for (const Sample& s : traj.samples) {
        out += format_double(s.t);
        out += ',';
        out += format_double(s.s.x);
        out += ',';
        out += format_double(s.s.v);
        out += ',';
        out += format_double(s.s.theta);
        out += ',';
        out += format_double(s.s.omega);
        out += ',';
        out += format_double(s.torque);
        out += ',';
        out += mode_name(s.mode);
        out += ',';
        out += std::to_string(s.flags);
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    write_text_file(path, trajectory_to_csv(traj));
}

namespace {

double parse_field_double(const std::string& field) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        raise(ErrorCode::ConfigError, "csv: not a number: '" + field + "'");
    return v;
}

}  // namespace

Trajectory parse_trajectory_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryCsvHeader)
        raise(ErrorCode::ConfigError, "csv: bad or missing header");
    Trajectory traj;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string, 8> fields;
        size_t start = 0;
        for (int i = 0; i < 8; ++i) {
            const size_t comma = line.find(',', start);
            const bool last = i == 7;
            if (last != (comma == std::string::npos))
                raise(ErrorCode::ConfigError, "csv: row must have 8 fields: '" + line + "'");
            fields[i] = line.substr(start, last ? std::string::npos : comma - start);
            start = comma + 1;
        }
        Sample s{};
        s.t = parse_field_double(fields[0]);
        s.s.x = parse_field_double(fields[1]);
        s.s.v = parse_field_double(fields[2]);
        s.s.theta = parse_field_double(fields[3]);
        s.s.omega = parse_field_double(fields[4]);
        s.torque = parse_field_double(fields[5]);
        const auto mode = mode_from_name(fields[6].c_str());
        if (!mode) raise(ErrorCode::ConfigError, "csv: unknown mode: '" + fields[6] + "'");
        s.mode = *mode;
        char* end = nullptr;
        const long flags = std::strtol(fields[7].c_str(), &end, 10);
        if (end == fields[7].c_str() || *end != '\0' || flags < 0 || flags > 3)
            raise(ErrorCode::ConfigError, "csv: flag out of range: '" + fields[7] + "'");
        s.flags = static_cast<unsigned>(flags);
        if (s.flags & kFlagDiverged) traj.diverged = true;
        traj.samples.push_back(s);
    }
    return traj;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) raise(ErrorCode::IoError, "cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) raise(ErrorCode::IoError, "read failed: " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) raise(ErrorCode::IoError, "cannot open for writing: " + path);
    f << content;
    f.flush();
    if (!f) raise(ErrorCode::IoError, "write failed: " + path);
}

}  // namespace segway
