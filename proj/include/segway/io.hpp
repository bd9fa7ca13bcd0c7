#pragma once

#include <string>

#include "segway/simulate.hpp"

namespace segway {

// Shortest round-trippable decimal at 9 significant digits ("%.9g").
std::string format_double(double v);

// Trajectory CSV: header "t,x,v,theta,omega,torque,mode,flag", one row per
// sample, %.9g numbers, LF line endings, trailing newline.
extern const char* const kTrajectoryCsvHeader;

std::string trajectory_to_csv(const Trajectory& traj);

// Throws: IoError.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// Inverse of trajectory_to_csv for the sample rows; run-level bookkeeping
// (release, targets) is not part of the CSV and comes back unset.
// Throws: ConfigError on any malformed header, row, or field.
Trajectory parse_trajectory_csv(const std::string& text);

// Throws: IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace segway
