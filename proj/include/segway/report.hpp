#pragma once

#include <string>

#include "segway/io.hpp"

namespace segway {

// Human-readable analysis of the chosen linear plant: parameters, grouped
// constants, state-space entries with the sign rationale, transfer functions,
// controllability, open-loop stability, and the derived-versus-reference
// discrepancy table. Section headers are stable strings of the form
// "-- name --".
std::string analysis_report(const SegwayParams& params, PlantSource source);

std::string placement_report(PlantSource source, const StateSpace& ss, const Placement& placement);

std::string metrics_report(const ScenarioResult& result);

std::string open_loop_summary(const Trajectory& traj, PlantSource source, ModelKind model,
                              double torque_step);

}  // namespace segway
