#pragma once

#include "borbit/counterexample.hpp"
#include "borbit/metric.hpp"
#include "borbit/product.hpp"

#include <json.hpp>

#include <string>

namespace borbit {

// CSV/JSON renderings of the report types. Exact rationals are written as
// "p/q" text; each gets a companion *_float column/field with the nearest
// double for plotting. All output is deterministic given the inputs.

std::string property_report_csv(const PropertyReport& report);
nlohmann::json property_report_json(const PropertyReport& report);

// Columns: i, f_i, d_to_E, d_to_E_float, certified_step_error, delta_i.
// Row i carries the step i -> i+1 bookkeeping; the last row leaves it empty.
std::string trajectory_csv(const Trajectory& trajectory, const TargetSet& target);

nlohmann::json monitor_summary_json(const MonitorReport& report, std::size_t horizon);

// Columns: i, f_i, d_pair, d_pair_float, err_x, err_y, delta_i.
std::string pair_run_csv(const PairReport& report);

nlohmann::json pair_summary_json(const PairReport& report, std::size_t horizon);

// Columns: i, coordinates, d_to_zero, d_to_zero_float, delta_i.
std::string divergent_orbit_csv(const DivergentOrbit& orbit);

// Round-trippable orbit serialization (the verify command's input).
nlohmann::json divergent_orbit_json(const DivergentOrbit& orbit);
DivergentOrbit divergent_orbit_from_json(const nlohmann::json& data);

std::string verification_report_csv(const VerificationReport& report);
nlohmann::json verification_report_json(const VerificationReport& report);

}  // namespace borbit
