#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "closfab/dcn.hpp"
#include "closfab/fabric.hpp"
#include "closfab/scenario.hpp"
#include "closfab/sim.hpp"
#include "closfab/theory.hpp"

namespace closfab::report {

using Json = nlohmann::ordered_json;

/// Doubles are written with 12 significant digits ("%.12g").
std::string format_number(double value);

// Simulation rows. Column order is fixed:
// arch,middle,d,l,m,w,load,policy,seed,arrivals,blocked,blocking_prob,
// ci_lo,ci_hi,rng_name,wall_seconds
const std::vector<std::string>& sim_columns();
/// `with_timing` false writes wall_seconds as 0 so output is reproducible.
std::string sim_csv(const std::vector<sim::SimStats>& rows, bool with_timing);
Json sim_json(const std::vector<sim::SimStats>& rows, const ScenarioConfig& config, bool with_timing);

std::string complexity_csv(const theory::ComplexityReport& report);
Json complexity_json(const theory::ComplexityReport& report);

std::string theory_csv(const theory::TheoreticalLimit& limit);
Json theory_json(const theory::TheoreticalLimit& limit);

/// Element roster, fiber list and occupied slots of a fabric.
Json fabric_json(const Fabric& fabric);

/// Spine-Leaf topology: leaves, spine slots, ring adjacency.
Json topology_json(const dcn::SpineLeafSpec& spec);

/// Minimal CSV reader for the tool's own output (no quoting).
std::vector<std::vector<std::string>> read_csv(std::string_view text);

}  // namespace closfab::report
