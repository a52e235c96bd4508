#pragma once

// Scenario documents (JSON, strict schema, explicit units) and the built-in cases.
//
//   {
//     "name": "...",
//     "orbit": {"a": 6763.0, "a_unit": "km", "e": 0.0052, "i_deg": 52.0,
//               "raan_deg": 0.0, "argp_deg": 0.0, "theta0_deg": 0.0, "mu": 398600.4418},
//     "boundary": {"r0": {"value": [x, y, z], "unit": "km"}, "v0": {...}, "rf": {...}, "vf": {...}},
//     "horizon": {"dt_seconds": 55350.0} | {"thetaf_rad": 10.0},
//     "options": {"planar": true, "mesh_M": 257, "extraction_tol": 1e-5,
//                 "output_units": {"length": "km", "velocity": "m/s"}}
//   }
//
// Angles may be given as *_deg or *_rad. Units: m, km, m/s, km/s, normalized.
// A normalized scenario uses "normalized" for a_unit and every boundary vector.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rdv/scenario.hpp"

namespace rdv {

Scenario parse_scenario(std::string_view text, const std::string& source = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes internal values losslessly; parse_scenario(to_json(s)) == s.
std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// FNV-1a (64 bit, hex) of the canonical serialization.
std::string scenario_hash(const Scenario& scenario);

std::vector<std::string> builtin_names();
/// Throws InputError listing the available names when `name` is unknown.
Scenario builtin(const std::string& name);

/// Built-in name or path to a scenario file.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace rdv
