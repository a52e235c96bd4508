#pragma once

// JSON documents written by the command-line tool. Layouts are described in
// docs/output_schema.md.

#include <string>
#include <vector>

#include <json.hpp>

#include "rdv/postprocess.hpp"
#include "rdv/scenario.hpp"

namespace rdv::cli {

using nlohmann::ordered_json;

ordered_json tool_info();
ordered_json scenario_ref(const Scenario& scenario);
ordered_json impulses_json(const ImpulsePlan& plan);
ordered_json terminal_error_json(const TerminalError& err);

/// Everything except the "timing" object is a deterministic function of the inputs.
ordered_json solution_document(const Scenario& scenario, const RendezvousResult& result, Formulation form,
                               bool merged);

ordered_json inner_node_document(const Scenario& scenario, int resolution, const InnerNodeResult& result,
                                 double seconds);

/// Saved plan plus the scenario identity it was computed for.
struct SavedPlan {
    std::string scenario_name;
    std::string scenario_hash;
    ImpulsePlan plan;
};

/// Reads the impulse list back from a solution (or inner-node) document.
/// Throws InputError on missing or malformed fields.
SavedPlan read_plan(const std::string& text, const std::string& source);

std::string trajectory_csv(const std::vector<TrajectorySample>& samples, const Scenario& scenario,
                           const std::vector<Vec3>* inertial);

std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string scan_csv(const InnerNodeResult& result);

}  // namespace rdv::cli
