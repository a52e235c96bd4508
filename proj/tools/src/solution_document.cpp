#include "solution_document.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include "rdv/errors.hpp"
#include "rdv/scenarios.hpp"

namespace rdv::cli {

namespace {

ordered_json vec_json(const Vec3& v) {
    return ordered_json::array({v.x(), v.y(), v.z()});
}

// CSV header suffix for a unit label.
std::string suffix(const std::string& unit) {
    return unit == "normalized" ? "nd" : unit;
}

const ordered_json& field(const ordered_json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw InputError("missing field", path.empty() ? key : path + "." + key);
    }
    return obj.at(key);
}

double number(const ordered_json& obj, const std::string& key, const std::string& path) {
    const ordered_json& v = field(obj, key, path);
    if (!v.is_number()) {
        throw InputError("expected a number", path + "." + key);
    }
    return v.get<double>();
}

std::ostringstream csv_stream() {
    std::ostringstream os;
    os << std::setprecision(17);
    return os;
}

}  // namespace

ordered_json tool_info() {
    return {{"name", "rdv"}, {"version", RDV_VERSION}};
}

ordered_json scenario_ref(const Scenario& scenario) {
    return {{"name", scenario.name}, {"hash", scenario_hash(scenario)}};
}

ordered_json impulses_json(const ImpulsePlan& plan) {
    ordered_json list = ordered_json::array();
    for (const Impulse& imp : plan.impulses) {
        list.push_back({{"node", imp.node},
                        {"theta_rad", imp.theta},
                        {"t", imp.t},
                        {"dv", vec_json(imp.dv)},
                        {"magnitude", imp.magnitude}});
    }
    return list;
}

ordered_json terminal_error_json(const TerminalError& err) {
    return {{"position", err.position}, {"velocity", err.velocity}, {"scaled", err.scaled}};
}

ordered_json solution_document(const Scenario& scenario, const RendezvousResult& result, Formulation form,
                               bool merged) {
    const ConicSolution& sol = result.solution;
    const UnitSystem& u = scenario.units;
    ordered_json doc;
    doc["tool"] = tool_info();
    doc["scenario"] = scenario_ref(scenario);
    doc["mesh_M"] = result.grid.size();
    doc["form"] = form == Formulation::full ? "full" : "condensed";
    doc["solver"] = {{"status", std::string(to_string(sol.status))},
                     {"iterations", sol.iterations},
                     {"gap", sol.gap},
                     {"primal_residual", sol.residuals.primal},
                     {"dual_residual", sol.residuals.dual}};
    doc["units"] = {{"length", u.length_unit}, {"velocity", u.velocity_unit}, {"time", u.time_unit()}};
    if (result.optimal()) {
        const ImpulsePlan& plan = result.plan;
        doc["extraction_tol"] = plan.tol;
        doc["merged"] = merged;
        doc["objective"] = result.objective;
        doc["total_dv"] = plan.total_dv;
        doc["n_impulses"] = plan.n_impulses();
        doc["dropped"] = {{"count", plan.dropped_count}, {"dv", plan.dropped_dv}};
        doc["impulses"] = impulses_json(plan);
        doc["terminal_error"] = terminal_error_json(plan.terminal_error);
        doc["terminal_error_all_nodes"] = terminal_error_json(result.raw_plan.terminal_error);
    }
    doc["timing"] = {{"solve_s", sol.solve_time}, {"assembly_s", result.assembly_time}};
    return doc;
}

ordered_json inner_node_document(const Scenario& scenario, int resolution, const InnerNodeResult& result,
                                 double seconds) {
    ordered_json doc;
    doc["tool"] = tool_info();
    doc["scenario"] = scenario_ref(scenario);
    doc["mesh_M"] = 3;
    doc["resolution"] = resolution;
    doc["units"] = {{"length", scenario.units.length_unit},
                    {"velocity", scenario.units.velocity_unit},
                    {"time", scenario.units.time_unit()}};
    doc["theta2_rad"] = result.theta2;
    doc["total_dv"] = result.total_dv;
    doc["evaluations"] = result.evaluations;
    doc["extraction_tol"] = result.plan.tol;
    doc["n_impulses"] = result.plan.n_impulses();
    doc["impulses"] = impulses_json(result.plan);
    doc["terminal_error"] = terminal_error_json(result.plan.terminal_error);
    doc["timing"] = {{"total_s", seconds}};
    return doc;
}

SavedPlan read_plan(const std::string& text, const std::string& source) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what(), source);
    }
    SavedPlan out;
    const ordered_json& sc = field(doc, "scenario", "");
    out.scenario_name = field(sc, "name", "scenario").get<std::string>();
    out.scenario_hash = field(sc, "hash", "scenario").get<std::string>();
    if (doc.contains("mesh_M")) {
        out.plan.mesh_M = doc.at("mesh_M").get<int>();
    }
    const ordered_json& list = field(doc, "impulses", "");
    if (!list.is_array()) {
        throw InputError("expected an array", "impulses");
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string path = "impulses[" + std::to_string(k) + "]";
        const ordered_json& item = list[k];
        Impulse imp;
        imp.node = field(item, "node", path).get<int>();
        imp.theta = number(item, "theta_rad", path);
        imp.t = number(item, "t", path);
        const ordered_json& dv = field(item, "dv", path);
        if (!dv.is_array() || dv.size() != 3) {
            throw InputError("expected three components", path + ".dv");
        }
        for (int i = 0; i < 3; ++i) {
            imp.dv(i) = dv[static_cast<std::size_t>(i)].get<double>();
        }
        imp.magnitude = imp.dv.norm();
        if (!out.plan.impulses.empty() && imp.theta < out.plan.impulses.back().theta) {
            throw InputError("impulses must be ordered by anomaly", path + ".theta_rad");
        }
        out.plan.impulses.push_back(imp);
        out.plan.total_dv += imp.magnitude;
    }
    return out;
}

std::string trajectory_csv(const std::vector<TrajectorySample>& samples, const Scenario& scenario,
                           const std::vector<Vec3>* inertial) {
    const UnitSystem& u = scenario.units;
    const std::string l = suffix(u.length_unit);
    const std::string v = suffix(u.velocity_unit);
    std::ostringstream os = csv_stream();
    os << "theta_rad,t_" << suffix(u.time_unit()) << ",x_" << l << ",y_" << l << ",z_" << l << ",vx_" << v
       << ",vy_" << v << ",vz_" << v;
    if (inertial) {
        os << ",X_" << l << ",Y_" << l << ",Z_" << l;
    }
    os << '\n';
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const TrajectorySample& s = samples[i];
        os << s.theta << ',' << s.t;
        for (int k = 0; k < 3; ++k) os << ',' << s.state.r(k);
        for (int k = 0; k < 3; ++k) os << ',' << s.state.v(k);
        if (inertial) {
            for (int k = 0; k < 3; ++k) os << ',' << (*inertial)[i](k);
        }
        os << '\n';
    }
    return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os = csv_stream();
    os << "M,total_dv,n_impulses,solve_time_s,status,iterations,assembly_time_s\n";
    for (const SweepRow& r : rows) {
        os << r.M << ',' << r.total_dv << ',' << r.n_impulses << ',' << r.solve_time << ','
           << to_string(r.status) << ',' << r.iterations << ',' << r.assembly_time << '\n';
    }
    return os.str();
}

std::string scan_csv(const InnerNodeResult& result) {
    std::ostringstream os = csv_stream();
    os << "theta2_rad,total_dv\n";
    for (const auto& [theta, dv] : result.scan) {
        os << theta << ',' << dv << '\n';
    }
    return os.str();
}

}  // namespace rdv::cli
