#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rdv/errors.hpp"
#include "rdv/postprocess.hpp"
#include "rdv/scenarios.hpp"
#include "solution_document.hpp"

namespace rdv::cli {

namespace {

// Solver iteration log on stderr when RDV_TRACE is set to anything but "" or "0".
SolverSettings solver_settings() {
    SolverSettings s;
    const char* env = std::getenv("RDV_TRACE");
    if (env && *env && std::string(env) != "0") {
        s.trace = stream_trace(std::cerr);
    }
    return s;
}

Formulation parse_form(const std::string& name) {
    if (name == "condensed") return Formulation::condensed;
    if (name == "full") return Formulation::full;
    throw InputError("expected condensed or full, got '" + name + "'", "--form");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot open output file", path);
    }
    out << text;
    if (!out) {
        throw InputError("failed writing output file", path);
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open file", path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string dump(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

}  // namespace

int run_solve(const SolveArgs& args) {
    const Scenario scenario = resolve_scenario(args.scenario);
    SolveOptions opts;
    opts.mesh_M = args.mesh;
    opts.extraction_tol = args.tol;
    opts.form = parse_form(args.form);
    opts.merge = args.merge;
    opts.solver = solver_settings();

    const RendezvousResult result = solve_rendezvous(scenario, opts);
    write_text(args.out, dump(solution_document(scenario, result, opts.form, args.merge)));
    if (!result.optimal()) {
        std::cerr << "solver finished with status " << to_string(result.solution.status) << " after "
                  << result.solution.iterations << " iterations\n";
        return kNotOptimal;
    }
    if (!args.trajectory.empty()) {
        if (args.samples < 1) {
            throw InputError("must be at least 1", "--samples");
        }
        const auto samples = reconstruct_trajectory(result.plan, scenario, args.samples);
        std::vector<Vec3> inertial;
        if (args.inertial) {
            inertial = to_inertial(samples, scenario);
        }
        write_text(args.trajectory, trajectory_csv(samples, scenario, args.inertial ? &inertial : nullptr));
    }
    if (!args.out.empty() && args.out != "-") {
        std::cout << scenario.name << ": total_dv " << result.plan.total_dv << ' '
                  << scenario.units.velocity_unit << ", " << result.plan.n_impulses() << " impulses\n";
    }
    return kOk;
}

int run_sweep(const SweepArgs& args) {
    const Scenario scenario = resolve_scenario(args.scenario);
    if (args.meshes.empty()) {
        throw InputError("at least one mesh size is required", "--mesh-list");
    }
    SolveOptions opts;
    opts.form = parse_form(args.form);
    opts.solver = solver_settings();
    const std::vector<SweepRow> rows = mesh_sweep(scenario, args.meshes, opts);
    write_text(args.out, sweep_csv(rows));
    for (const SweepRow& r : rows) {
        if (r.status != SolveStatus::optimal) {
            std::cerr << "M=" << r.M << ": " << to_string(r.status) << '\n';
            return kNotOptimal;
        }
    }
    return kOk;
}

int run_inner_node(const InnerNodeArgs& args) {
    const Scenario scenario = resolve_scenario(args.scenario);
    SolveOptions opts;
    opts.solver = solver_settings();
    const auto start = std::chrono::steady_clock::now();
    InnerNodeResult result;
    try {
        result = inner_node_search(scenario, args.resolution, opts);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotOptimal;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(args.out, dump(inner_node_document(scenario, args.resolution, result, seconds)));
    if (!args.scan_out.empty()) {
        write_text(args.scan_out, scan_csv(result));
    }
    return kOk;
}

int run_validate(const ValidateArgs& args) {
    const Scenario scenario = resolve_scenario(args.scenario);
    const SavedPlan saved = read_plan(read_text(args.solution), args.solution);
    const std::string hash = scenario_hash(scenario);
    if (saved.scenario_hash != hash) {
        throw InputError("document was produced for scenario '" + saved.scenario_name + "' (hash " +
                             saved.scenario_hash + "), not '" + scenario.name + "' (hash " + hash + ")",
                         "scenario.hash");
    }
    const TerminalError err = verify_plan(saved.plan, scenario);
    const bool ok = err.scaled <= args.max_error;
    ordered_json report;
    report["tool"] = tool_info();
    report["scenario"] = scenario_ref(scenario);
    report["n_impulses"] = saved.plan.n_impulses();
    report["total_dv"] = saved.plan.total_dv;
    report["terminal_error"] = terminal_error_json(err);
    report["max_error"] = args.max_error;
    report["valid"] = ok;
    std::cout << dump(report);
    if (!ok) {
        std::cerr << "terminal error " << err.scaled << " exceeds " << args.max_error << '\n';
        return kValidationFailed;
    }
    return kOk;
}

int run_scenario(const ScenarioArgs& args) {
    write_text(args.out, scenario_to_json(resolve_scenario(args.scenario)));
    return kOk;
}

}  // namespace rdv::cli
