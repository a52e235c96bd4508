// rdv: minimum-fuel impulsive rendezvous from the command line.

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rdv/errors.hpp"

int main(int argc, char** argv) {
    using namespace rdv::cli;

    CLI::App app{"Fixed-time minimum-fuel impulsive rendezvous via second-order cone programming", "rdv"};
    app.set_version_flag("--version", std::string("rdv ") + RDV_VERSION);
    app.require_subcommand(1);

    SolveArgs solve;
    CLI::App* cmd_solve = app.add_subcommand("solve", "Solve one scenario on a uniform grid");
    cmd_solve->add_option("scenario", solve.scenario, "Built-in name or scenario file")->required();
    cmd_solve->add_option("--mesh", solve.mesh, "Number of grid nodes")->check(CLI::Range(2, 1 << 20));
    cmd_solve->add_option("--tol", solve.tol, "Impulse extraction threshold (reporting velocity unit)")
        ->check(CLI::NonNegativeNumber);
    cmd_solve->add_option("--form", solve.form, "condensed or full")->capture_default_str();
    cmd_solve->add_flag("--merge", solve.merge, "Merge burns on neighbouring nodes");
    cmd_solve->add_option("--out", solve.out, "Solution document path (default stdout)");
    cmd_solve->add_option("--trajectory", solve.trajectory, "Trajectory CSV path");
    cmd_solve->add_option("--samples", solve.samples, "Trajectory samples per coast arc")->capture_default_str();
    cmd_solve->add_flag("--inertial", solve.inertial, "Append inertial position columns to the trajectory");

    SweepArgs sweep;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Solve on several mesh sizes");
    cmd_sweep->add_option("scenario", sweep.scenario, "Built-in name or scenario file")->required();
    cmd_sweep->add_option("--mesh-list", sweep.meshes, "Mesh sizes, e.g. 9,17,33")
        ->delimiter(',')
        ->required()
        ->check(CLI::Range(2, 1 << 20));
    cmd_sweep->add_option("--form", sweep.form, "condensed or full")->capture_default_str();
    cmd_sweep->add_option("--out", sweep.out, "CSV path (default stdout)");

    InnerNodeArgs inner;
    CLI::App* cmd_inner = app.add_subcommand("inner-node", "Optimize the interior node of a three-node grid");
    cmd_inner->add_option("scenario", inner.scenario, "Built-in name or scenario file")->required();
    cmd_inner->add_option("--resolution", inner.resolution, "Scan points per revolution (>= 10)")
        ->capture_default_str()
        ->check(CLI::Range(10, 1 << 20));
    cmd_inner->add_option("--out", inner.out, "Result document path (default stdout)");
    cmd_inner->add_option("--scan-out", inner.scan_out, "CSV of the scanned objective curve");

    ValidateArgs validate;
    CLI::App* cmd_validate = app.add_subcommand("validate", "Re-propagate a saved plan and check the terminal miss");
    cmd_validate->add_option("solution", validate.solution, "Solution document")->required();
    cmd_validate->add_option("scenario", validate.scenario, "Built-in name or scenario file")->required();
    cmd_validate->add_option("--max-error", validate.max_error, "Largest accepted scaled terminal error")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    ScenarioArgs scen;
    CLI::App* cmd_scenario = app.add_subcommand("scenario", "Print a scenario in canonical form");
    cmd_scenario->add_option("scenario", scen.scenario, "Built-in name or scenario file")->required();
    cmd_scenario->add_option("--out", scen.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*cmd_solve) return run_solve(solve);
        if (*cmd_sweep) return run_sweep(sweep);
        if (*cmd_inner) return run_inner_node(inner);
        if (*cmd_validate) return run_validate(validate);
        if (*cmd_scenario) return run_scenario(scen);
    } catch (const rdv::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const rdv::DomainError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotOptimal;
    }
    return kInputError;
}
