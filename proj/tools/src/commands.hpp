#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rdv::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kNotOptimal = 2,
    kValidationFailed = 3,
};

struct SolveArgs {
    std::string scenario;
    std::optional<int> mesh;
    std::optional<double> tol;
    std::string form = "condensed";
    bool merge = false;
    std::string out;
    std::string trajectory;
    int samples = 50;
    bool inertial = false;
};

struct SweepArgs {
    std::string scenario;
    std::vector<int> meshes;
    std::string out;
    std::string form = "condensed";
};

struct InnerNodeArgs {
    std::string scenario;
    int resolution = 100;
    std::string out;
    std::string scan_out;
};

struct ValidateArgs {
    std::string solution;
    std::string scenario;
    double max_error = 1e-6;
};

struct ScenarioArgs {
    std::string scenario;
    std::string out;
};

int run_solve(const SolveArgs& args);
int run_sweep(const SweepArgs& args);
int run_inner_node(const InnerNodeArgs& args);
int run_validate(const ValidateArgs& args);
int run_scenario(const ScenarioArgs& args);

}  // namespace rdv::cli
