#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdv/conic_solver.hpp"
#include "rdv/scenario.hpp"
#include "rdv/transcription.hpp"

namespace rdv {

/// One burn. Velocities are in the scenario's reporting units.
struct Impulse {
    int node = -1;  ///< grid index, -1 after merging
    double theta = 0.0;
    double t = 0.0;
    Vec3 dv = Vec3::Zero();
    double magnitude = 0.0;
};

/// Boundary miss after independent propagation of a plan.
struct TerminalError {
    double position = 0.0;  ///< reporting length unit
    double velocity = 0.0;  ///< reporting velocity unit
    double scaled = 0.0;    ///< transformed-state miss over the larger boundary norm
};

struct ImpulsePlan {
    std::vector<Impulse> impulses;
    double total_dv = 0.0;    ///< over every node, before filtering
    double dropped_dv = 0.0;  ///< sum of filtered magnitudes
    int dropped_count = 0;
    double tol = 0.0;
    int mesh_M = 0;
    std::string velocity_unit;
    TerminalError terminal_error;

    int n_impulses() const { return static_cast<int>(impulses.size()); }
};

ImpulsePlan extract_impulses(const std::vector<NodeRecord>& nodes, const Grid& grid,
                             const Scenario& scenario, double tol);

/// Merges burns at most `max_steps` grid nodes apart whose directions agree
/// within `max_angle_deg`. Vectors add; the anomaly is magnitude-weighted.
ImpulsePlan merge_adjacent(const ImpulsePlan& plan, const Scenario& scenario, int max_steps = 2,
                           double max_angle_deg = 5.0);

/// Propagates the initial state through the plan with fresh transition
/// matrices and compares with the terminal boundary.
TerminalError verify_plan(const ImpulsePlan& plan, const Scenario& scenario);

struct TrajectorySample {
    double theta = 0.0;
    double t = 0.0;
    RelativeState state;  ///< reporting units
};

/// Dense sampling between burns. Each burn node yields a pre- and a post-burn sample.
std::vector<TrajectorySample> reconstruct_trajectory(const ImpulsePlan& plan, const Scenario& scenario,
                                                     int samples_per_segment);

/// Chaser positions in the inertial frame, reporting length unit.
std::vector<Vec3> to_inertial(const std::vector<TrajectorySample>& samples, const Scenario& scenario);

struct SolveOptions {
    std::optional<int> mesh_M;              ///< defaults to the scenario's
    std::optional<double> extraction_tol;   ///< defaults to the scenario's
    Formulation form = Formulation::condensed;
    SolverSettings solver;
    bool merge = false;
};

struct RendezvousResult {
    Grid grid;
    ConicProblem problem;
    ConicSolution solution;
    double assembly_time = 0.0;      ///< seconds
    double objective = 0.0;          ///< reporting velocity unit
    std::vector<NodeRecord> nodes;   ///< empty unless optimal
    ImpulsePlan raw_plan;            ///< every node, no filtering
    ImpulsePlan plan;                ///< filtered (and merged when requested)

    bool optimal() const { return solution.optimal(); }
};

RendezvousResult solve_rendezvous(const Scenario& scenario, const SolveOptions& options = {});
RendezvousResult solve_on_grid(const Scenario& scenario, const Grid& grid, const SolveOptions& options = {});

struct SweepRow {
    int M = 0;
    SolveStatus status = SolveStatus::numerical_failure;
    double total_dv = 0.0;
    int n_impulses = 0;
    int iterations = 0;
    double solve_time = 0.0;
    double assembly_time = 0.0;
};

/// Independent solves per mesh size, sorted by M. Failed solves are kept as rows.
std::vector<SweepRow> mesh_sweep(const Scenario& scenario, std::vector<int> sizes,
                                 const SolveOptions& options = {});

struct InnerNodeResult {
    double theta2 = 0.0;
    double total_dv = 0.0;
    ImpulsePlan plan;
    std::vector<std::pair<double, double>> scan;  ///< (theta2, total_dv) samples
    int evaluations = 0;
};

/// Three-node grid with a movable interior node. `resolution` is the number
/// of scan points per revolution of anomaly span (at least `resolution`
/// overall); every discrete local minimum is refined by golden section to 1e-6 rad.
InnerNodeResult inner_node_search(const Scenario& scenario, int resolution,
                                  const SolveOptions& options = {});

}  // namespace rdv
