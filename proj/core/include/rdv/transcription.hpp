#pragma once

// Discretization of the impulsive rendezvous onto an anomaly grid and its
// second-order cone program. The optimizer works on a nondimensional copy of
// the scenario (length p, time 1/n) with the right-hand side and cost
// additionally normalized to unit magnitude; ProblemScaling records both so
// solutions can be mapped back.

#include <vector>

#include "rdv/conic_solver.hpp"
#include "rdv/relative_dynamics.hpp"
#include "rdv/scenario.hpp"

namespace rdv {

struct Grid {
    std::vector<double> nodes;  ///< unwrapped anomalies, strictly increasing
    std::vector<double> times;  ///< epoch-relative times, internal units
    std::vector<double> rho;

    int size() const { return static_cast<int>(nodes.size()); }
    void validate() const;
};

/// Uniform grid with M nodes from theta0 to thetaf inclusive.
Grid build_grid(const Scenario& scenario, int M);

/// Explicit nodes; the first and last must equal theta0 and thetaf.
Grid build_grid(const Scenario& scenario, std::vector<double> nodes);

struct BoundaryPair {
    TransformedState initial;
    TransformedState terminal;
};

BoundaryPair transform_boundaries(const Scenario& scenario, const Grid& grid);

enum class Formulation { condensed, full };

/// Locates per-node quantities in the conic variable vector.
struct VariableMap {
    Formulation form = Formulation::condensed;
    int nodes = 0;
    int state_dim = 6;  ///< 4 when planar
    int dv_dim = 3;     ///< 2 when planar

    int free_dim() const { return form == Formulation::full ? nodes * state_dim : 0; }
    int cone_dim() const { return dv_dim + 1; }
    int sigma_index(int j) const { return free_dim() + j * cone_dim(); }
    int dv_index(int j, int k) const { return sigma_index(j) + 1 + k; }
    /// Pre-burn state at node j (full form only).
    int state_index(int j, int k) const { return j * state_dim + k; }
    int num_variables() const { return free_dim() + nodes * cone_dim(); }
};

struct ProblemScaling {
    double length = 1.0;  ///< internal length per nondimensional length
    double time = 1.0;    ///< internal time per nondimensional time
    double state = 1.0;   ///< divisor applied to transformed boundary data
    double cost = 1.0;    ///< divisor applied to the cost vector

    double velocity() const { return length / time; }
};

struct ConicProblem {
    ConicProgram program;
    VariableMap var_map;
    ProblemScaling scaling;
    TargetOrbit orbit_nd;  ///< nondimensional target orbit

    /// Map a conic objective back to total delta-v in internal velocity units.
    double internal_objective(double conic_objective) const;
};

ConicProblem assemble_socp(const Scenario& scenario, const Grid& grid,
                           Formulation form = Formulation::condensed);

/// Transformed quantities at one node, in internal units.
struct NodeRecord {
    double theta = 0.0;
    double t = 0.0;
    Vec6 state_minus = Vec6::Zero();
    Vec6 state_plus = Vec6::Zero();
    Vec3 dv = Vec3::Zero();  ///< transformed velocity jump
    double sigma = 0.0;
};

/// Recovers states (by STM propagation in condensed form) and burns per node.
/// Throws InputError unless the solution is optimal.
std::vector<NodeRecord> expand_solution(const ConicProblem& problem, const ConicSolution& sol,
                                        const Scenario& scenario, const Grid& grid);

}  // namespace rdv
