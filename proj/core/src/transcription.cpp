#include "rdv/transcription.hpp"

#include <algorithm>
#include <cmath>

#include "rdv/errors.hpp"

namespace rdv {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void Grid::validate() const {
    if (nodes.size() < 2) {
        throw InputError("grid needs at least two nodes", "grid");
    }
    if (times.size() != nodes.size() || rho.size() != nodes.size()) {
        throw InputError("grid arrays differ in length", "grid");
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!std::isfinite(nodes[j]) || !(rho[j] > 0.0)) {
            throw InputError("grid node values must be finite with positive rho", "grid");
        }
        if (j > 0 && !(nodes[j] > nodes[j - 1])) {
            throw InputError("grid nodes must be strictly increasing", "grid");
        }
    }
}

namespace {

Grid grid_from_nodes(const Scenario& scenario, std::vector<double> nodes) {
    Grid g;
    g.times.reserve(nodes.size());
    g.rho.reserve(nodes.size());
    for (double th : nodes) {
        g.times.push_back(time_from_true(th, scenario.orbit));
        g.rho.push_back(rho_at(th, scenario.orbit.e));
    }
    g.nodes = std::move(nodes);
    g.validate();
    return g;
}

// Sub-state of a six-vector and sub-block of a six-state transition for the
// active dimension (planar keeps only the in-plane components).
struct StateLayout {
    bool planar;

    int dim() const { return planar ? 4 : 6; }
    int dv_dim() const { return planar ? 2 : 3; }

    VectorXd select(const Vec6& x) const {
        if (!planar) {
            return x;
        }
        VectorXd out(4);
        for (int k = 0; k < 4; ++k) {
            out(k) = x(kInPlaneIndices[k]);
        }
        return out;
    }

    Vec6 scatter(const VectorXd& x) const {
        if (!planar) {
            return x;
        }
        Vec6 out = Vec6::Zero();
        for (int k = 0; k < 4; ++k) {
            out(kInPlaneIndices[k]) = x(k);
        }
        return out;
    }

    MatrixXd transition(double theta1, double theta0, const TargetOrbit& orbit) const {
        if (planar) {
            return stm_in_plane(theta1, theta0, orbit);
        }
        return stm_full(theta1, theta0, orbit);
    }

    // Row of the sub-state receiving velocity component k of a burn.
    int velocity_row(int k) const { return dim() - dv_dim() + k; }

    // Axis (0 = x, 1 = y, 2 = z) of burn component k.
    int axis(int k) const { return planar ? 2 * k : k; }
};

}  // namespace

Grid build_grid(const Scenario& scenario, int M) {
    if (M < 2) {
        throw InputError("mesh size must be at least 2", "mesh_M");
    }
    const double th0 = scenario.initial_anomaly();
    const double thf = scenario.final_anomaly();
    std::vector<double> nodes(static_cast<std::size_t>(M));
    const double step = (thf - th0) / (M - 1);
    for (int j = 0; j < M; ++j) {
        nodes[static_cast<std::size_t>(j)] = th0 + step * j;
    }
    nodes.back() = thf;
    return grid_from_nodes(scenario, std::move(nodes));
}

Grid build_grid(const Scenario& scenario, std::vector<double> nodes) {
    if (nodes.size() < 2) {
        throw InputError("grid needs at least two nodes", "nodes");
    }
    const double th0 = scenario.initial_anomaly();
    const double thf = scenario.final_anomaly();
    const double tol = 1e-12 * std::max(1.0, std::abs(thf));
    if (std::abs(nodes.front() - th0) > tol || std::abs(nodes.back() - thf) > tol) {
        throw InputError("explicit grid must start at theta0 and end at thetaf", "nodes");
    }
    nodes.front() = th0;
    nodes.back() = thf;
    return grid_from_nodes(scenario, std::move(nodes));
}

BoundaryPair transform_boundaries(const Scenario& scenario, const Grid& grid) {
    grid.validate();
    return {to_transformed(scenario.x0, grid.nodes.front(), scenario.orbit),
            to_transformed(scenario.xf, grid.nodes.back(), scenario.orbit)};
}

double ConicProblem::internal_objective(double conic_objective) const {
    return conic_objective * scaling.state * scaling.cost * scaling.velocity();
}

ConicProblem assemble_socp(const Scenario& scenario, const Grid& grid, Formulation form) {
    scenario.validate();
    grid.validate();
    const double th0 = scenario.initial_anomaly();
    const double thf = scenario.final_anomaly();
    const double tol = 1e-12 * std::max(1.0, std::abs(thf));
    if (std::abs(grid.nodes.front() - th0) > tol || std::abs(grid.nodes.back() - thf) > tol) {
        throw InputError("grid does not span the scenario horizon", "grid");
    }

    ConicProblem prob;
    const StateLayout layout{scenario.planar};
    const int M = grid.size();
    const int d = layout.dim();
    const int nu = layout.dv_dim();

    ProblemScaling& sc = prob.scaling;
    prob.orbit_nd = scenario.orbit;
    if (!scenario.units.normalized) {
        const OrbitConstants oc = orbit_constants(scenario.orbit);
        sc.length = oc.p;
        sc.time = 1.0 / oc.n;
        prob.orbit_nd.a = scenario.orbit.a / sc.length;
        prob.orbit_nd.mu = scenario.orbit.mu * sc.time * sc.time / std::pow(sc.length, 3);
    }
    const double k2 = orbit_constants(prob.orbit_nd).k2;

    const BoundaryPair bnd = transform_boundaries(scenario, grid);
    const VectorXd x0 = layout.select(bnd.initial.vector()) / sc.length;
    const VectorXd xf = layout.select(bnd.terminal.vector()) / sc.length;
    const double ref = std::max(x0.lpNorm<Eigen::Infinity>(), xf.lpNorm<Eigen::Infinity>());
    sc.state = ref > 0.0 ? ref : 1.0;

    VectorXd cost(M);
    for (int j = 0; j < M; ++j) {
        cost(j) = k2 * grid.rho[static_cast<std::size_t>(j)];
    }
    sc.cost = cost.maxCoeff();

    VariableMap& vm = prob.var_map;
    vm.form = form;
    vm.nodes = M;
    vm.state_dim = d;
    vm.dv_dim = nu;

    ConicProgram& p = prob.program;
    p.cones.free_dim = vm.free_dim();
    p.cones.soc_dims.assign(static_cast<std::size_t>(M), vm.cone_dim());
    const int n = vm.num_variables();
    p.c = VectorXd::Zero(n);
    for (int j = 0; j < M; ++j) {
        p.c(vm.sigma_index(j)) = cost(j) / sc.cost;
    }

    const auto& th = grid.nodes;
    const TargetOrbit& orb = prob.orbit_nd;
    if (form == Formulation::condensed) {
        p.A = MatrixXd::Zero(d, n);
        p.b = (xf - layout.transition(thf, th0, orb) * x0) / sc.state;
        for (int j = 0; j < M; ++j) {
            const MatrixXd phi = layout.transition(thf, th[static_cast<std::size_t>(j)], orb);
            for (int k = 0; k < nu; ++k) {
                p.A.col(vm.dv_index(j, k)) = phi.col(layout.velocity_row(k));
            }
        }
    } else {
        // Rows, in blocks of d: initial condition, M-1 defects, terminal condition.
        p.A = MatrixXd::Zero((M + 1) * d, n);
        p.b = VectorXd::Zero((M + 1) * d);
        p.A.block(0, vm.state_index(0, 0), d, d).setIdentity();
        p.b.head(d) = x0 / sc.state;
        for (int j = 0; j + 1 < M; ++j) {
            const int row = (j + 1) * d;
            const MatrixXd phi =
                layout.transition(th[static_cast<std::size_t>(j + 1)], th[static_cast<std::size_t>(j)], orb);
            p.A.block(row, vm.state_index(j + 1, 0), d, d).setIdentity();
            p.A.block(row, vm.state_index(j, 0), d, d) = -phi;
            for (int k = 0; k < nu; ++k) {
                p.A.col(vm.dv_index(j, k)).segment(row, d) = -phi.col(layout.velocity_row(k));
            }
        }
        const int row = M * d;
        p.A.block(row, vm.state_index(M - 1, 0), d, d).setIdentity();
        for (int k = 0; k < nu; ++k) {
            p.A(row + layout.velocity_row(k), vm.dv_index(M - 1, k)) = 1.0;
        }
        p.b.tail(d) = xf / sc.state;
    }
    p.validate();
    return prob;
}

std::vector<NodeRecord> expand_solution(const ConicProblem& problem, const ConicSolution& sol,
                                        const Scenario& scenario, const Grid& grid) {
    if (!sol.optimal()) {
        throw InputError("cannot expand a solution with status " + std::string(to_string(sol.status)),
                         "solution");
    }
    const VariableMap& vm = problem.var_map;
    if (sol.x.size() != vm.num_variables() || grid.size() != vm.nodes) {
        throw InputError("solution does not match the problem dimensions", "solution");
    }
    const StateLayout layout{scenario.planar};
    const ProblemScaling& sc = problem.scaling;
    const double to_internal = sc.state * sc.length;
    const int M = vm.nodes;
    const int d = vm.state_dim;

    std::vector<NodeRecord> out(static_cast<std::size_t>(M));
    const BoundaryPair bnd = transform_boundaries(scenario, grid);
    VectorXd state = layout.select(bnd.initial.vector()) / sc.length;
    for (int j = 0; j < M; ++j) {
        NodeRecord& rec = out[static_cast<std::size_t>(j)];
        rec.theta = grid.nodes[static_cast<std::size_t>(j)];
        rec.t = grid.times[static_cast<std::size_t>(j)];
        rec.sigma = sol.x(vm.sigma_index(j)) * to_internal;

        VectorXd burn = VectorXd::Zero(d);
        for (int k = 0; k < vm.dv_dim; ++k) {
            const double v = sol.x(vm.dv_index(j, k)) * sc.state;
            burn(layout.velocity_row(k)) = v;
            rec.dv(layout.axis(k)) = v * sc.length;
        }
        if (vm.form == Formulation::full) {
            state = sol.x.segment(vm.state_index(j, 0), d) * sc.state;
        } else if (j > 0) {
            state = layout.transition(rec.theta, out[static_cast<std::size_t>(j - 1)].theta,
                                      problem.orbit_nd) *
                    layout.select(out[static_cast<std::size_t>(j - 1)].state_plus / sc.length);
        }
        rec.state_minus = layout.scatter(state) * sc.length;
        rec.state_plus = layout.scatter(state + burn) * sc.length;
    }
    return out;
}

}  // namespace rdv
