#include "rdv/postprocess.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "rdv/errors.hpp"

namespace rdv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Largest absolute transformed boundary component; 1 for a zero boundary.
double boundary_reference(const Scenario& scenario) {
    const Vec6 x0 = to_transformed(scenario.x0, scenario.initial_anomaly(), scenario.orbit).vector();
    const Vec6 xf = to_transformed(scenario.xf, scenario.final_anomaly(), scenario.orbit).vector();
    const double ref = std::max(x0.lpNorm<Eigen::Infinity>(), xf.lpNorm<Eigen::Infinity>());
    return ref > 0.0 ? ref : 1.0;
}

double physical_gain(double theta, const Scenario& scenario) {
    return orbit_constants(scenario.orbit).k2 * rho_at(theta, scenario.orbit.e);
}

}  // namespace

ImpulsePlan extract_impulses(const std::vector<NodeRecord>& nodes, const Grid& grid,
                             const Scenario& scenario, double tol) {
    if (static_cast<int>(nodes.size()) != grid.size()) {
        throw InputError("node records do not match the grid", "nodes");
    }
    ImpulsePlan plan;
    plan.tol = tol;
    plan.mesh_M = grid.size();
    plan.velocity_unit = scenario.units.velocity_unit;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const NodeRecord& rec = nodes[j];
        Impulse imp;
        imp.node = static_cast<int>(j);
        imp.theta = rec.theta;
        imp.t = rec.t;
        imp.dv = physical_gain(rec.theta, scenario) * rec.dv * scenario.units.velocity_factor;
        imp.magnitude = imp.dv.norm();
        plan.total_dv += imp.magnitude;
        if (imp.magnitude > tol) {
            plan.impulses.push_back(imp);
        } else {
            plan.dropped_dv += imp.magnitude;
            ++plan.dropped_count;
        }
    }
    return plan;
}

ImpulsePlan merge_adjacent(const ImpulsePlan& plan, const Scenario& scenario, int max_steps,
                           double max_angle_deg) {
    ImpulsePlan out = plan;
    out.impulses.clear();
    const double cos_limit = std::cos(max_angle_deg * std::numbers::pi / 180.0);
    int last_node = -1;
    for (const Impulse& imp : plan.impulses) {
        if (!out.impulses.empty() && last_node >= 0 && imp.node >= 0 &&
            imp.node - last_node <= max_steps) {
            Impulse& last = out.impulses.back();
            if (last.dv.dot(imp.dv) >= cos_limit * last.magnitude * imp.magnitude) {
                const double w = last.magnitude + imp.magnitude;
                last.theta = (last.theta * last.magnitude + imp.theta * imp.magnitude) / w;
                last.t = time_from_true(last.theta, scenario.orbit);
                last.dv += imp.dv;
                last.magnitude = last.dv.norm();
                last.node = -1;  // merged burns sit between grid nodes
                last_node = imp.node;
                continue;
            }
        }
        out.impulses.push_back(imp);
        last_node = imp.node;
    }
    return out;
}

TerminalError verify_plan(const ImpulsePlan& plan, const Scenario& scenario) {
    const TargetOrbit& orbit = scenario.orbit;
    const double th0 = scenario.initial_anomaly();
    const double thf = scenario.final_anomaly();
    Vec6 state = to_transformed(scenario.x0, th0, orbit).vector();
    double theta = th0;
    for (const Impulse& imp : plan.impulses) {
        state = stm_full(imp.theta, theta, orbit) * state;
        theta = imp.theta;
        const Vec3 dv_internal = imp.dv / scenario.units.velocity_factor;
        state.tail<3>() += dv_internal / physical_gain(imp.theta, scenario);
    }
    state = stm_full(thf, theta, orbit) * state;

    const Vec6 miss = state - to_transformed(scenario.xf, thf, orbit).vector();
    const RelativeState miss_phys = from_transformed(TransformedState::from_vector(miss), thf, orbit);
    TerminalError err;
    err.position = miss_phys.r.norm() * scenario.units.length_factor;
    err.velocity = miss_phys.v.norm() * scenario.units.velocity_factor;
    err.scaled = miss.lpNorm<Eigen::Infinity>() / boundary_reference(scenario);
    return err;
}

std::vector<TrajectorySample> reconstruct_trajectory(const ImpulsePlan& plan, const Scenario& scenario,
                                                     int samples_per_segment) {
    if (samples_per_segment < 1) {
        throw InputError("samples per segment must be at least 1", "samples_per_segment");
    }
    const TargetOrbit& orbit = scenario.orbit;
    const UnitSystem& u = scenario.units;
    std::vector<double> bounds{scenario.initial_anomaly()};
    for (const Impulse& imp : plan.impulses) {
        if (imp.theta > bounds.back()) {
            bounds.push_back(imp.theta);
        }
    }
    if (scenario.final_anomaly() > bounds.back()) {
        bounds.push_back(scenario.final_anomaly());
    }

    std::vector<TrajectorySample> out;
    auto emit = [&](double theta, const Vec6& st) {
        RelativeState s = from_transformed(TransformedState::from_vector(st), theta, orbit);
        s.r *= u.length_factor;
        s.v *= u.velocity_factor;
        out.push_back({theta, time_from_true(theta, orbit), s});
    };

    Vec6 state = to_transformed(scenario.x0, bounds.front(), orbit).vector();
    std::size_t next_impulse = 0;
    for (std::size_t b = 0; b < bounds.size(); ++b) {
        const double theta = bounds[b];
        emit(theta, state);
        bool burned = false;
        while (next_impulse < plan.impulses.size() && plan.impulses[next_impulse].theta <= theta) {
            const Impulse& imp = plan.impulses[next_impulse++];
            state.tail<3>() += imp.dv / u.velocity_factor / physical_gain(imp.theta, scenario);
            burned = true;
        }
        if (burned) {
            emit(theta, state);
        }
        if (b + 1 == bounds.size()) {
            break;
        }
        const double span = bounds[b + 1] - theta;
        for (int i = 1; i < samples_per_segment; ++i) {
            const double th = theta + span * i / samples_per_segment;
            emit(th, stm_full(th, theta, orbit) * state);
        }
        state = stm_full(bounds[b + 1], theta, orbit) * state;
    }
    return out;
}

std::vector<Vec3> to_inertial(const std::vector<TrajectorySample>& samples, const Scenario& scenario) {
    const TargetOrbit& o = scenario.orbit;
    const double p = orbit_constants(o).p;
    const double lf = scenario.units.length_factor;
    const Eigen::Matrix3d q = (Eigen::AngleAxisd(o.raan, Eigen::Vector3d::UnitZ()) *
                               Eigen::AngleAxisd(o.i, Eigen::Vector3d::UnitX()) *
                               Eigen::AngleAxisd(o.argp, Eigen::Vector3d::UnitZ()))
                                  .toRotationMatrix();
    std::vector<Vec3> out;
    out.reserve(samples.size());
    for (const TrajectorySample& s : samples) {
        const double c = std::cos(s.theta);
        const double sn = std::sin(s.theta);
        const Vec3 radial(c, sn, 0.0);
        const Vec3 along(-sn, c, 0.0);
        const Vec3 target = p / rho_at(s.theta, o.e) * radial;
        // Rotating axes: x along-track, y against the angular momentum, z toward the focus.
        const Vec3 offset = s.state.r.x() * along - s.state.r.y() * Vec3::UnitZ() - s.state.r.z() * radial;
        out.push_back(q * (target + offset / lf) * lf);
    }
    return out;
}

RendezvousResult solve_on_grid(const Scenario& scenario, const Grid& grid, const SolveOptions& options) {
    RendezvousResult res;
    const auto t0 = std::chrono::steady_clock::now();
    res.grid = grid;
    res.problem = assemble_socp(scenario, grid, options.form);
    res.assembly_time = seconds_since(t0);

    res.solution = solve(res.problem.program, options.solver);
    if (!res.solution.optimal()) {
        return res;
    }
    res.objective = res.problem.internal_objective(res.solution.primal_objective) *
                    scenario.units.velocity_factor;
    res.nodes = expand_solution(res.problem, res.solution, scenario, grid);
    res.raw_plan = extract_impulses(res.nodes, grid, scenario, 0.0);
    res.raw_plan.terminal_error = verify_plan(res.raw_plan, scenario);
    res.plan = extract_impulses(res.nodes, grid, scenario,
                                options.extraction_tol.value_or(scenario.extraction_tol));
    if (options.merge) {
        res.plan = merge_adjacent(res.plan, scenario);
    }
    res.plan.terminal_error = verify_plan(res.plan, scenario);
    return res;
}

RendezvousResult solve_rendezvous(const Scenario& scenario, const SolveOptions& options) {
    scenario.validate();
    return solve_on_grid(scenario, build_grid(scenario, options.mesh_M.value_or(scenario.mesh_M)), options);
}

std::vector<SweepRow> mesh_sweep(const Scenario& scenario, std::vector<int> sizes,
                                 const SolveOptions& options) {
    scenario.validate();
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    std::vector<SweepRow> rows;
    rows.reserve(sizes.size());
    for (int M : sizes) {
        const RendezvousResult r = solve_on_grid(scenario, build_grid(scenario, M), options);
        SweepRow row;
        row.M = M;
        row.status = r.solution.status;
        row.iterations = r.solution.iterations;
        row.solve_time = r.solution.solve_time;
        row.assembly_time = r.assembly_time;
        if (r.optimal()) {
            row.total_dv = r.plan.total_dv;
            row.n_impulses = r.plan.n_impulses();
        }
        rows.push_back(row);
    }
    return rows;
}

InnerNodeResult inner_node_search(const Scenario& scenario, int resolution, const SolveOptions& options) {
    if (resolution < 10) {
        throw InputError("resolution must be at least 10", "resolution");
    }
    scenario.validate();
    const double th0 = scenario.initial_anomaly();
    const double thf = scenario.final_anomaly();
    const double span = thf - th0;
    const int revolutions = std::max(1, static_cast<int>(std::ceil(span / kTwoPi)));
    const int n_scan = resolution * revolutions;
    const double h = span / (n_scan + 1);

    InnerNodeResult out;
    auto objective = [&](double th2) {
        ++out.evaluations;
        const RendezvousResult r = solve_on_grid(scenario, build_grid(scenario, {th0, th2, thf}), options);
        return r.optimal() ? r.plan.total_dv : std::numeric_limits<double>::infinity();
    };

    out.scan.reserve(static_cast<std::size_t>(n_scan));
    for (int i = 1; i <= n_scan; ++i) {
        const double th2 = th0 + h * i;
        out.scan.emplace_back(th2, objective(th2));
    }

    constexpr double kInvPhi = 0.6180339887498949;
    constexpr double kThetaTol = 1e-6;
    double best_theta = out.scan.front().first;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.scan.size(); ++i) {
        const double v = out.scan[i].second;
        const bool left_ok = i == 0 || out.scan[i - 1].second >= v;
        const bool right_ok = i + 1 == out.scan.size() || out.scan[i + 1].second >= v;
        if (!std::isfinite(v) || !left_ok || !right_ok) {
            continue;
        }
        double lo = std::max(th0 + 0.5 * h, out.scan[i].first - h);
        double hi = std::min(thf - 0.5 * h, out.scan[i].first + h);
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = objective(x1);
        double f2 = objective(x2);
        while (hi - lo > kThetaTol) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kInvPhi * (hi - lo);
                f1 = objective(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kInvPhi * (hi - lo);
                f2 = objective(x2);
            }
        }
        const double cand = f1 <= f2 ? x1 : x2;
        const double fc = std::min(f1, f2);
        const double value = std::min(fc, v);
        if (value < best_value) {
            best_value = value;
            best_theta = fc <= v ? cand : out.scan[i].first;
        }
    }
    if (!std::isfinite(best_value)) {
        throw ConvergenceError("no interior node location produced an optimal solve", best_value);
    }

    const RendezvousResult best = solve_on_grid(scenario, build_grid(scenario, {th0, best_theta, thf}), options);
    out.theta2 = best_theta;
    out.total_dv = best.plan.total_dv;
    out.plan = best.plan;
    return out;
}

}  // namespace rdv
