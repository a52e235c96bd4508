#pragma once

// Primal-dual interior-point solver for standard-form conic programs
//
//   minimize    c'x
//   subject to  A x = b,  x in K = R^f x Q^{n_1} x ... x Q^{n_k}
//
// with dual
//
//   maximize    b'y
//   subject to  A'y + z = c,  z in K* (z = 0 on the free block).
//
// The iteration runs on the homogeneous self-dual embedding with
// Nesterov-Todd scaling and a Mehrotra predictor-corrector. Each Newton
// system eliminates the cone variables block by block and solves for the
// multipliers through dense QR factorizations of the scaled constraint
// matrix, so its conditioning is never squared.

#include <functional>
#include <ostream>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rdv {

/// Free block first, then second-order cones in order. Each cone block
/// (u0, u1) satisfies u0 >= ||u1||.
struct ConeProduct {
    int free_dim = 0;
    std::vector<int> soc_dims;

    int total_dim() const;
    int num_cones() const { return static_cast<int>(soc_dims.size()); }
};

struct ConicProgram {
    Eigen::VectorXd c;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    ConeProduct cones;

    /// Throws InputError on inconsistent dimensions or cones smaller than 2.
    void validate() const;
};

enum class SolveStatus { optimal, primal_infeasible, dual_infeasible, max_iters, numerical_failure };

std::string_view to_string(SolveStatus status);
std::ostream& operator<<(std::ostream& os, SolveStatus status);

struct IterationLog {
    int iteration;
    double mu;
    double primal_residual;
    double dual_residual;
    double gap;
    double primal_objective;
    double dual_objective;
    double tau;
    double kappa;
    double step_affine;
    double step;
    double sigma;
};

struct SolverSettings {
    double gap_tol = 1e-9;
    double feas_tol = 1e-9;
    int max_iters = 100;
    /// Relative floor on triangular pivots in the Newton solve.
    double static_reg = 1e-10;
    double step_fraction = 0.99;
    /// Optional per-iteration sink; called synchronously from solve().
    std::function<void(const IterationLog&)> trace;

    void validate() const;
};

struct Residuals {
    double primal;  ///< ||Ax - b|| / (1 + ||b||)
    double dual;    ///< ||A'y + z - c|| / (1 + ||c||)
    double gap;     ///< |c'x - b'y| / (1 + |c'x|)
};

struct ConicSolution {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd z;
    SolveStatus status = SolveStatus::numerical_failure;
    double gap = 0.0;
    Residuals residuals{};
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    int iterations = 0;
    double solve_time = 0.0;  ///< wall clock seconds

    bool optimal() const { return status == SolveStatus::optimal; }
};

Residuals residuals(const ConicProgram& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& z);

/// Deterministic: identical inputs give bit-identical outputs on one platform.
ConicSolution solve(const ConicProgram& p, const SolverSettings& settings = {});

/// Trace sink that prints one line per iteration.
std::function<void(const IterationLog&)> stream_trace(std::ostream& os);

}  // namespace rdv
