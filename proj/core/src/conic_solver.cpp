#include "rdv/conic_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "rdv/errors.hpp"
#include "rdv/second_order_cone.hpp"

namespace rdv {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int ConeProduct::total_dim() const {
    return free_dim + std::accumulate(soc_dims.begin(), soc_dims.end(), 0);
}

void ConicProgram::validate() const {
    if (cones.free_dim < 0) {
        throw InputError("free block size must be non-negative", "cones.free_dim");
    }
    for (int d : cones.soc_dims) {
        if (d < 2) {
            throw InputError("second-order cones need dimension >= 2", "cones.soc_dims");
        }
    }
    const Eigen::Index n = cones.total_dim();
    if (c.size() != n) {
        throw InputError("cost vector length differs from cone dimension", "c");
    }
    if (A.cols() != n) {
        throw InputError("constraint matrix column count differs from cone dimension", "A");
    }
    if (A.rows() != b.size()) {
        throw InputError("constraint matrix row count differs from right-hand side length", "b");
    }
    if (!c.allFinite() || !A.allFinite() || !b.allFinite()) {
        throw InputError("problem data must be finite");
    }
}

std::string_view to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::primal_infeasible: return "primal_infeasible";
        case SolveStatus::dual_infeasible: return "dual_infeasible";
        case SolveStatus::max_iters: return "max_iters";
        case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

std::ostream& operator<<(std::ostream& os, SolveStatus status) {
    return os << to_string(status);
}

void SolverSettings::validate() const {
    if (!(gap_tol > 0.0) || !(feas_tol > 0.0) || max_iters <= 0 || !(static_reg > 0.0) ||
        !(step_fraction > 0.0 && step_fraction < 1.0)) {
        throw InputError("solver settings must be positive (step fraction in (0, 1))");
    }
}

Residuals residuals(const ConicProgram& p, const VectorXd& x, const VectorXd& y, const VectorXd& z) {
    if (x.size() != p.c.size() || z.size() != p.c.size() || y.size() != p.b.size()) {
        throw InputError("residual vectors do not match problem dimensions");
    }
    Residuals r{};
    r.primal = (p.A * x - p.b).norm() / (1.0 + p.b.norm());
    r.dual = (p.A.transpose() * y + z - p.c).norm() / (1.0 + p.c.norm());
    const double pobj = p.c.dot(x);
    r.gap = std::abs(pobj - p.b.dot(y)) / (1.0 + std::abs(pobj));
    return r;
}

std::function<void(const IterationLog&)> stream_trace(std::ostream& os) {
    return [&os](const IterationLog& it) {
        std::ostringstream line;
        line << std::scientific << std::setprecision(3) << "iter " << std::setw(3) << it.iteration
             << "  pobj " << std::setw(11) << it.primal_objective << "  dobj " << std::setw(11)
             << it.dual_objective << "  pres " << it.primal_residual << "  dres "
             << it.dual_residual << "  gap " << it.gap << "  mu " << it.mu << "  tau " << it.tau
             << "  kap " << it.kappa << "  sig " << it.sigma << "  a_aff " << it.step_affine
             << "  a " << it.step << '\n';
        os << line.str();
    };
}

namespace {

struct ConeBlock {
    int offset;
    int dim;
};

/// Newton system with the cone variables eliminated. For given free-row
/// right-hand side f, cone offset u and primal right-hand side r2 it solves
///
///   A_f' dy = f
///   A_f dx_f + A_c dx_c = r2,   dx_c = W s + u,   s = W A_c' dy
///
/// without forming A_c W^2 A_c', whose condition number is the square of that
/// of G = A_c W. The free rows are handled in the null space of A_f' via a QR
/// factorization computed once; each iteration then factors the small matrix
/// H = G' U2 (U2 spans that null space). Because s is recovered from the
/// orthogonal factor, G s + A_f dx_f = r2 holds to working precision even
/// when G is nearly rank deficient.
class KktSystem {
public:
    KktSystem(const ConicProgram& p, const std::vector<ConeBlock>& blocks, const SolverSettings& s)
        : p_(p), blocks_(blocks), settings_(s), nf_(p.cones.free_dim), m_(static_cast<int>(p.A.rows())) {
        const int m2 = m_ - nf_;
        if (m2 < 0) {
            throw InputError("more free variables than equality rows make the program degenerate");
        }
        if (nf_ > 0) {
            qr_f_.compute(p.A.leftCols(nf_));
            r_f_ = floor_diagonal(qr_f_.matrixQR().topRows(nf_).triangularView<Eigen::Upper>());
            u2_ = qr_f_.householderQ() * MatrixXd::Identity(m_, m_).rightCols(m2);
        }
        const Eigen::Index nc = p.A.cols() - nf_;
        gt_.resize(nc, m_);
        w2_.resize(blocks.size());
        w_.resize(blocks.size());
    }

    void update(const std::vector<soc::NtScaling>& scalings) {
        for (std::size_t k = 0; k < blocks_.size(); ++k) {
            const ConeBlock& blk = blocks_[k];
            w_[k] = scalings[k].w;
            w2_[k] = w_[k] * w_[k];
            gt_.middleRows(blk.offset - nf_, blk.dim).noalias() =
                w_[k] * p_.A.middleCols(blk.offset, blk.dim).transpose();
        }
        if (nf_ > 0) {
            h_.noalias() = gt_ * u2_;
            qr_h_.compute(h_);
        } else {
            qr_h_.compute(gt_);
        }
        const Eigen::Index m2 = m_ - nf_;
        if (qr_h_.rows() < m2) {
            throw InputError("cone block has fewer columns than independent equality rows");
        }
        r_h_ = floor_diagonal(qr_h_.matrixQR().topRows(m2).triangularView<Eigen::Upper>());
    }

    const MatrixXd& w2(std::size_t k) const { return w2_[k]; }

    void solve(const VectorXd& f, const VectorXd& u, const VectorXd& r2, VectorXd& dx, VectorXd& dy) const {
        const Eigen::Index n = p_.A.cols();
        const Eigen::Index nc = n - nf_;
        const Eigen::Index m2 = m_ - nf_;
        const VectorXd r = r2 - p_.A.rightCols(nc) * u;

        // Particular part of dy fixed by the free rows.
        VectorXd v1 = VectorXd::Zero(m_);
        if (nf_ > 0) {
            v1.head(nf_) = r_f_.transpose().triangularView<Eigen::Lower>().solve(f);
            v1 = qr_f_.householderQ() * v1;
        }
        const VectorXd s0 = gt_ * v1;
        const VectorXd proj_r = nf_ > 0 ? VectorXd(u2_.transpose() * r) : r;
        const VectorXd hs0 = nf_ > 0 ? VectorXd(h_.transpose() * s0) : VectorXd(gt_.transpose() * s0);

        VectorXd t = VectorXd::Zero(nc);
        t.head(m2) = r_h_.transpose().triangularView<Eigen::Lower>().solve(proj_r - hs0);
        const VectorXd b = r_h_.triangularView<Eigen::Upper>().solve(t.head(m2));
        const VectorXd s = s0 + qr_h_.householderQ() * t;

        dy = nf_ > 0 ? VectorXd(v1 + u2_ * b) : b;
        dx.resize(n);
        if (nf_ > 0) {
            const VectorXd miss = qr_f_.householderQ().adjoint() * (r - gt_.transpose() * s);
            dx.head(nf_) = r_f_.triangularView<Eigen::Upper>().solve(miss.head(nf_));
        }
        for (std::size_t k = 0; k < blocks_.size(); ++k) {
            const ConeBlock& blk = blocks_[k];
            dx.segment(blk.offset, blk.dim).noalias() =
                w_[k] * s.segment(blk.offset - nf_, blk.dim) + u.segment(blk.offset - nf_, blk.dim);
        }
    }

private:
    // Upper-triangular copy with tiny diagonal entries lifted to a relative
    // floor, so near rank deficiency yields large but finite solutions.
    MatrixXd floor_diagonal(const MatrixXd& r) const {
        MatrixXd out = r;
        const double scale = r.rows() > 0 ? r.diagonal().cwiseAbs().maxCoeff() : 0.0;
        const double floor = std::max(settings_.static_reg * scale, std::numeric_limits<double>::min());
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            if (std::abs(out(i, i)) < floor) {
                out(i, i) = out(i, i) < 0.0 ? -floor : floor;
            }
        }
        return out;
    }

    const ConicProgram& p_;
    const std::vector<ConeBlock>& blocks_;
    const SolverSettings& settings_;
    int nf_;
    int m_;
    Eigen::HouseholderQR<MatrixXd> qr_f_;
    MatrixXd r_f_;
    MatrixXd u2_;
    MatrixXd gt_;
    MatrixXd h_;
    Eigen::HouseholderQR<MatrixXd> qr_h_;
    MatrixXd r_h_;
    std::vector<MatrixXd> w_;
    std::vector<MatrixXd> w2_;
};

struct Direction {
    VectorXd dx;
    VectorXd dy;
    VectorXd dz;
    double dtau = 0.0;
    double dkappa = 0.0;
};

struct Iterate {
    VectorXd x;
    VectorXd y;
    VectorXd z;
    double tau = 1.0;
    double kappa = 1.0;
};

double merit(const Residuals& r) {
    return std::max({r.primal, r.dual, r.gap});
}

}  // namespace

ConicSolution solve(const ConicProgram& p, const SolverSettings& settings) {
    const auto start = std::chrono::steady_clock::now();
    p.validate();
    settings.validate();

    const int n = p.cones.total_dim();
    const int m = static_cast<int>(p.A.rows());
    const int nf = p.cones.free_dim;

    std::vector<ConeBlock> blocks;
    {
        int offset = nf;
        for (int d : p.cones.soc_dims) {
            blocks.push_back({offset, d});
            offset += d;
        }
    }
    const double degree = static_cast<double>(blocks.size()) + 1.0;

    Iterate it;
    it.x = VectorXd::Zero(n);
    it.z = VectorXd::Zero(n);
    it.y = VectorXd::Zero(m);
    for (const ConeBlock& blk : blocks) {
        it.x(blk.offset) = 1.0;
        it.z(blk.offset) = 1.0;
    }

    KktSystem kkt(p, blocks, settings);
    std::vector<soc::NtScaling> scalings;
    scalings.reserve(blocks.size());

    ConicSolution out;
    Iterate best = it;
    double best_merit = std::numeric_limits<double>::infinity();
    double last_step = 0.0;
    double last_step_affine = 0.0;
    double last_sigma = 0.0;

    auto finish = [&](const Iterate& at, SolveStatus status, int iterations) {
        out.status = status;
        out.iterations = iterations;
        if (status == SolveStatus::primal_infeasible) {
            const double scale = p.b.dot(at.y);
            out.x = VectorXd::Zero(n);
            out.y = at.y / scale;
            out.z = at.z / scale;
        } else if (status == SolveStatus::dual_infeasible) {
            const double scale = -p.c.dot(at.x);
            out.x = at.x / scale;
            out.y = VectorXd::Zero(m);
            out.z = VectorXd::Zero(n);
        } else {
            out.x = at.x / at.tau;
            out.y = at.y / at.tau;
            out.z = at.z / at.tau;
        }
        out.residuals = residuals(p, out.x, out.y, out.z);
        out.gap = out.residuals.gap;
        out.primal_objective = p.c.dot(out.x);
        out.dual_objective = p.b.dot(out.y);
        out.solve_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    VectorXd x1;
    VectorXd y1;
    for (int iter = 0;; ++iter) {
        const VectorXd rp = p.A * it.x - p.b * it.tau;
        const VectorXd rd = p.A.transpose() * it.y + it.z - p.c * it.tau;
        const double cx = p.c.dot(it.x);
        const double by = p.b.dot(it.y);
        const double rg = cx - by + it.kappa;
        double complementarity = it.tau * it.kappa;
        for (const ConeBlock& blk : blocks) {
            complementarity += it.x.segment(blk.offset, blk.dim).dot(it.z.segment(blk.offset, blk.dim));
        }
        const double mu = complementarity / degree;

        const Residuals res = residuals(p, it.x / it.tau, it.y / it.tau, it.z / it.tau);
        if (!std::isfinite(merit(res)) || !std::isfinite(mu)) {
            return finish(best, SolveStatus::numerical_failure, iter);
        }
        if (merit(res) < best_merit) {
            best_merit = merit(res);
            best = it;
        }
        if (settings.trace) {
            settings.trace({iter, mu, res.primal, res.dual, res.gap, cx / it.tau, by / it.tau, it.tau,
                            it.kappa, last_step_affine, last_step, last_sigma});
        }
        if (res.primal <= settings.feas_tol && res.dual <= settings.feas_tol &&
            res.gap <= settings.gap_tol) {
            return finish(it, SolveStatus::optimal, iter);
        }
        if (it.kappa > it.tau) {
            if (by > 0.0 && (p.A.transpose() * it.y + it.z).norm() <= settings.feas_tol * by) {
                return finish(it, SolveStatus::primal_infeasible, iter);
            }
            if (cx < 0.0 && (p.A * it.x).norm() <= settings.feas_tol * -cx) {
                return finish(it, SolveStatus::dual_infeasible, iter);
            }
        }
        if (iter >= settings.max_iters) {
            return finish(best, SolveStatus::max_iters, iter);
        }

        scalings.clear();
        for (const ConeBlock& blk : blocks) {
            scalings.emplace_back(it.x.segment(blk.offset, blk.dim), it.z.segment(blk.offset, blk.dim));
        }
        kkt.update(scalings);

        // Dual-row coefficients of dtau: f = c_f, u = -W^2 c_c, r2 = b.
        const int nc = n - nf;
        VectorXd u1(nc);
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const ConeBlock& blk = blocks[k];
            u1.segment(blk.offset - nf, blk.dim) = -(kkt.w2(k) * p.c.segment(blk.offset, blk.dim));
        }
        kkt.solve(p.c.head(nf), u1, p.b, x1, y1);
        const double denom = p.c.dot(x1) - p.b.dot(y1) - it.kappa / it.tau;

        // Complementarity right-hand side rc per cone block; returns the
        // direction together with W dz and W^-1 dx per block.
        struct Scaled {
            std::vector<VectorXd> wdz;
            std::vector<VectorXd> winv_dx;
        };
        auto direction = [&](double eta, const std::vector<VectorXd>& rc, double rtau, Scaled& sd) {
            Direction d;
            std::vector<VectorXd> q(blocks.size());
            VectorXd u2(nc);
            for (std::size_t k = 0; k < blocks.size(); ++k) {
                const ConeBlock& blk = blocks[k];
                q[k] = soc::jordan_divide(scalings[k].lambda, rc[k]);
                u2.segment(blk.offset - nf, blk.dim) =
                    eta * (kkt.w2(k) * rd.segment(blk.offset, blk.dim)) + scalings[k].w * q[k];
            }
            VectorXd x2;
            VectorXd y2;
            kkt.solve(-eta * rd.head(nf), u2, -eta * rp, x2, y2);
            d.dtau = (-eta * rg - p.c.dot(x2) + p.b.dot(y2) - rtau / it.tau) / denom;
            d.dx = x2 + d.dtau * x1;
            d.dy = y2 + d.dtau * y1;
            d.dz = -eta * rd - p.A.transpose() * d.dy + d.dtau * p.c;
            d.dz.head(nf).setZero();
            d.dkappa = (rtau - it.kappa * d.dtau) / it.tau;
            sd.wdz.resize(blocks.size());
            sd.winv_dx.resize(blocks.size());
            for (std::size_t k = 0; k < blocks.size(); ++k) {
                const ConeBlock& blk = blocks[k];
                sd.wdz[k] = scalings[k].w * d.dz.segment(blk.offset, blk.dim);
                sd.winv_dx[k] = q[k] - sd.wdz[k];
            }
            return d;
        };

        // Line search in the scaled space, where lambda stays well centred even
        // when x and z approach the cone boundary.
        auto step_to_boundary = [&](const Direction& d, const Scaled& sd) {
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < blocks.size(); ++k) {
                alpha = std::min(alpha, soc::max_step(scalings[k].lambda, sd.winv_dx[k]));
                alpha = std::min(alpha, soc::max_step(scalings[k].lambda, sd.wdz[k]));
            }
            // The unscaled bound guards against KKT solves that are too inexact
            // for the scaled pair to represent the actual update.
            for (const ConeBlock& blk : blocks) {
                alpha = std::min(alpha, soc::max_step(it.x.segment(blk.offset, blk.dim),
                                                      d.dx.segment(blk.offset, blk.dim)));
                alpha = std::min(alpha, soc::max_step(it.z.segment(blk.offset, blk.dim),
                                                      d.dz.segment(blk.offset, blk.dim)));
            }
            if (d.dtau < 0.0) alpha = std::min(alpha, -it.tau / d.dtau);
            if (d.dkappa < 0.0) alpha = std::min(alpha, -it.kappa / d.dkappa);
            return alpha;
        };

        // Predictor.
        std::vector<VectorXd> rc(blocks.size());
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const VectorXd& lam = scalings[k].lambda;
            rc[k] = -soc::jordan_product(lam, lam);
        }
        Scaled sd_aff;
        const Direction aff = direction(1.0, rc, -it.tau * it.kappa, sd_aff);
        const double alpha_aff = std::min(1.0, step_to_boundary(aff, sd_aff));
        const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 0.0, 1.0);

        // Corrector with the second-order Mehrotra term.
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const VectorXd& lam = scalings[k].lambda;
            rc[k] = -soc::jordan_product(lam, lam) - soc::jordan_product(sd_aff.winv_dx[k], sd_aff.wdz[k]);
            rc[k](0) += sigma * mu;
        }
        const double rtau = -it.tau * it.kappa + sigma * mu - aff.dtau * aff.dkappa;
        Scaled sd;
        const Direction d = direction(1.0 - sigma, rc, rtau, sd);
        const double alpha = std::min(1.0, settings.step_fraction * step_to_boundary(d, sd));

        if (!d.dx.allFinite() || !d.dy.allFinite() || !d.dz.allFinite() || !std::isfinite(d.dtau) ||
            !std::isfinite(d.dkappa) || !std::isfinite(alpha)) {
            return finish(best, SolveStatus::numerical_failure, iter);
        }

        it.x += alpha * d.dx;
        it.y += alpha * d.dy;
        it.z += alpha * d.dz;
        it.tau += alpha * d.dtau;
        it.kappa += alpha * d.dkappa;
        last_step = alpha;
        last_step_affine = alpha_aff;
        last_sigma = sigma;
    }
}

}  // namespace rdv
