#pragma once

// Second-order cone algebra. A cone block u = (u0, u1) with u0 >= ||u1||;
// the Jordan product is u o v = (u'v, u0 v1 + v0 u1) with identity e = (1, 0).

#include <Eigen/Dense>

namespace rdv::soc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Central point e = (1, 0, ..., 0).
Vector identity(int dim);

/// u0^2 - ||u1||^2.
double det(const Eigen::Ref<const Vector>& u);

/// u0 - ||u1||; positive in the interior.
double margin(const Eigen::Ref<const Vector>& u);

Vector jordan_product(const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& v);

/// Solves lambda o q = r for q; lambda must be in the interior.
Vector jordan_divide(const Eigen::Ref<const Vector>& lambda, const Eigen::Ref<const Vector>& r);

/// Largest alpha >= 0 with u + alpha du in the cone (u interior); +inf if unbounded.
double max_step(const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& du);

/// Nesterov-Todd scaling for a primal/dual interior pair (x, z):
/// W is symmetric positive definite with W^2 z = x, and lambda = W z = W^-1 x.
struct NtScaling {
    Matrix w;
    Matrix w_inv;
    Vector lambda;

    NtScaling(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& z);
};

}  // namespace rdv::soc
