#include "rdv/second_order_cone.hpp"

#include <cmath>
#include <limits>

namespace rdv::soc {

Vector identity(int dim) {
    Vector e = Vector::Zero(dim);
    e(0) = 1.0;
    return e;
}

double det(const Eigen::Ref<const Vector>& u) {
    // Factored form keeps relative accuracy near the boundary.
    const double tail = u.tail(u.size() - 1).norm();
    return (u(0) - tail) * (u(0) + tail);
}

double margin(const Eigen::Ref<const Vector>& u) {
    return u(0) - u.tail(u.size() - 1).norm();
}

Vector jordan_product(const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& v) {
    const Eigen::Index k = u.size() - 1;
    Vector w(u.size());
    w(0) = u.dot(v);
    w.tail(k) = u(0) * v.tail(k) + v(0) * u.tail(k);
    return w;
}

Vector jordan_divide(const Eigen::Ref<const Vector>& lambda, const Eigen::Ref<const Vector>& r) {
    const Eigen::Index k = lambda.size() - 1;
    const double l0 = lambda(0);
    const double d = l0 * l0 - lambda.tail(k).squaredNorm();
    Vector q(lambda.size());
    q(0) = (l0 * r(0) - lambda.tail(k).dot(r.tail(k))) / d;
    q.tail(k) = (r.tail(k) - q(0) * lambda.tail(k)) / l0;
    return q;
}

double max_step(const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& du) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const Eigen::Index k = u.size() - 1;
    // f(alpha) = a alpha^2 + b alpha + c is the cone determinant along the ray;
    // its first positive root bounds the step.
    const double a = du(0) * du(0) - du.tail(k).squaredNorm();
    const double b = 2.0 * (u(0) * du(0) - u.tail(k).dot(du.tail(k)));
    const double c = std::max(det(u), 0.0);
    if (c == 0.0) {
        return 0.0;
    }
    const double scale = std::max({std::abs(a), std::abs(b), c});
    if (std::abs(a) <= 1e-15 * scale) {
        return b < 0.0 ? -c / b : kInf;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return kInf;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double best = kInf;
    for (double root : {q / a, c / q}) {
        if (std::isfinite(root) && root > 0.0) {
            best = std::min(best, root);
        }
    }
    return best;
}

NtScaling::NtScaling(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& z) {
    const Eigen::Index dim = x.size();
    const Eigen::Index k = dim - 1;
    const double x_norm = std::sqrt(det(x));
    const double z_norm = std::sqrt(det(z));
    const Vector xs = x / x_norm;
    const Vector zs = z / z_norm;
    const double gamma = std::sqrt(0.5 * (1.0 + xs.dot(zs)));

    // wb = (xs + J zs) / (2 gamma), J = diag(1, -I); wb'J wb = 1.
    Vector wb(dim);
    wb(0) = (xs(0) + zs(0)) / (2.0 * gamma);
    wb.tail(k) = (xs.tail(k) - zs.tail(k)) / (2.0 * gamma);

    const double eta = std::sqrt(x_norm / z_norm);
    const Vector w1 = wb.tail(k);
    const Matrix tail_block = Matrix::Identity(k, k) + w1 * w1.transpose() / (1.0 + wb(0));

    w.resize(dim, dim);
    w(0, 0) = wb(0);
    w.block(0, 1, 1, k) = w1.transpose();
    w.block(1, 0, k, 1) = w1;
    w.block(1, 1, k, k) = tail_block;
    w_inv = w;
    w_inv.block(0, 1, 1, k) *= -1.0;
    w_inv.block(1, 0, k, 1) *= -1.0;

    w *= eta;
    w_inv /= eta;
    lambda = w * z;
}

}  // namespace rdv::soc
