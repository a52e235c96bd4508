#include "rdv/relative_dynamics.hpp"

#include <cmath>
#include <sstream>

#include "rdv/errors.hpp"

namespace rdv {

namespace {

void require_stm_eccentricity(double e) {
    if (!(e >= 0.0 && e <= kMaxStmEccentricity)) {
        std::ostringstream msg;
        msg << "transition matrices require 0 <= e <= " << kMaxStmEccentricity << ", got " << e;
        throw DomainError(msg.str());
    }
}

}  // namespace

Vec6 RelativeState::vector() const {
    Vec6 x;
    x << r, v;
    return x;
}

RelativeState RelativeState::from_vector(const Vec6& x) {
    return {x.head<3>(), x.tail<3>()};
}

Vec6 TransformedState::vector() const {
    Vec6 x;
    x << r, v;
    return x;
}

TransformedState TransformedState::from_vector(const Vec6& x) {
    return {x.head<3>(), x.tail<3>()};
}

double rho_at(double theta, double e) {
    return 1.0 + e * std::cos(theta);
}

TransformedState to_transformed(const RelativeState& s, double theta, const TargetOrbit& orbit) {
    const OrbitConstants k = orbit_constants(orbit);
    const double rho = rho_at(theta, orbit.e);
    TransformedState st;
    st.r = rho * s.r;
    st.v = -orbit.e * std::sin(theta) * s.r + s.v / (k.k2 * rho);
    return st;
}

RelativeState from_transformed(const TransformedState& st, double theta, const TargetOrbit& orbit) {
    const OrbitConstants k = orbit_constants(orbit);
    const double rho = rho_at(theta, orbit.e);
    RelativeState s;
    s.r = st.r / rho;
    s.v = k.k2 * (orbit.e * std::sin(theta) * st.r + rho * st.v);
    return s;
}

Mat4 in_plane_fundamental(double theta, double e, double j) {
    const double rho = rho_at(theta, e);
    const double s = rho * std::sin(theta);
    const double c = rho * std::cos(theta);
    const double ds = std::cos(theta) + e * std::cos(2.0 * theta);
    const double dc = -(std::sin(theta) + e * std::sin(2.0 * theta));
    const double inv_rho = 1.0 / rho;

    Mat4 phi;
    phi << 1.0, -c * (1.0 + inv_rho), s * (1.0 + inv_rho), 3.0 * rho * rho * j,
        0.0, s, c, 2.0 - 3.0 * e * s * j,
        0.0, 2.0 * s, 2.0 * c - e, 3.0 * (1.0 - 2.0 * e * s * j),
        0.0, ds, dc, -3.0 * e * (ds * j + s * inv_rho * inv_rho);
    return phi;
}

Mat4 in_plane_fundamental_inverse(double theta, double e) {
    const double rho = rho_at(theta, e);
    const double s = rho * std::sin(theta);
    const double c = rho * std::cos(theta);
    const double inv_rho = 1.0 / rho;
    const double inv_rho2 = inv_rho * inv_rho;
    const double e2 = e * e;

    Mat4 inv;
    inv << 1.0 - e2, 3.0 * e * s * (inv_rho + inv_rho2), -e * s * (1.0 + inv_rho), -e * c + 2.0,
        0.0, -3.0 * s * (inv_rho + e2 * inv_rho2), s * (1.0 + inv_rho), c - 2.0 * e,
        // The (3,3) entry carries +e; without it the product with the
        // fundamental matrix is not the identity for e > 0.
        0.0, -3.0 * (c * inv_rho + e), c * (1.0 + inv_rho) + e, -s,
        0.0, 3.0 * rho + e2 - 1.0, -rho * rho, e * s;
    return inv / (1.0 - e2);
}

Mat4 stm_in_plane(double theta1, double theta0, const TargetOrbit& orbit) {
    require_stm_eccentricity(orbit.e);
    const OrbitConstants k = orbit_constants(orbit);
    const double j = k.k2 * (time_from_true(theta1, orbit) - time_from_true(theta0, orbit));
    return in_plane_fundamental(theta1, orbit.e, j) * in_plane_fundamental_inverse(theta0, orbit.e);
}

Mat2 stm_out_of_plane(double theta1, double theta0) {
    const double d = theta1 - theta0;
    const double cd = std::cos(d);
    const double sd = std::sin(d);
    Mat2 m;
    m << cd, sd, -sd, cd;
    return m;
}

Stm stm_full(double theta1, double theta0, const TargetOrbit& orbit) {
    const Mat4 in_plane = stm_in_plane(theta1, theta0, orbit);
    const Mat2 out_of_plane = stm_out_of_plane(theta1, theta0);
    Stm m = Stm::Zero();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m(kInPlaneIndices[r], kInPlaneIndices[c]) = in_plane(r, c);
        }
    }
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            m(kOutOfPlaneIndices[r], kOutOfPlaneIndices[c]) = out_of_plane(r, c);
        }
    }
    return m;
}

TransformedState propagate(const TransformedState& st, double theta0, double theta1,
                           const TargetOrbit& orbit) {
    return TransformedState::from_vector(stm_full(theta1, theta0, orbit) * st.vector());
}

}  // namespace rdv
