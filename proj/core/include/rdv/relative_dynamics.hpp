#pragma once

// Linear relative motion about an elliptic target orbit in
// Tschauner-Hempel transformed coordinates.
//
// Rotating frame centred on the target: z radial towards the central body,
// y opposite to the orbital angular momentum, x completing the right-handed
// triad (along-track for a circular orbit). Six-state ordering is
// (x, y, z, vx, vy, vz); the in-plane sub-state is (x, z, vx, vz) and the
// out-of-plane sub-state is (y, vy).

#include <array>

#include <Eigen/Dense>

#include "rdv/kepler.hpp"

namespace rdv {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Six-state transition matrix over (x~, y~, z~, vx~, vy~, vz~).
using Stm = Mat6;

inline constexpr std::array<int, 4> kInPlaneIndices{0, 2, 3, 5};
inline constexpr std::array<int, 2> kOutOfPlaneIndices{1, 4};

/// Largest eccentricity accepted by the closed-form transition matrices.
inline constexpr double kMaxStmEccentricity = 0.99;

/// Chaser position and velocity in the target rotating frame.
struct RelativeState {
    Vec3 r = Vec3::Zero();
    Vec3 v = Vec3::Zero();

    Vec6 vector() const;
    static RelativeState from_vector(const Vec6& x);
};

/// Transformed position r~ = rho r and anomaly-rate velocity v~ = d r~ / d theta.
struct TransformedState {
    Vec3 r = Vec3::Zero();
    Vec3 v = Vec3::Zero();

    Vec6 vector() const;
    static TransformedState from_vector(const Vec6& x);
};

/// rho = 1 + e cos(theta).
double rho_at(double theta, double e);

TransformedState to_transformed(const RelativeState& s, double theta, const TargetOrbit& orbit);
RelativeState from_transformed(const TransformedState& st, double theta, const TargetOrbit& orbit);

/// Fundamental in-plane solution matrix at `theta` for a given J = k^2 (t - t0).
Mat4 in_plane_fundamental(double theta, double e, double j);

/// Inverse of the fundamental matrix at J = 0.
Mat4 in_plane_fundamental_inverse(double theta, double e);

/// In-plane transition from theta0 to theta1 over (x~, z~, vx~, vz~).
Mat4 stm_in_plane(double theta1, double theta0, const TargetOrbit& orbit);

/// Out-of-plane transition over (y~, vy~): a rotation by theta1 - theta0.
Mat2 stm_out_of_plane(double theta1, double theta0);

/// Full six-state transition; in-plane/out-of-plane cross blocks are exactly zero.
Stm stm_full(double theta1, double theta0, const TargetOrbit& orbit);

TransformedState propagate(const TransformedState& st, double theta0, double theta1,
                           const TargetOrbit& orbit);

}  // namespace rdv
