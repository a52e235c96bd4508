#pragma once

// Time <-> true anomaly on an elliptic orbit. Anomalies are unwrapped
// everywhere: one revolution adds 2*pi and never wraps back.

namespace rdv {

/// Earth gravitational parameter [km^3/s^2].
inline constexpr double kEarthMu = 398600.4418;

/// Keplerian elements of the passive target orbit. Angles in radians.
struct TargetOrbit {
    double a = 1.0;       ///< semi-major axis
    double e = 0.0;       ///< eccentricity, 0 <= e < 1
    double i = 0.0;       ///< inclination
    double raan = 0.0;    ///< right ascension of the ascending node
    double argp = 0.0;    ///< argument of periapsis
    double theta0 = 0.0;  ///< true anomaly at epoch (t = 0)
    double mu = 1.0;      ///< gravitational parameter, length^3/time^2

    /// Throws DomainError unless 0 <= e < 1, a > 0, mu > 0 and all fields are finite.
    void validate() const;
};

struct OrbitConstants {
    double p;       ///< semilatus rectum a(1 - e^2)
    double h;       ///< specific angular momentum sqrt(mu p)
    double k2;      ///< h / p^2
    double n;       ///< mean motion sqrt(mu / a^3)
    double period;  ///< 2 pi / n
};

struct AnomalyState {
    double theta;  ///< unwrapped true anomaly
    double t;      ///< time since epoch
};

OrbitConstants orbit_constants(const TargetOrbit& orbit);

/// Mean anomaly of an unwrapped true anomaly; one revolution of theta adds 2*pi.
double mean_from_true(double theta, double e);

/// Unwrapped true anomaly from an unwrapped mean anomaly.
/// Newton on Kepler's equation with a bisection safeguard.
double true_from_mean(double mean_anomaly, double e);

/// Time since epoch at which the target reaches `theta` (t(theta0) = 0).
double time_from_true(double theta, const TargetOrbit& orbit);

/// Inverse of time_from_true; monotone increasing in t.
double true_from_time(double t, const TargetOrbit& orbit);

}  // namespace rdv
