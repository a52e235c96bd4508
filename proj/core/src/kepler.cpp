#include "rdv/kepler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rdv/errors.hpp"

namespace rdv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxKeplerIterations = 50;
constexpr double kKeplerTolerance = 1e-13;

void require_elliptic(double e) {
    if (!(e >= 0.0 && e < 1.0)) {
        std::ostringstream msg;
        msg << "eccentricity must satisfy 0 <= e < 1, got " << e;
        throw DomainError(msg.str());
    }
}

// Solves E - e sin E = m for m in [0, 2 pi).
double eccentric_from_mean(double m, double e) {
    double lo = 0.0;
    double hi = kTwoPi;
    double ecc = e < 0.8 ? m : std::numbers::pi;
    double residual = 0.0;
    for (int it = 0; it < kMaxKeplerIterations; ++it) {
        residual = ecc - e * std::sin(ecc) - m;
        if (residual == 0.0) {
            return ecc;
        }
        if (residual > 0.0) {
            hi = ecc;
        } else {
            lo = ecc;
        }
        const double slope = 1.0 - e * std::cos(ecc);
        double next = ecc - residual / slope;
        if (!(next >= lo && next <= hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::abs(next - ecc);
        ecc = next;
        if (step <= kKeplerTolerance) {
            return ecc;
        }
    }
    residual = ecc - e * std::sin(ecc) - m;
    std::ostringstream msg;
    msg << "Kepler iteration did not converge (M = " << m << ", e = " << e
        << ", residual = " << residual << ")";
    throw ConvergenceError(msg.str(), std::abs(residual));
}

}  // namespace

void TargetOrbit::validate() const {
    if (!std::isfinite(a) || !std::isfinite(e) || !std::isfinite(i) || !std::isfinite(raan) ||
        !std::isfinite(argp) || !std::isfinite(theta0) || !std::isfinite(mu)) {
        throw DomainError("orbit elements must be finite");
    }
    require_elliptic(e);
    if (a <= 0.0) {
        throw DomainError("semi-major axis must be positive");
    }
    if (mu <= 0.0) {
        throw DomainError("gravitational parameter must be positive");
    }
}

OrbitConstants orbit_constants(const TargetOrbit& orbit) {
    orbit.validate();
    OrbitConstants k{};
    k.p = orbit.a * (1.0 - orbit.e * orbit.e);
    k.h = std::sqrt(orbit.mu * k.p);
    k.k2 = k.h / (k.p * k.p);
    k.n = std::sqrt(orbit.mu / (orbit.a * orbit.a * orbit.a));
    k.period = kTwoPi / k.n;
    return k;
}

double mean_from_true(double theta, double e) {
    require_elliptic(e);
    const double revs = std::floor(theta / kTwoPi);
    const double reduced = theta - kTwoPi * revs;
    const double half = 0.5 * reduced;
    const double ecc =
        2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(half), std::sqrt(1.0 + e) * std::cos(half));
    return ecc - e * std::sin(ecc) + kTwoPi * revs;
}

double true_from_mean(double mean_anomaly, double e) {
    require_elliptic(e);
    if (!std::isfinite(mean_anomaly)) {
        throw DomainError("mean anomaly must be finite");
    }
    const double revs = std::floor(mean_anomaly / kTwoPi);
    const double reduced = mean_anomaly - kTwoPi * revs;
    const double ecc = eccentric_from_mean(reduced, e);
    const double half = 0.5 * ecc;
    const double theta =
        2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(half), std::sqrt(1.0 - e) * std::cos(half));
    return theta + kTwoPi * revs;
}

double time_from_true(double theta, const TargetOrbit& orbit) {
    const OrbitConstants k = orbit_constants(orbit);
    if (!std::isfinite(theta)) {
        throw DomainError("true anomaly must be finite");
    }
    if (theta < orbit.theta0 - kTwoPi) {
        throw DomainError("true anomaly lies more than one revolution before epoch");
    }
    return (mean_from_true(theta, orbit.e) - mean_from_true(orbit.theta0, orbit.e)) / k.n;
}

double true_from_time(double t, const TargetOrbit& orbit) {
    const OrbitConstants k = orbit_constants(orbit);
    if (!std::isfinite(t)) {
        throw DomainError("time must be finite");
    }
    if (t == 0.0) {
        return orbit.theta0;
    }
    return true_from_mean(mean_from_true(orbit.theta0, orbit.e) + k.n * t, orbit.e);
}

}  // namespace rdv
