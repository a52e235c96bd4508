#pragma once

#include <optional>
#include <string>

#include "rdv/kepler.hpp"
#include "rdv/relative_dynamics.hpp"

namespace rdv {

/// Internal quantities are kilometres and seconds for physical scenarios and
/// dimensionless for normalized ones. The factors convert internal values to
/// the reporting units named by the labels.
struct UnitSystem {
    bool normalized = false;
    std::string length_unit = "km";
    std::string velocity_unit = "m/s";
    double length_factor = 1.0;
    double velocity_factor = 1000.0;

    std::string time_unit() const { return normalized ? "normalized" : "s"; }

    static UnitSystem normalized_units();
    /// Physical units reported in `length` ("km" | "m") and `velocity` ("m/s" | "km/s").
    static UnitSystem physical(const std::string& length, const std::string& velocity);

    bool operator==(const UnitSystem&) const = default;
};

/// A fixed-time rendezvous: target orbit, boundary states in the rotating
/// frame, and a horizon given either as a duration or as a final anomaly.
struct Scenario {
    std::string name;
    TargetOrbit orbit;
    RelativeState x0;
    RelativeState xf;
    std::optional<double> duration;
    std::optional<double> thetaf;
    UnitSystem units;
    bool planar = false;
    int mesh_M = 257;
    /// Impulse magnitudes at or below this value (reporting velocity unit) are dropped.
    double extraction_tol = 1e-5;

    /// Throws DomainError/InputError on violated invariants.
    void validate() const;

    double initial_anomaly() const { return orbit.theta0; }
    double final_anomaly() const;
    double horizon_time() const;
};

bool operator==(const RelativeState& a, const RelativeState& b);
bool operator==(const TargetOrbit& a, const TargetOrbit& b);
bool operator==(const Scenario& a, const Scenario& b);

}  // namespace rdv
