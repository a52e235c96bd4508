#include "rdv/scenario.hpp"

#include <cmath>

#include "rdv/errors.hpp"

namespace rdv {

UnitSystem UnitSystem::normalized_units() {
    return UnitSystem{true, "normalized", "normalized", 1.0, 1.0};
}

UnitSystem UnitSystem::physical(const std::string& length, const std::string& velocity) {
    UnitSystem u;
    if (length == "km") {
        u.length_factor = 1.0;
    } else if (length == "m") {
        u.length_factor = 1000.0;
    } else {
        throw InputError("length unit must be km or m, got '" + length + "'", "output_units.length");
    }
    if (velocity == "km/s") {
        u.velocity_factor = 1.0;
    } else if (velocity == "m/s") {
        u.velocity_factor = 1000.0;
    } else {
        throw InputError("velocity unit must be km/s or m/s, got '" + velocity + "'",
                         "output_units.velocity");
    }
    u.length_unit = length;
    u.velocity_unit = velocity;
    return u;
}

void Scenario::validate() const {
    orbit.validate();
    if (orbit.e > kMaxStmEccentricity) {
        throw DomainError("eccentricity above the supported limit of 0.99");
    }
    if (!x0.r.allFinite() || !x0.v.allFinite() || !xf.r.allFinite() || !xf.v.allFinite()) {
        throw InputError("boundary states must be finite", "boundary");
    }
    if (duration.has_value() == thetaf.has_value()) {
        throw InputError("exactly one of duration and final anomaly must be given", "horizon");
    }
    if (duration && !(*duration > 0.0 && std::isfinite(*duration))) {
        throw DomainError("transfer duration must be positive");
    }
    if (thetaf && !(*thetaf > orbit.theta0 && std::isfinite(*thetaf))) {
        throw DomainError("final anomaly must exceed the initial anomaly");
    }
    if (mesh_M < 2) {
        throw InputError("mesh size must be at least 2", "options.mesh_M");
    }
    if (!(extraction_tol >= 0.0) || !std::isfinite(extraction_tol)) {
        throw InputError("extraction tolerance must be non-negative", "options.extraction_tol");
    }
    if (planar && (x0.r.y() != 0.0 || x0.v.y() != 0.0 || xf.r.y() != 0.0 || xf.v.y() != 0.0)) {
        throw InputError("planar scenarios need zero out-of-plane boundary components", "boundary");
    }
}

double Scenario::final_anomaly() const {
    return thetaf ? *thetaf : true_from_time(*duration, orbit);
}

double Scenario::horizon_time() const {
    return duration ? *duration : time_from_true(*thetaf, orbit);
}

bool operator==(const RelativeState& a, const RelativeState& b) {
    return a.r == b.r && a.v == b.v;
}

bool operator==(const TargetOrbit& a, const TargetOrbit& b) {
    return a.a == b.a && a.e == b.e && a.i == b.i && a.raan == b.raan && a.argp == b.argp &&
           a.theta0 == b.theta0 && a.mu == b.mu;
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.orbit == b.orbit && a.x0 == b.x0 && a.xf == b.xf &&
           a.duration == b.duration && a.thetaf == b.thetaf && a.units == b.units &&
           a.planar == b.planar && a.mesh_M == b.mesh_M && a.extraction_tol == b.extraction_tol;
}

}  // namespace rdv
