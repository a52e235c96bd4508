#include "rdv/scenarios.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rdv/errors.hpp"

namespace rdv {

using nlohmann::json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) {
        throw InputError("expected an object", path);
    }
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw InputError("unknown field '" + item.key() + "'", path);
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) {
        throw InputError("missing required field", path + "." + key);
    }
    return obj.at(key);
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        throw InputError("expected a number", path);
    }
    return v.get<double>();
}

std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) {
        throw InputError("expected a string", path);
    }
    return v.get<std::string>();
}

// Angle given as name_deg or name_rad (at most one); zero when absent.
double angle(const json& obj, const std::string& name, const std::string& path) {
    const bool deg = obj.contains(name + "_deg");
    const bool rad = obj.contains(name + "_rad");
    if (deg && rad) {
        throw InputError("give either degrees or radians, not both", path + "." + name);
    }
    if (deg) {
        return number(obj.at(name + "_deg"), path + "." + name + "_deg") * kDegToRad;
    }
    if (rad) {
        return number(obj.at(name + "_rad"), path + "." + name + "_rad");
    }
    return 0.0;
}

// Prefers degrees when the conversion is exact on reload.
void put_angle(json& obj, const std::string& name, double value) {
    const double deg = value / kDegToRad;
    if (deg * kDegToRad == value) {
        obj[name + "_deg"] = deg;
    } else {
        obj[name + "_rad"] = value;
    }
}

enum class Quantity { length, velocity };

// Boundary vector converted to internal units (km, km/s or normalized).
Vec3 boundary_vector(const json& b, const std::string& key, Quantity q, bool normalized) {
    const std::string path = "boundary." + key;
    const json& node = require(b, key, "boundary");
    check_keys(node, path, {"value", "unit"});
    const json& value = require(node, "value", path);
    if (!value.is_array() || value.size() != 3) {
        throw InputError("expected an array of three numbers", path + ".value");
    }
    Vec3 out;
    for (int k = 0; k < 3; ++k) {
        out(k) = number(value[static_cast<std::size_t>(k)], path + ".value");
    }
    const std::string unit = text(require(node, "unit", path), path + ".unit");
    if (normalized) {
        if (unit != "normalized") {
            throw InputError("normalized scenarios need normalized boundary units", path + ".unit");
        }
        return out;
    }
    if (q == Quantity::length) {
        if (unit == "km") return out;
        if (unit == "m") return out / 1000.0;
        throw InputError("length unit must be m or km, got '" + unit + "'", path + ".unit");
    }
    if (unit == "km/s") return out;
    if (unit == "m/s") return out / 1000.0;
    throw InputError("velocity unit must be m/s or km/s, got '" + unit + "'", path + ".unit");
}

json vector_json(const Vec3& v, const std::string& unit) {
    return json{{"value", {v.x(), v.y(), v.z()}}, {"unit", unit}};
}

Scenario from_json(const json& doc) {
    check_keys(doc, "scenario", {"name", "orbit", "boundary", "horizon", "options"});
    Scenario s;
    s.name = text(require(doc, "name", "scenario"), "name");

    const json& orbit = require(doc, "orbit", "scenario");
    check_keys(orbit, "orbit",
               {"a", "a_unit", "e", "i_deg", "i_rad", "raan_deg", "raan_rad", "argp_deg", "argp_rad",
                "theta0_deg", "theta0_rad", "mu"});
    const std::string a_unit = text(require(orbit, "a_unit", "orbit"), "orbit.a_unit");
    const bool normalized = a_unit == "normalized";
    double a = number(require(orbit, "a", "orbit"), "orbit.a");
    if (a_unit == "m") {
        a /= 1000.0;
    } else if (a_unit != "km" && !normalized) {
        throw InputError("semi-major axis unit must be m, km or normalized", "orbit.a_unit");
    }
    s.orbit.a = a;
    s.orbit.e = number(require(orbit, "e", "orbit"), "orbit.e");
    s.orbit.i = angle(orbit, "i", "orbit");
    s.orbit.raan = angle(orbit, "raan", "orbit");
    s.orbit.argp = angle(orbit, "argp", "orbit");
    s.orbit.theta0 = angle(orbit, "theta0", "orbit");
    s.orbit.mu = orbit.contains("mu") ? number(orbit.at("mu"), "orbit.mu") : (normalized ? 1.0 : kEarthMu);

    const json& b = require(doc, "boundary", "scenario");
    check_keys(b, "boundary", {"r0", "v0", "rf", "vf"});
    s.x0.r = boundary_vector(b, "r0", Quantity::length, normalized);
    s.x0.v = boundary_vector(b, "v0", Quantity::velocity, normalized);
    s.xf.r = boundary_vector(b, "rf", Quantity::length, normalized);
    s.xf.v = boundary_vector(b, "vf", Quantity::velocity, normalized);

    const json& h = require(doc, "horizon", "scenario");
    check_keys(h, "horizon", {"dt_seconds", "thetaf_rad"});
    if (h.contains("dt_seconds")) {
        s.duration = number(h.at("dt_seconds"), "horizon.dt_seconds");
    }
    if (h.contains("thetaf_rad")) {
        s.thetaf = number(h.at("thetaf_rad"), "horizon.thetaf_rad");
    }

    s.units = normalized ? UnitSystem::normalized_units() : UnitSystem::physical("km", "m/s");
    if (doc.contains("options")) {
        const json& o = doc.at("options");
        check_keys(o, "options", {"planar", "mesh_M", "extraction_tol", "output_units"});
        if (o.contains("planar")) {
            if (!o.at("planar").is_boolean()) {
                throw InputError("expected true or false", "options.planar");
            }
            s.planar = o.at("planar").get<bool>();
        }
        if (o.contains("mesh_M")) {
            if (!o.at("mesh_M").is_number_integer()) {
                throw InputError("expected an integer", "options.mesh_M");
            }
            s.mesh_M = o.at("mesh_M").get<int>();
        }
        if (o.contains("extraction_tol")) {
            s.extraction_tol = number(o.at("extraction_tol"), "options.extraction_tol");
        }
        if (o.contains("output_units")) {
            const json& u = o.at("output_units");
            check_keys(u, "options.output_units", {"length", "velocity"});
            if (normalized) {
                throw InputError("normalized scenarios have no physical output units", "options.output_units");
            }
            s.units = UnitSystem::physical(
                u.contains("length") ? text(u.at("length"), "options.output_units.length") : "km",
                u.contains("velocity") ? text(u.at("velocity"), "options.output_units.velocity") : "m/s");
        }
    }
    s.validate();
    return s;
}

json to_json(const Scenario& s) {
    const bool normalized = s.units.normalized;
    const std::string lu = normalized ? "normalized" : "km";
    const std::string vu = normalized ? "normalized" : "km/s";
    json orbit{{"a", s.orbit.a}, {"a_unit", lu}, {"e", s.orbit.e}, {"mu", s.orbit.mu}};
    put_angle(orbit, "i", s.orbit.i);
    put_angle(orbit, "raan", s.orbit.raan);
    put_angle(orbit, "argp", s.orbit.argp);
    put_angle(orbit, "theta0", s.orbit.theta0);

    json doc;
    doc["name"] = s.name;
    doc["orbit"] = orbit;
    doc["boundary"] = {{"r0", vector_json(s.x0.r, lu)},
                       {"v0", vector_json(s.x0.v, vu)},
                       {"rf", vector_json(s.xf.r, lu)},
                       {"vf", vector_json(s.xf.v, vu)}};
    doc["horizon"] = s.duration ? json{{"dt_seconds", *s.duration}} : json{{"thetaf_rad", *s.thetaf}};
    json options{{"planar", s.planar}, {"mesh_M", s.mesh_M}, {"extraction_tol", s.extraction_tol}};
    if (!normalized) {
        options["output_units"] = {{"length", s.units.length_unit}, {"velocity", s.units.velocity_unit}};
    }
    doc["options"] = options;
    return doc;
}

constexpr const char* kCircleToCircle = R"({
  "name": "circle2circle",
  "orbit": {"a": 1.0, "a_unit": "normalized", "e": 0.0, "theta0_deg": 0.0, "mu": 1.0},
  "boundary": {
    "r0": {"value": [-3.141592653589793, 0.0, 0.16666666666666666], "unit": "normalized"},
    "v0": {"value": [0.25, 0.0, 0.0], "unit": "normalized"},
    "rf": {"value": [0.0, 0.0, 0.0], "unit": "normalized"},
    "vf": {"value": [0.0, 0.0, 0.0], "unit": "normalized"}
  },
  "horizon": {"thetaf_rad": 10.0},
  "options": {"planar": true, "mesh_M": 257, "extraction_tol": 1e-5}
})";

constexpr const char* kAtv = R"({
  "name": "atv",
  "orbit": {"a": 6763.0, "a_unit": "km", "e": 0.0052, "i_deg": 52.0, "raan_deg": 0.0,
            "argp_deg": 0.0, "theta0_deg": 0.0, "mu": 398600.4418},
  "boundary": {
    "r0": {"value": [-30.0, 0.0, 0.5], "unit": "km"},
    "v0": {"value": [8.514, 0.0, 0.0], "unit": "m/s"},
    "rf": {"value": [-0.1, 0.0, 0.0], "unit": "km"},
    "vf": {"value": [0.0, 0.0, 0.0], "unit": "m/s"}
  },
  "horizon": {"dt_seconds": 55350.0},
  "options": {"planar": true, "mesh_M": 257, "extraction_tol": 1e-5,
              "output_units": {"length": "km", "velocity": "m/s"}}
})";

constexpr const char* kSimbolX = R"({
  "name": "simbolx",
  "orbit": {"a": 106246.98, "a_unit": "km", "e": 0.7988, "i_deg": 5.2, "raan_deg": 90.0,
            "argp_deg": 180.0, "theta0_deg": 135.0, "mu": 398600.4418},
  "boundary": {
    "r0": {"value": [18.3095, 0.0, -23.7647], "unit": "km"},
    "v0": {"value": [-0.0542, 0.0, -0.0418], "unit": "m/s"},
    "rf": {"value": [335.12, 0.0, -371.1], "unit": "m"},
    "vf": {"value": [0.00155, 0.0, 0.0014], "unit": "m/s"}
  },
  "horizon": {"dt_seconds": 49995.0},
  "options": {"planar": true, "mesh_M": 257, "extraction_tol": 1e-5,
              "output_units": {"length": "km", "velocity": "m/s"}}
})";

}  // namespace

Scenario parse_scenario(std::string_view text_in, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text_in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what(), source);
    }
    return from_json(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open scenario file", path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

std::string scenario_to_json(const Scenario& scenario) {
    return to_json(scenario).dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write scenario file", path.string());
    }
    out << scenario_to_json(scenario);
}

std::string scenario_hash(const Scenario& scenario) {
    const std::string canonical = to_json(scenario).dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::vector<std::string> builtin_names() {
    return {"circle2circle", "atv", "simbolx"};
}

Scenario builtin(const std::string& name) {
    if (name == "circle2circle") return parse_scenario(kCircleToCircle, name);
    if (name == "atv") return parse_scenario(kAtv, name);
    if (name == "simbolx") return parse_scenario(kSimbolX, name);
    std::string known;
    for (const auto& n : builtin_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw InputError("unknown built-in scenario '" + name + "' (available: " + known + ")", "scenario");
}

Scenario resolve_scenario(const std::string& name_or_path) {
    for (const auto& n : builtin_names()) {
        if (n == name_or_path) {
            return builtin(n);
        }
    }
    return load_scenario(name_or_path);
}

}  // namespace rdv
