#include "phononbus/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phononbus/constants.hpp"
#include "phononbus/errors.hpp"

namespace phononbus {

namespace {

using nlohmann::json;

enum class Unit {
    Freq,         // rad/s
    Length,       // m
    Intensity,    // W/m^2
    LinDensity,   // kg/m
    Tension,      // N
    Stiffness,    // m^4/s^2
    EnergyEV,     // eV
    Wavenumber,   // 1/m
    Dimensionless
};

double unit_factor(Unit u, const std::string& unit, const char* what) {
    const PhysicalConstants pc{};
    switch (u) {
        case Unit::Freq:
            // Cycle units convert to angular; rad/s passes through.
            if (unit == "rad/s") return 1.0;
            if (unit == "Hz") return 2.0 * pi;
            if (unit == "kHz") return 2.0 * pi * 1e3;
            if (unit == "MHz") return 2.0 * pi * 1e6;
            if (unit == "GHz") return 2.0 * pi * 1e9;
            if (unit == "THz") return 2.0 * pi * 1e12;
            break;
        case Unit::Length:
            if (unit == "m") return 1.0;
            if (unit == "mm") return 1e-3;
            if (unit == "um" || unit == "µm") return 1e-6;
            if (unit == "nm") return 1e-9;
            if (unit == "angstrom" || unit == "A") return 1e-10;
            break;
        case Unit::Intensity:
            if (unit == "W/m^2") return 1.0;
            if (unit == "W/cm^2") return 1e4;
            if (unit == "MW/cm^2") return 1e10;
            break;
        case Unit::LinDensity:
            if (unit == "kg/m") return 1.0;
            if (unit == "amu/angstrom") return pc.amu / 1e-10;
            break;
        case Unit::Tension:
            if (unit == "N") return 1.0;
            if (unit == "nN") return 1e-9;
            if (unit == "pN") return 1e-12;
            break;
        case Unit::Stiffness:
            if (unit == "m^4/s^2") return 1.0;
            break;
        case Unit::EnergyEV:
            if (unit == "eV") return 1.0;
            if (unit == "meV") return 1e-3;
            if (unit == "J") return 1.0 / pc.eV;
            break;
        case Unit::Wavenumber:
            if (unit == "1/m") return 1.0;
            if (unit == "1/cm") return 100.0;
            break;
        case Unit::Dimensionless:
            if (unit.empty()) return 1.0;
            break;
    }
    throw ConfigError(std::string(what) + ": unsupported unit '" + unit + "'");
}

double take_number(const json& j, const char* what, Unit u) {
    if (j.is_number()) return j.get<double>();
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "value" && it.key() != "unit")
                throw ConfigError(std::string(what) + ": unknown key '" + it.key() +
                                  "' in value wrapper");
        if (!j.contains("value") || !j["value"].is_number())
            throw ConfigError(std::string(what) + ": wrapper needs a numeric 'value'");
        double v = j["value"].get<double>();
        if (!j.contains("unit")) return v;
        if (!j["unit"].is_string())
            throw ConfigError(std::string(what) + ": 'unit' must be a string");
        return v * unit_factor(u, j["unit"].get<std::string>(), what);
    }
    throw ConfigError(std::string(what) + ": expected a number or {value, unit}");
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
}

Material parse_material(const json& j) {
    if (j.is_string()) return builtin_material(j.get<std::string>());
    if (!j.is_object()) throw ConfigError("material: expected preset name or record");
    // Inline records start from the CdTe preset (or a named base) and
    // override whichever fields are present.
    Material m = j.contains("preset") ? builtin_material(j["preset"].get<std::string>())
                                      : builtin_material("CdTe");
    reject_unknown(j,
                   {"preset", "name", "gamma_rec", "omega_d1", "delta",
                    "multiplet_gap_eV", "dot_radius", "beta", "fc_product_01",
                    "fc_product_1v", "dipole_0v", "dipole_1v", "i2_max"},
                   "material");
    if (j.contains("name")) m.name = j["name"].get<std::string>();
    else if (!j.contains("preset")) m.name = "custom";
    if (j.contains("gamma_rec")) m.gamma_rec = take_number(j["gamma_rec"], "material.gamma_rec", Unit::Freq);
    if (j.contains("omega_d1")) m.omega_d1 = take_number(j["omega_d1"], "material.omega_d1", Unit::Freq);
    if (j.contains("delta")) m.delta = take_number(j["delta"], "material.delta", Unit::Freq);
    if (j.contains("multiplet_gap_eV"))
        m.multiplet_gap_eV = take_number(j["multiplet_gap_eV"], "material.multiplet_gap_eV", Unit::EnergyEV);
    if (j.contains("dot_radius")) m.dot_radius = take_number(j["dot_radius"], "material.dot_radius", Unit::Length);
    if (j.contains("beta")) m.beta = take_number(j["beta"], "material.beta", Unit::Dimensionless);
    if (j.contains("fc_product_01"))
        m.fc_product_01 = take_number(j["fc_product_01"], "material.fc_product_01", Unit::Dimensionless);
    if (j.contains("fc_product_1v"))
        m.fc_product_1v = take_number(j["fc_product_1v"], "material.fc_product_1v", Unit::Dimensionless);
    if (j.contains("dipole_0v")) m.dipole_0v = take_number(j["dipole_0v"], "material.dipole_0v", Unit::Dimensionless);
    if (j.contains("dipole_1v")) m.dipole_1v = take_number(j["dipole_1v"], "material.dipole_1v", Unit::Dimensionless);
    if (j.contains("i2_max")) m.i2_max = take_number(j["i2_max"], "material.i2_max", Unit::Intensity);
    return m;
}

SupportSpec default_support(std::size_t n_dots) {
    const PhysicalConstants pc{};
    SupportSpec sp;
    sp.kind = SupportKind::String;
    sp.linear_density_lambda = pc.lambda0();
    sp.unit_length_l = 3e-6;
    // Tension chosen so the 50-dot default chain has a 1e8 rad/s fundamental.
    sp.tension = pc.lambda0() * std::pow(1.5e4 / pi, 2.0);
    sp.length_L = sp.unit_length_l * static_cast<double>(n_dots);
    return sp;
}

SupportSpec parse_support(const json& j, std::size_t n_dots) {
    SupportSpec sp = default_support(n_dots);
    if (j.is_null()) return sp;
    if (!j.is_object()) throw ConfigError("support: expected a record");
    reject_unknown(j,
                   {"kind", "L_m", "derive_from_N", "lambda_kg_per_m", "tension_N",
                    "stiffness_m4_per_s2", "l_m"},
                   "support");
    if (j.contains("kind")) {
        const std::string k = j["kind"].get<std::string>();
        if (k == "string") sp.kind = SupportKind::String;
        else if (k == "rod") sp.kind = SupportKind::Rod;
        else throw ConfigError("support.kind must be 'string' or 'rod'");
    }
    if (j.contains("lambda_kg_per_m"))
        sp.linear_density_lambda = take_number(j["lambda_kg_per_m"], "support.lambda_kg_per_m", Unit::LinDensity);
    if (j.contains("l_m")) sp.unit_length_l = take_number(j["l_m"], "support.l_m", Unit::Length);
    if (j.contains("tension_N")) sp.tension = take_number(j["tension_N"], "support.tension_N", Unit::Tension);
    else if (sp.kind == SupportKind::Rod) sp.tension = 0.0;
    if (j.contains("stiffness_m4_per_s2"))
        sp.stiffness = take_number(j["stiffness_m4_per_s2"], "support.stiffness_m4_per_s2", Unit::Stiffness);

    const bool derive = j.contains("derive_from_N") && j["derive_from_N"].get<bool>();
    const double derived_L = sp.unit_length_l * static_cast<double>(n_dots);
    if (j.contains("L_m")) {
        sp.length_L = take_number(j["L_m"], "support.L_m", Unit::Length);
        if (derive && std::abs(sp.length_L - derived_L) > 1e-9 * derived_L)
            throw ConfigError("support: L_m contradicts derive_from_N (l_m * N)");
    } else if (derive) {
        sp.length_L = derived_L;
    } else {
        throw ConfigError("support: give L_m or set derive_from_N");
    }
    return sp;
}

const char* wave_name(WaveConfig w) {
    return w == WaveConfig::StandingWave ? "standing" : "travelling";
}

WaveConfig parse_wave(const std::string& s) {
    if (s == "standing") return WaveConfig::StandingWave;
    if (s == "travelling" || s == "traveling") return WaveConfig::TravellingWave;
    throw ConfigError("wave_config must be 'standing' or 'travelling'");
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario JSON parse failed: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("scenario file must hold a JSON object");
    reject_unknown(root, {"material", "support", "scenario"}, "scenario file");

    Scenario s;
    s.material = root.contains("material") ? parse_material(root["material"])
                                           : builtin_material("CdTe");

    // Run parameters first: N feeds the support-length derivation.
    s.n_dots = 50;
    s.epsilon = 0.1;
    s.wave_config = WaveConfig::StandingWave;
    s.cos_theta = 1.0;
    s.k2_magnitude = 0.0;
    if (root.contains("scenario")) {
        const json& sc = root["scenario"];
        if (!sc.is_object()) throw ConfigError("scenario: expected a record");
        reject_unknown(sc, {"N", "epsilon", "wave_config", "cos_theta", "k2_per_m"},
                       "scenario");
        if (sc.contains("N")) {
            if (!sc["N"].is_number_integer() || sc["N"].get<std::int64_t>() < 1)
                throw ConfigError("scenario.N must be a positive integer");
            s.n_dots = sc["N"].get<std::size_t>();
        }
        if (sc.contains("epsilon")) s.epsilon = take_number(sc["epsilon"], "scenario.epsilon", Unit::Dimensionless);
        if (sc.contains("wave_config")) s.wave_config = parse_wave(sc["wave_config"].get<std::string>());
        if (sc.contains("cos_theta")) s.cos_theta = take_number(sc["cos_theta"], "scenario.cos_theta", Unit::Dimensionless);
        if (sc.contains("k2_per_m")) s.k2_magnitude = take_number(sc["k2_per_m"], "scenario.k2_per_m", Unit::Wavenumber);
    }
    if (s.k2_magnitude == 0.0) s.k2_magnitude = s.material.gap_wavenumber();

    s.support = parse_support(root.contains("support") ? root["support"] : json(),
                              s.n_dots);
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return scenario_from_json_text(buf.str());
}

std::string scenario_to_json_text(const Scenario& s) {
    json root;
    json m;
    m["name"] = s.material.name;
    m["gamma_rec"] = s.material.gamma_rec;
    m["omega_d1"] = s.material.omega_d1;
    m["delta"] = s.material.delta;
    m["multiplet_gap_eV"] = s.material.multiplet_gap_eV;
    m["dot_radius"] = s.material.dot_radius;
    m["beta"] = s.material.beta;
    m["fc_product_01"] = s.material.fc_product_01;
    m["fc_product_1v"] = s.material.fc_product_1v;
    m["dipole_0v"] = s.material.dipole_0v;
    m["dipole_1v"] = s.material.dipole_1v;
    m["i2_max"] = s.material.i2_max;
    root["material"] = m;

    json sp;
    sp["kind"] = (s.support.kind == SupportKind::String) ? "string" : "rod";
    sp["L_m"] = s.support.length_L;
    sp["lambda_kg_per_m"] = s.support.linear_density_lambda;
    if (s.support.kind == SupportKind::String) sp["tension_N"] = s.support.tension;
    else sp["stiffness_m4_per_s2"] = s.support.stiffness;
    sp["l_m"] = s.support.unit_length_l;
    root["support"] = sp;

    json sc;
    sc["N"] = s.n_dots;
    sc["epsilon"] = s.epsilon;
    sc["wave_config"] = wave_name(s.wave_config);
    sc["cos_theta"] = s.cos_theta;
    sc["k2_per_m"] = s.k2_magnitude;
    root["scenario"] = sc;
    return root.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::string& path) {
    const std::string text = scenario_to_json_text(s);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void apply_override(Scenario& s, const std::string& key_eq_value) {
    const auto eq = key_eq_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like key=value: " + key_eq_value);
    const std::string key = key_eq_value.substr(0, eq);
    const std::string val = key_eq_value.substr(eq + 1);

    auto as_double = [&]() {
        try {
            std::size_t used = 0;
            double v = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("override " + key + ": bad number '" + val + "'");
        }
    };

    if (key == "material") { s.material = builtin_material(val); return; }
    if (key == "material.name") { s.material.name = val; return; }
    if (key == "material.gamma_rec") { s.material.gamma_rec = as_double(); return; }
    if (key == "material.omega_d1") { s.material.omega_d1 = as_double(); return; }
    if (key == "material.delta") { s.material.delta = as_double(); return; }
    if (key == "material.multiplet_gap_eV") { s.material.multiplet_gap_eV = as_double(); return; }
    if (key == "material.dot_radius") { s.material.dot_radius = as_double(); return; }
    if (key == "material.beta") { s.material.beta = as_double(); return; }
    if (key == "material.fc_product_01") { s.material.fc_product_01 = as_double(); return; }
    if (key == "material.fc_product_1v") { s.material.fc_product_1v = as_double(); return; }
    if (key == "material.dipole_0v") { s.material.dipole_0v = as_double(); return; }
    if (key == "material.dipole_1v") { s.material.dipole_1v = as_double(); return; }
    if (key == "material.i2_max") { s.material.i2_max = as_double(); return; }
    if (key == "support.kind") {
        if (val == "string") s.support.kind = SupportKind::String;
        else if (val == "rod") s.support.kind = SupportKind::Rod;
        else throw ConfigError("support.kind must be 'string' or 'rod'");
        return;
    }
    if (key == "support.L_m") { s.support.length_L = as_double(); return; }
    if (key == "support.lambda_kg_per_m") { s.support.linear_density_lambda = as_double(); return; }
    if (key == "support.tension_N") { s.support.tension = as_double(); return; }
    if (key == "support.stiffness_m4_per_s2") { s.support.stiffness = as_double(); return; }
    if (key == "support.l_m") { s.support.unit_length_l = as_double(); return; }
    if (key == "scenario.N") {
        try {
            std::size_t used = 0;
            long long n = std::stoll(val, &used);
            if (used != val.size() || n < 1) throw std::invalid_argument("bad");
            s.n_dots = static_cast<std::size_t>(n);
        } catch (const std::exception&) {
            throw ConfigError("override scenario.N: bad positive integer '" + val + "'");
        }
        return;
    }
    if (key == "scenario.epsilon") { s.epsilon = as_double(); return; }
    if (key == "scenario.wave_config") { s.wave_config = parse_wave(val); return; }
    if (key == "scenario.cos_theta") { s.cos_theta = as_double(); return; }
    if (key == "scenario.k2_per_m") { s.k2_magnitude = as_double(); return; }
    throw ConfigError("unknown override key: " + key);
}

void validate_scenario(const Scenario& s) {
    validate_material(s.material);
    const SupportSpec& sp = s.support;
    if (!(sp.length_L > 0.0)) throw ConfigError("support length must be > 0");
    if (!(sp.linear_density_lambda > 0.0)) throw ConfigError("support density must be > 0");
    if (!(sp.unit_length_l > 0.0)) throw ConfigError("support unit length must be > 0");
    if (sp.kind == SupportKind::String && !(sp.tension > 0.0))
        throw ConfigError("string support needs tension > 0");
    if (sp.kind == SupportKind::Rod && !(sp.stiffness > 0.0))
        throw ConfigError("rod support needs stiffness > 0");
    if (s.n_dots < 1) throw ConfigError("scenario needs N >= 1");
    if (!(s.epsilon > 0.0 && s.epsilon < 1.0))
        throw ConfigError("epsilon must lie in (0,1)");
    if (!(s.cos_theta >= 0.0 && s.cos_theta <= 1.0))
        throw ConfigError("cos_theta must lie in [0,1]");
    if (!(s.k2_magnitude > 0.0)) throw ConfigError("k2 must be > 0");
    // The sideband arm must sit near the optical wavenumber the multiplet gap
    // dictates; a mismatch usually means inconsistent unit handling upstream.
    const double gap_k = s.material.gap_wavenumber();
    if (std::abs(s.k2_magnitude / gap_k - 1.0) > 0.10)
        throw ConfigError("k2 deviates more than 10% from the multiplet-gap wavenumber");
}

}  // namespace phononbus
