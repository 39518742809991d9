#include "qotto/app/config.hpp"

#include <cmath>
#include <set>

#include "qotto/errors.hpp"

namespace qotto::app {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 4> kStrokeNames{"compression", "heating", "expansion", "cooling"};

[[noreturn]] void invalid(const std::string& field, const std::string& constraint) {
    throw Error(ErrorCode::ValidationError, "field '" + field + "' " + constraint);
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) invalid(field, "must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) invalid(field, "must be finite");
    return v;
}

std::vector<double> number_list(const json& j, const std::string& field) {
    if (!j.is_array()) invalid(field, "must be an array of numbers");
    std::vector<double> out;
    for (const json& item : j) out.push_back(number(item, field));
    return out;
}

std::string text(const json& j, const std::string& field) {
    if (!j.is_string()) invalid(field, "must be a string");
    return j.get<std::string>();
}

StrokeKhz stroke_entry(const json& j, const std::string& field) {
    if (!j.is_object()) invalid(field, "must be an object with omega_khz and gamma_khz");
    StrokeKhz s;
    for (const auto& [key, value] : j.items()) {
        if (key == "omega_khz") s.omega_khz = number(value, field + ".omega_khz");
        else if (key == "gamma_khz") s.gamma_khz = number(value, field + ".gamma_khz");
        else invalid(field + "." + key, "is not a recognised field");
    }
    if (!j.contains("omega_khz") || !j.contains("gamma_khz")) {
        invalid(field, "needs both omega_khz and gamma_khz");
    }
    return s;
}

template <class T>
T wrap_validation(const std::string& field, T (*fn)(const std::string&), const std::string& value) {
    try {
        return fn(value);
    } catch (const Error&) {
        invalid(field, "has unknown value '" + value + "'");
    }
}

} // namespace

std::string to_string(Command command) {
    switch (command) {
    case Command::Spectrum: return "spectrum";
    case Command::Steady: return "steady";
    case Command::Cycle: return "cycle";
    case Command::SweepT2: return "sweep-t2";
    case Command::SweepRatio: return "sweep-ratio";
    case Command::LepLocate: return "lep-locate";
    case Command::ThreeLevelCompare: return "three-level-compare";
    }
    return "unknown";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::Spectrum, Command::Steady, Command::Cycle, Command::SweepT2,
                      Command::SweepRatio, Command::LepLocate, Command::ThreeLevelCompare}) {
        if (name == to_string(c)) return c;
    }
    throw Error(ErrorCode::ValidationError, "unknown command '" + name + "'");
}

QubitParams RunConfig::qubit_params() const {
    return {kTwoPi * delta_khz * 1e3, kTwoPi * omega_khz * 1e3, gamma_khz * 1e3};
}

OttoCycleSpec RunConfig::cycle_spec() const {
    OttoCycleSpec spec = qotto::preset(preset);
    for (std::size_t i = 0; i < strokes.size(); ++i) {
        if (!strokes[i]) continue;
        spec.strokes[i].omega = kTwoPi * strokes[i]->omega_khz * 1e3;
        spec.strokes[i].gamma_eff = strokes[i]->gamma_khz * 1e3;
    }
    spec.delta_min = kTwoPi * delta_min_khz * 1e3;
    spec.delta_max = kTwoPi * delta_max_khz * 1e3;
    spec.t1 = t1_us * 1e-6;
    spec.t2 = t2_us * 1e-6;
    spec.t3 = t3_us * 1e-6;
    spec.t4 = t4_us * 1e-6;
    spec.ramp_mode = ramp;
    spec.sample_dt = sample_dt_us * 1e-6;
    spec.wait.enabled = wait;
    return spec;
}

std::vector<double> RunConfig::t2_values_s() const {
    if (t2_values_us.empty()) return default_t2_grid();
    std::vector<double> out;
    for (double t : t2_values_us) out.push_back(t * 1e-6);
    return out;
}

ThreeLevelParams RunConfig::three_level_params() const {
    ThreeLevelParams t;
    t.gamma_g = gamma_g_khz * 1e3;
    t.gamma_e = gamma_e_khz * 1e3;
    t.omega_p = omega_p_over_gamma * t.gamma();
    return t;
}

LepScan RunConfig::lep_scan() const { return {ratio_min, ratio_max, rel_tol}; }

std::vector<double> RunConfig::compare_grid() const {
    if (!compare_ratios.empty()) return compare_ratios;
    std::vector<double> grid;
    for (int k = 5; k <= 50; ++k) grid.push_back(0.01 * k);
    return grid;
}

void RunConfig::validate() const {
    if (shots < 0) invalid("shots", "must be >= 0");
    if (omega_khz < 0.0) invalid("omega_khz", "must be >= 0");
    if (gamma_khz < 0.0) invalid("gamma_khz", "must be >= 0");
    if (command == Command::Steady && !(gamma_khz > 0.0)) invalid("gamma_khz", "must be > 0 for steady");
    if (command == Command::Spectrum && omega_khz == 0.0 && gamma_khz == 0.0) {
        invalid("omega_khz", "and gamma_khz cannot both be 0");
    }
    if (n_cycles < 1) invalid("n_cycles", "must be >= 1");
    if (!(sample_dt_us > 0.0)) invalid("sample_dt_us", "must be > 0");
    for (double t : t2_values_us)
        if (!(t > 0.0)) invalid("t2_values_us", "entries must be > 0");
    for (double r : ratio_values)
        if (!(r > 0.0)) invalid("ratio_values", "entries must be > 0");
    for (double r : compare_ratios)
        if (!(r > 0.0)) invalid("compare_ratios", "entries must be > 0");
    if (command == Command::SweepRatio && ratio_values.empty()) {
        invalid("ratio_values", "must be non-empty for sweep-ratio");
    }
    if (!(gamma_g_khz > 0.0)) invalid("gamma_g_khz", "must be > 0");
    if (gamma_e_khz < 0.0) invalid("gamma_e_khz", "must be >= 0");
    if (!(omega_p_over_gamma > 0.0)) invalid("omega_p_over_gamma", "must be > 0");
    if (!(ratio_min > 0.0) || !(ratio_max > ratio_min)) {
        invalid("ratio_min", "must satisfy 0 < ratio_min < ratio_max");
    }
    if (!(rel_tol > 0.0)) invalid("rel_tol", "must be > 0");
    try {
        OttoCycleSpec spec = cycle_spec();
        spec.validate();
        if (spec.sample_dt > std::min({spec.t1, spec.t2, spec.t3, spec.t4})) {
            invalid("sample_dt_us", "must not exceed the shortest stroke");
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationError) throw;
        throw Error(ErrorCode::ValidationError, e.what());
    }
}

RunConfig parse_config(const std::string& input, const ConfigOverrides& overrides) {
    json j;
    try {
        j = json::parse(input);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "at byte 1: top level must be an object");

    if (overrides.command) {
        if (j.contains("command") && j["command"] != *overrides.command) {
            invalid("command", "is '" + j["command"].dump() + "' but '" + *overrides.command +
                                   "' was requested");
        }
        j["command"] = *overrides.command;
    }
    if (overrides.shots) j["shots"] = *overrides.shots;
    if (overrides.seed) j["seed"] = *overrides.seed;
    if (overrides.preset) j["preset"] = *overrides.preset;
    if (overrides.ramp) j["ramp"] = *overrides.ramp;

    if (!j.contains("command")) invalid("command", "is required");

    RunConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "command") c.command = wrap_validation(key, &parse_command, text(value, key));
        else if (key == "delta_khz") c.delta_khz = number(value, key);
        else if (key == "omega_khz") c.omega_khz = number(value, key);
        else if (key == "gamma_khz") c.gamma_khz = number(value, key);
        else if (key == "preset") c.preset = wrap_validation(key, &parse_regime, text(value, key));
        else if (key == "strokes") {
            if (!value.is_object()) invalid(key, "must be an object");
            for (const auto& [name, entry] : value.items()) {
                std::size_t i = 0;
                while (i < kStrokeNames.size() && name != kStrokeNames[i]) ++i;
                if (i == kStrokeNames.size()) invalid("strokes." + name, "is not a stroke name");
                c.strokes[i] = stroke_entry(entry, "strokes." + name);
            }
        }
        else if (key == "delta_min_khz") c.delta_min_khz = number(value, key);
        else if (key == "delta_max_khz") c.delta_max_khz = number(value, key);
        else if (key == "t1_us") c.t1_us = number(value, key);
        else if (key == "t2_us") c.t2_us = number(value, key);
        else if (key == "t3_us") c.t3_us = number(value, key);
        else if (key == "t4_us") c.t4_us = number(value, key);
        else if (key == "t2_values_us") c.t2_values_us = number_list(value, key);
        else if (key == "ratio_values") c.ratio_values = number_list(value, key);
        else if (key == "ramp") c.ramp = wrap_validation(key, &parse_ramp_mode, text(value, key));
        else if (key == "n_cycles") {
            if (!value.is_number_integer()) invalid(key, "must be an integer");
            c.n_cycles = value.get<int>();
        }
        else if (key == "sample_dt_us") c.sample_dt_us = number(value, key);
        else if (key == "wait") {
            if (!value.is_boolean()) invalid(key, "must be a boolean");
            c.wait = value.get<bool>();
        }
        else if (key == "shots") {
            if (!value.is_number_integer()) invalid(key, "must be an integer");
            if (value.is_number_unsigned()) {
                if (value.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
                    invalid(key, "is too large");
                }
            }
            c.shots = value.get<std::int64_t>();
        }
        else if (key == "seed") {
            if (!value.is_number_unsigned()) invalid(key, "must be a non-negative integer");
            c.seed = value.get<std::uint64_t>();
        }
        else if (key == "gamma_g_khz") c.gamma_g_khz = number(value, key);
        else if (key == "gamma_e_khz") c.gamma_e_khz = number(value, key);
        else if (key == "omega_p_over_gamma") c.omega_p_over_gamma = number(value, key);
        else if (key == "ratio_min") c.ratio_min = number(value, key);
        else if (key == "ratio_max") c.ratio_max = number(value, key);
        else if (key == "rel_tol") c.rel_tol = number(value, key);
        else if (key == "compare_ratios") c.compare_ratios = number_list(value, key);
        else invalid(key, "is not a recognised field");
    }
    c.validate();
    return c;
}

json to_json(const RunConfig& c) {
    json strokes = json::object();
    const OttoCycleSpec spec = qotto::preset(c.preset);
    for (std::size_t i = 0; i < kStrokeNames.size(); ++i) {
        StrokeKhz s = c.strokes[i].value_or(
            StrokeKhz{spec.strokes[i].omega / (kTwoPi * 1e3), spec.strokes[i].gamma_eff / 1e3});
        strokes[kStrokeNames[i]] = {{"omega_khz", s.omega_khz}, {"gamma_khz", s.gamma_khz}};
    }
    json j = {
        {"command", to_string(c.command)},
        {"delta_khz", c.delta_khz},
        {"omega_khz", c.omega_khz},
        {"gamma_khz", c.gamma_khz},
        {"preset", to_string(c.preset)},
        {"strokes", strokes},
        {"delta_min_khz", c.delta_min_khz},
        {"delta_max_khz", c.delta_max_khz},
        {"t1_us", c.t1_us},
        {"t2_us", c.t2_us},
        {"t3_us", c.t3_us},
        {"t4_us", c.t4_us},
        {"t2_values_us", c.t2_values_us},
        {"ratio_values", c.ratio_values},
        {"ramp", to_string(c.ramp)},
        {"n_cycles", c.n_cycles},
        {"sample_dt_us", c.sample_dt_us},
        {"wait", c.wait},
        {"shots", c.shots},
        {"seed", c.seed},
        {"gamma_g_khz", c.gamma_g_khz},
        {"gamma_e_khz", c.gamma_e_khz},
        {"omega_p_over_gamma", c.omega_p_over_gamma},
        {"ratio_min", c.ratio_min},
        {"ratio_max", c.ratio_max},
        {"rel_tol", c.rel_tol},
        {"compare_ratios", c.compare_ratios},
    };
    return j;
}

} // namespace qotto::app
