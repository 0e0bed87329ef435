// config.hpp
// Scenario configuration: a flat key = value file plus CLI overrides.
//
// Recognized keys:
//   scenario       projective_choice | fixed_povm | fixed_povm_lhv | advance_announced
//   state          singlet | maximally_mixed | product_00        (default singlet)
//   quartet        "optimal" or four angles in degrees, order A a B b
//                  (coplanar, x-z plane; default optimal)
//   mixing_weight  real strictly inside (0,1)                    (default 0.5)
//   trials         integer >= 0; 0 means analytic only           (default 0)
//   seed           unsigned 64-bit integer                       (default 0)
//
// '#' starts a comment; blank lines are ignored.

#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bellsim/errors.hpp"

namespace bellsim {

enum class Scenario { projective_choice, fixed_povm, fixed_povm_lhv, advance_announced };
enum class StateKind { singlet, maximally_mixed, product_00 };

inline std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::projective_choice: return "projective_choice";
        case Scenario::fixed_povm: return "fixed_povm";
        case Scenario::fixed_povm_lhv: return "fixed_povm_lhv";
        default: return "advance_announced";
    }
}

inline std::string to_string(StateKind s) {
    switch (s) {
        case StateKind::singlet: return "singlet";
        case StateKind::maximally_mixed: return "maximally_mixed";
        default: return "product_00";
    }
}

inline Scenario scenario_from_string(std::string_view v) {
    if (v == "projective_choice") return Scenario::projective_choice;
    if (v == "fixed_povm") return Scenario::fixed_povm;
    if (v == "fixed_povm_lhv") return Scenario::fixed_povm_lhv;
    if (v == "advance_announced") return Scenario::advance_announced;
    throw config_error("scenario: unknown value '" + std::string(v) +
                       "' (expected projective_choice, fixed_povm, fixed_povm_lhv or "
                       "advance_announced)");
}

inline StateKind state_from_string(std::string_view v) {
    if (v == "singlet") return StateKind::singlet;
    if (v == "maximally_mixed") return StateKind::maximally_mixed;
    if (v == "product_00") return StateKind::product_00;
    throw config_error("state: unknown value '" + std::string(v) +
                       "' (expected singlet, maximally_mixed or product_00)");
}

struct QuartetSpec {
    bool optimal = true;
    std::array<double, 4> angles_deg{};  // A, a, B, b; valid when !optimal
};

struct ScenarioConfig {
    std::optional<Scenario> scenario;  // must be set by file or flag
    StateKind state = StateKind::singlet;
    QuartetSpec quartet;
    double mixing_weight = 0.5;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view field, std::string_view v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(out))
        throw config_error(std::string(field) + ": '" + std::string(v) +
                           "' is not a finite number");
    return out;
}

inline std::uint64_t parse_u64(std::string_view field, std::string_view v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw config_error(std::string(field) + ": '" + std::string(v) +
                           "' is not a non-negative integer");
    return out;
}

inline std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : v) {
        if (c == ' ' || c == '\t' || c == ',') {
            if (!cur.empty()) parts.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

} // namespace detail

inline QuartetSpec quartet_from_string(std::string_view v) {
    QuartetSpec spec;
    if (detail::trim(v) == "optimal") {
        spec.optimal = true;
        return spec;
    }
    const auto parts = detail::split_list(v);
    if (parts.size() != 4)
        throw config_error("quartet: expected 'optimal' or four angles (A a B b), got '" +
                           std::string(v) + "'");
    spec.optimal = false;
    for (std::size_t i = 0; i < 4; ++i)
        spec.angles_deg[i] = detail::parse_double("quartet", parts[i]);
    return spec;
}

inline void apply_config_line(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "scenario")
        cfg.scenario = scenario_from_string(value);
    else if (key == "state")
        cfg.state = state_from_string(value);
    else if (key == "quartet")
        cfg.quartet = quartet_from_string(value);
    else if (key == "mixing_weight")
        cfg.mixing_weight = detail::parse_double("mixing_weight", value);
    else if (key == "trials")
        cfg.trials = detail::parse_u64("trials", value);
    else if (key == "seed")
        cfg.seed = detail::parse_u64("seed", value);
    else
        throw config_error("unknown key '" + std::string(key) + "'");
}

inline ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v(line);
        if (const auto hash = v.find('#'); hash != std::string_view::npos)
            v = v.substr(0, hash);
        v = detail::trim(v);
        if (v.empty()) continue;
        const auto eq = v.find('=');
        if (eq == std::string_view::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        const auto key = detail::trim(v.substr(0, eq));
        const auto value = detail::trim(v.substr(eq + 1));
        try {
            apply_config_line(cfg, key, value);
        } catch (const config_error& e) {
            throw config_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

inline ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

// Field-level validation shared by file and CLI paths.
inline void validate_config(const ScenarioConfig& cfg) {
    if (!cfg.scenario)
        throw config_error("scenario: missing (set it in the config file or pass --scenario)");
    if (!(cfg.mixing_weight > 0.0 && cfg.mixing_weight < 1.0))
        throw config_error("mixing_weight: must lie strictly inside (0,1), got " +
                           std::to_string(cfg.mixing_weight));
    if (!cfg.quartet.optimal)
        for (double a : cfg.quartet.angles_deg)
            if (!std::isfinite(a)) throw config_error("quartet: angles must be finite");
}

} // namespace bellsim
