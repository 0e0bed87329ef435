// report.hpp
// Machine-readable run reports.
//
// JSON is the full report; the CSV summary is a single row of headline
// numbers.  Serialization is deterministic: fixed key order, fixed double
// formatting ("%.17g", enough digits to reproduce every bit), no
// timestamps.  Identical reports serialize to identical bytes.

#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "bellsim/config.hpp"
#include "bellsim/fixed_povm.hpp"

namespace bellsim {

enum class ReportFormat { json, csv_summary };

inline ReportFormat report_format_from_string(std::string_view v) {
    if (v == "json") return ReportFormat::json;
    if (v == "csv-summary") return ReportFormat::csv_summary;
    throw config_error("format: unknown value '" + std::string(v) +
                       "' (expected json or csv-summary)");
}

struct CorrelatorSet {
    double AB, Ab, aB, ab;
};

struct AnalyticResults {
    CorrelatorSet correlators{};
    double chsh_value = 0.0;
    double local_bound = 2.0;
    bool violates_local_bound = false;
    // 16-entry joint table in canonical label order, where the scenario has one.
    std::optional<std::array<double, 16>> joint_probabilities;
    // Advance model: one table per announced pair, order AB, Ab, aB, ab;
    // within a table (+,+), (+,-), (-,+), (-,-).
    std::optional<std::array<double, 16>> per_setting_tables;
    std::optional<double> tv_model_vs_quantum;
    std::optional<bool> local_model_reproduces_quantum;
};

struct MonteCarloResults {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string generator;
    std::array<double, 16> empirical_probabilities{};
    double tv_empirical_vs_analytic = 0.0;
    double chi_square = 0.0;
    int chi_square_dof = 15;
    double empirical_chsh = 0.0;
    double empirical_chsh_std_error = 0.0;
};

struct RunReport {
    ScenarioConfig config;
    std::array<double, 4> resolved_quartet_deg{};  // A, a, B, b actually used
    AnalyticResults analytic;
    std::optional<MonteCarloResults> monte_carlo;
    bool is_locality_test = false;
    std::string verdict;
};

namespace detail {

inline std::string fmt_double(double v) {
    if (v == 0.0) return "0";  // avoids a platform-dependent "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Minimal appender for the fixed report schema.
class JsonWriter {
public:
    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(const std::string& k) {
        comma();
        out_ += '"';
        out_ += json_escape(k);
        out_ += "\":";
        pending_value_ = true;
    }

    void value_string(const std::string& v) { raw('"' + json_escape(v) + '"'); }
    void value_double(double v) { raw(fmt_double(v)); }
    void value_u64(std::uint64_t v) { raw(std::to_string(v)); }
    void value_int(int v) { raw(std::to_string(v)); }
    void value_bool(bool v) { raw(v ? "true" : "false"); }

    const std::string& str() const { return out_; }

private:
    void open(char c) {
        comma();
        out_ += c;
        first_ = true;
        pending_value_ = false;
    }
    void close(char c) {
        out_ += c;
        first_ = false;
    }
    void comma() {
        if (pending_value_) return;
        if (!first_) out_ += ',';
        first_ = false;
    }
    void raw(const std::string& s) {
        comma();
        out_ += s;
        first_ = false;
        pending_value_ = false;
    }

    std::string out_;
    bool first_ = true;
    bool pending_value_ = false;
};

inline void write_table(JsonWriter& w, const std::array<double, 16>& t) {
    w.begin_array();
    for (double v : t) w.value_double(v);
    w.end_array();
}

// RFC-4180 quoting: wrap in quotes when the field contains a comma, quote
// or line break; double any embedded quotes.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

inline std::string emit_report_json(const RunReport& r) {
    using detail::JsonWriter;
    JsonWriter w;
    w.begin_object();

    w.key("config");
    w.begin_object();
    w.key("scenario");
    w.value_string(to_string(*r.config.scenario));
    w.key("state");
    w.value_string(to_string(r.config.state));
    w.key("quartet");
    if (r.config.quartet.optimal) {
        w.value_string("optimal");
    } else {
        w.begin_array();
        for (double a : r.config.quartet.angles_deg) w.value_double(a);
        w.end_array();
    }
    w.key("mixing_weight");
    w.value_double(r.config.mixing_weight);
    w.key("trials");
    w.value_u64(r.config.trials);
    w.key("seed");
    w.value_u64(r.config.seed);
    w.end_object();

    w.key("resolved_quartet_deg");
    w.begin_object();
    w.key("A");
    w.value_double(r.resolved_quartet_deg[0]);
    w.key("a");
    w.value_double(r.resolved_quartet_deg[1]);
    w.key("B");
    w.value_double(r.resolved_quartet_deg[2]);
    w.key("b");
    w.value_double(r.resolved_quartet_deg[3]);
    w.end_object();

    w.key("analytic");
    w.begin_object();
    w.key("correlators");
    w.begin_object();
    w.key("AB");
    w.value_double(r.analytic.correlators.AB);
    w.key("Ab");
    w.value_double(r.analytic.correlators.Ab);
    w.key("aB");
    w.value_double(r.analytic.correlators.aB);
    w.key("ab");
    w.value_double(r.analytic.correlators.ab);
    w.end_object();
    w.key("chsh_value");
    w.value_double(r.analytic.chsh_value);
    w.key("local_bound");
    w.value_double(r.analytic.local_bound);
    w.key("violates_local_bound");
    w.value_bool(r.analytic.violates_local_bound);
    if (r.analytic.joint_probabilities) {
        w.key("joint_probabilities");
        detail::write_table(w, *r.analytic.joint_probabilities);
        w.key("station1_labels");
        w.begin_array();
        for (int i = 0; i < 4; ++i) w.value_string(to_string(EffectLabel::from_station_index(1, i)));
        w.end_array();
        w.key("station2_labels");
        w.begin_array();
        for (int j = 0; j < 4; ++j) w.value_string(to_string(EffectLabel::from_station_index(2, j)));
        w.end_array();
    }
    if (r.analytic.per_setting_tables) {
        w.key("per_setting_tables");
        w.begin_object();
        const char* names[4] = {"AB", "Ab", "aB", "ab"};
        for (int k = 0; k < 4; ++k) {
            w.key(names[k]);
            w.begin_array();
            for (int m = 0; m < 4; ++m)
                w.value_double((*r.analytic.per_setting_tables)[static_cast<std::size_t>(k) * 4 + m]);
            w.end_array();
        }
        w.end_object();
        w.key("outcome_pair_order");
        w.begin_array();
        for (const char* p : {"++", "+-", "-+", "--"}) w.value_string(p);
        w.end_array();
    }
    if (r.analytic.tv_model_vs_quantum) {
        w.key("tv_model_vs_quantum");
        w.value_double(*r.analytic.tv_model_vs_quantum);
    }
    if (r.analytic.local_model_reproduces_quantum) {
        w.key("local_model_reproduces_quantum");
        w.value_bool(*r.analytic.local_model_reproduces_quantum);
    }
    w.end_object();

    if (r.monte_carlo) {
        const auto& mc = *r.monte_carlo;
        w.key("monte_carlo");
        w.begin_object();
        w.key("generator");
        w.value_string(mc.generator);
        w.key("trials");
        w.value_u64(mc.trials);
        w.key("seed");
        w.value_u64(mc.seed);
        w.key("empirical_probabilities");
        detail::write_table(w, mc.empirical_probabilities);
        w.key("tv_empirical_vs_analytic");
        w.value_double(mc.tv_empirical_vs_analytic);
        w.key("chi_square");
        w.value_double(mc.chi_square);
        w.key("chi_square_dof");
        w.value_int(mc.chi_square_dof);
        w.key("empirical_chsh");
        w.value_double(mc.empirical_chsh);
        w.key("empirical_chsh_std_error");
        w.value_double(mc.empirical_chsh_std_error);
        w.end_object();
    }

    w.key("is_locality_test");
    w.value_bool(r.is_locality_test);
    w.key("verdict");
    w.value_string(r.verdict);
    w.end_object();

    return w.str() + "\n";
}

inline constexpr const char* kCsvHeader =
    "scenario,chsh_value,violates_eq1,tv_distance,chi_square,trials,seed";

// Headline row.  tv_distance is the empirical-vs-analytic distance for
// sampled runs, else the model-vs-quantum distance when the scenario
// defines one, else empty.  chi_square is empty for analytic-only runs.
inline std::string emit_report_csv(const RunReport& r) {
    std::string tv;
    if (r.monte_carlo)
        tv = detail::fmt_double(r.monte_carlo->tv_empirical_vs_analytic);
    else if (r.analytic.tv_model_vs_quantum)
        tv = detail::fmt_double(*r.analytic.tv_model_vs_quantum);
    const std::string chi = r.monte_carlo ? detail::fmt_double(r.monte_carlo->chi_square) : "";

    std::string row;
    row += detail::csv_field(to_string(*r.config.scenario));
    row += ',';
    row += detail::fmt_double(r.analytic.chsh_value);
    row += ',';
    row += r.analytic.violates_local_bound ? "true" : "false";
    row += ',';
    row += tv;
    row += ',';
    row += chi;
    row += ',';
    row += std::to_string(r.config.trials);
    row += ',';
    row += std::to_string(r.config.seed);
    return std::string(kCsvHeader) + "\n" + row + "\n";
}

inline std::string emit_report(const RunReport& r, ReportFormat format) {
    return format == ReportFormat::json ? emit_report_json(r) : emit_report_csv(r);
}

} // namespace bellsim
