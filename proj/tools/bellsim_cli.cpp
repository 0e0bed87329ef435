// bellsim_cli.cpp
// Command-line front end.
//
//   bellsim run --config <path> [--scenario S] [--trials N] [--seed K]
//               [--format json|csv-summary] [--out <path>]
//   bellsim list-scenarios
//   bellsim self-test
//
// Exit codes: 0 success, 2 config error, 3 model violation (an event the
// model assigns probability zero), 4 numerical-invariant failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bellsim/bellsim.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::optional<std::string>& scenario_override,
            const std::optional<std::uint64_t>& trials_override,
            const std::optional<std::uint64_t>& seed_override, const std::string& format,
            const std::string& out_path) {
    bellsim::ScenarioConfig cfg = bellsim::parse_config_file(config_path);
    if (scenario_override) cfg.scenario = bellsim::scenario_from_string(*scenario_override);
    if (trials_override) cfg.trials = *trials_override;
    if (seed_override) cfg.seed = *seed_override;
    bellsim::validate_config(cfg);

    const bellsim::RunReport report = bellsim::run_scenario(cfg);
    const std::string bytes =
        bellsim::emit_report(report, bellsim::report_format_from_string(format));

    if (out_path.empty()) {
        std::cout << bytes;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw bellsim::config_error("cannot open output file '" + out_path + "'");
        out << bytes;
    }
    return 0;
}

int cmd_list_scenarios() {
    std::cout << "projective_choice   per-trial choice between two projective settings per "
                 "station\n"
              << "fixed_povm          one fixed four-outcome POVM per particle, no choices\n"
              << "fixed_povm_lhv      instruction-set local model for the fixed-POVM run\n"
              << "advance_announced   settings announced before particle production, "
                 "source-coordinated local model\n";
    return 0;
}

// Fast subset of the library's numerical invariants.
int cmd_self_test() {
    using namespace bellsim;
    int failures = 0;
    const auto check = [&failures](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    const auto enumeration = enumerate_deterministic_strategies();
    check("deterministic bound equals 2", enumeration.bound == 2.0);

    const DensityOperator psi = singlet();
    bool anticorr = true;
    for (double deg : {0.0, 30.0, 45.0, 60.0, 90.0}) {
        const auto s1 = setting_from_angle_deg(SettingTag::A, 0.0);
        const auto s2 = setting_from_angle_deg(SettingTag::B, deg);
        const double expect = -std::cos(deg * std::numbers::pi / 180.0);
        anticorr = anticorr && std::abs(correlator(psi, s1, s2).value - expect) <= 1e-12;
    }
    check("singlet correlator matches -cos(theta)", anticorr);

    const double chsh_opt = chsh_value(psi, optimal_quartet());
    check("optimal quartet reaches 2*sqrt(2)",
          std::abs(std::abs(chsh_opt) - 2.0 * std::sqrt(2.0)) <= 1e-9);

    bool povm_ok = true;
    for (double w : {0.5, 0.3}) {
        const auto q = optimal_quartet();
        const auto p1 = mixed_povm(q.A, q.a, w);
        const auto p2 = mixed_povm(q.B, q.b, w);
        const auto d = joint_distribution(psi, p1, p2);
        povm_ok = povm_ok && std::abs(block_mass(d, SettingTag::A, SettingTag::B) - w * w) <= 1e-12;
        povm_ok = povm_ok &&
                  std::abs(block_mass(d, SettingTag::a, SettingTag::b) - (1 - w) * (1 - w)) <= 1e-12;
    }
    check("tag-block masses are the weight products", povm_ok);

    bool equiv = true;
    Pcg32 rng(2024);
    for (int i = 0; i < 20 && equiv; ++i) {
        const DensityOperator rho = random_density(rng);
        const SettingsQuartet q(MeasurementSetting(SettingTag::A, random_unit_vector(rng)),
                                MeasurementSetting(SettingTag::a, random_unit_vector(rng)),
                                MeasurementSetting(SettingTag::B, random_unit_vector(rng)),
                                MeasurementSetting(SettingTag::b, random_unit_vector(rng)));
        const auto d = joint_distribution(rho, mixed_povm(q.A, q.a), mixed_povm(q.B, q.b));
        equiv = std::abs(conditional_correlator(d, SettingTag::A, SettingTag::B).value -
                         correlator(rho, q.A, q.B).value) <= 1e-12 &&
                std::abs(chsh_from_fixed(d) - chsh_value(rho, q)) <= 1e-10;
    }
    check("label-conditioned correlators equal projective ones", equiv);

    {
        const auto q = optimal_quartet();
        const auto d = joint_distribution(psi, mixed_povm(q.A, q.a), mixed_povm(q.B, q.b));
        const auto model = instruction_model_from(d);
        const auto predicted = predicted_distribution(model);
        check("instruction model reproduces the quantum table exactly",
              tv_distance(predicted, d) == 0.0 &&
                  std::abs(std::abs(chsh_from_fixed(predicted)) - 2.0 * std::sqrt(2.0)) <= 1e-9);

        const auto advance = advance_model_from(psi, q);
        check("advance model reproduces the quantum correlators",
              std::abs(advance.correlator_of(SettingTag::A, SettingTag::B) -
                       correlator(psi, q.A, q.B).value) <= 1e-12 &&
                  std::abs(std::abs(advance.chsh()) - 2.0 * std::sqrt(2.0)) <= 1e-9);

        Pcg32 g(42);
        const bool frozen = g.next_u32() == 0x21b756eeu && g.next_u32() == 0xc15ef750u &&
                            g.next_u32() == 0x9548a9bdu && g.next_u32() == 0x35db428du;
        check("pcg32 matches its reference output", frozen);

        const auto r1 = sample_instructions(model, 1000, 7);
        const auto r2 = sample_instructions(model, 1000, 7);
        check("sampling is deterministic for a fixed seed", r1 == r2);
    }

    {
        ScenarioConfig cfg;
        cfg.scenario = Scenario::fixed_povm_lhv;
        cfg.trials = 2000;
        cfg.seed = 11;
        const auto first = emit_report(run_scenario(cfg), ReportFormat::json);
        const auto second = emit_report(run_scenario(cfg), ReportFormat::json);
        check("reports are byte-identical for identical config and seed", first == second);
    }

    if (failures == 0) {
        std::cout << "self-test passed\n";
        return 0;
    }
    std::cout << failures << " self-test check(s) failed\n";
    return 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CHSH experiments with and without per-trial setting choices: fixed-POVM runs "
                 "and the local models that reproduce them"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Evaluate a scenario and emit a report");
    std::string config_path;
    std::optional<std::string> scenario_override;
    std::optional<std::uint64_t> trials_override;
    std::optional<std::uint64_t> seed_override;
    std::string format = "json";
    std::string out_path;
    run->add_option("--config", config_path, "Path to a key = value config file")->required();
    run->add_option("--scenario", scenario_override,
                    "Override the scenario (projective_choice, fixed_povm, fixed_povm_lhv, "
                    "advance_announced)");
    run->add_option("--trials", trials_override, "Override the number of sampled trials");
    run->add_option("--seed", seed_override, "Override the PRNG seed");
    run->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv-summary"}));
    run->add_option("--out", out_path, "Write the report to this file instead of stdout");

    auto* list = app.add_subcommand("list-scenarios", "List the available scenarios");
    auto* self_test = app.add_subcommand("self-test", "Run the fast invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return cmd_run(config_path, scenario_override, trials_override, seed_override, format,
                           out_path);
        if (list->parsed()) return cmd_list_scenarios();
        if (self_test->parsed()) return cmd_self_test();
    } catch (const bellsim::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bellsim::model_violation_error& e) {
        std::cerr << "model violation: " << e.what() << "\n";
        return 3;
    } catch (const bellsim::invariant_error& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
