// Instruction-set and advance-announcement local models, the PRNG, and
// sampling.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bellsim/lhv.hpp"
#include "bellsim/measurements.hpp"

using namespace bellsim;

namespace {

constexpr double kTsirelson = 2.8284271247461903;

JointDistribution singlet_table() {
    const auto q = optimal_quartet();
    return joint_distribution(singlet(), mixed_povm(q.A, q.a, 0.5), mixed_povm(q.B, q.b, 0.5));
}

std::array<double, 16> uniform_table() {
    std::array<double, 16> t{};
    t.fill(1.0 / 16.0);
    return t;
}

} // namespace

TEST_CASE("pcg32 reproduces its reference output stream") {
    // Frozen values from an independent implementation of the same
    // algorithm (64-bit LCG, XSH-RR output, seed mixed in two steps).
    Pcg32 g42(42);
    const std::uint32_t expected42[8] = {0x21b756eeu, 0xc15ef750u, 0x9548a9bdu, 0x35db428du,
                                         0xf0071649u, 0xa243807fu, 0xb4c5bdd2u, 0x103ca9d2u};
    for (std::uint32_t v : expected42) CHECK(g42.next_u32() == v);

    Pcg32 g0(0);
    const std::uint32_t expected0[4] = {0xe4c14788u, 0x379c6516u, 0x5c4ab3bbu, 0x601d23e0u};
    for (std::uint32_t v : expected0) CHECK(g0.next_u32() == v);

    // Distinct streams give distinct sequences.
    Pcg32 stream1(42, 1);
    const std::uint32_t expected_s1[4] = {0x4df1ccf9u, 0xe5838752u, 0x58ed9e10u, 0xf3e37b51u};
    for (std::uint32_t v : expected_s1) CHECK(stream1.next_u32() == v);

    Pcg32 gd(42);
    CHECK(gd.next_double() == 0.13170378998745114);
    CHECK(gd.next_double() == 0.58314000005144084);
    CHECK(gd.next_double() == 0.9376081399698375);
    CHECK(gd.next_double() == 0.70614229563237763);
}

TEST_CASE("uniform doubles stay in [0,1)") {
    Pcg32 g(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = g.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("instruction model copies the outcome table exactly") {
    const JointDistribution uniform{uniform_table()};
    CHECK(instruction_model_from(uniform).weights() == uniform.table());

    const JointDistribution d = singlet_table();
    const InstructionModel m = instruction_model_from(d);
    CHECK(m.weights() == d.table());
    CHECK(tv_distance(predicted_distribution(m), d) == 0.0);

    std::array<double, 16> delta{};
    delta[5] = 1.0;
    const JointDistribution d_delta{delta};
    CHECK(instruction_model_from(d_delta).weights() == delta);
}

TEST_CASE("instruction model validation") {
    std::array<double, 16> short_mass{};
    short_mass[0] = 0.9;
    CHECK_THROWS_AS(InstructionModel(short_mass), invariant_error);

    std::array<double, 16> negative = uniform_table();
    negative[0] = -0.01;
    negative[1] += 0.01 + 1.0 / 16.0;
    CHECK_THROWS_AS(InstructionModel(negative), invariant_error);
}

TEST_CASE("predicted distribution round trip is the identity") {
    const JointDistribution d = singlet_table();
    CHECK(predicted_distribution(instruction_model_from(d)) == d);
}

TEST_CASE("the instruction model carries the chsh violation") {
    const JointDistribution predicted =
        predicted_distribution(instruction_model_from(singlet_table()));
    CHECK(std::abs(std::abs(chsh_from_fixed(predicted)) - kTsirelson) <= 1e-9);
}

TEST_CASE("sampling a deterministic model yields one record repeated") {
    std::array<double, 16> delta{};
    delta[9] = 1.0;  // row 2 = (a,+1), col 1 = (B,-1)
    const InstructionModel m{delta};
    const auto records = sample_instructions(m, 100, 5);
    REQUIRE(records.size() == 100);
    for (const auto& r : records) {
        CHECK(r.out1 == EffectLabel(SettingTag::a, +1));
        CHECK(r.out2 == EffectLabel(SettingTag::B, -1));
        CHECK(r.hidden_seed_id == 9);
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    const InstructionModel m = instruction_model_from(singlet_table());
    const auto r1 = sample_instructions(m, 5000, 7);
    const auto r2 = sample_instructions(m, 5000, 7);
    CHECK(r1 == r2);
    const auto r3 = sample_instructions(m, 5000, 8);
    CHECK(r1 != r3);
    CHECK_THROWS_AS(sample_instructions(m, 0, 7), std::invalid_argument);
}

TEST_CASE("trial indices are contiguous from zero") {
    const InstructionModel m{uniform_table()};
    const auto records = sample_instructions(m, 1000, 3);
    for (std::size_t i = 0; i < records.size(); ++i)
        CHECK(records[i].trial_index == i);
}

TEST_CASE("uniform model frequencies pass a 5-sigma gate at n = 1e6") {
    const InstructionModel m{uniform_table()};
    const auto records = sample_instructions(m, 1000000, 11);
    const JointDistribution emp = empirical_distribution(records);
    const double p = 1.0 / 16.0;
    const double gate = 5.0 * std::sqrt(p * (1.0 - p) / 1e6);
    for (double f : emp.table()) CHECK(std::abs(f - p) <= gate);
}

TEST_CASE("outcomes depend only on the local instruction") {
    const InstructionModel m = instruction_model_from(singlet_table());
    const auto records = sample_instructions(m, 2000, 13);
    for (const auto& r : records) {
        CHECK(r.out1 == station1_readout(station1_instruction(r.hidden_seed_id)));
        CHECK(r.out2 == station2_readout(station2_instruction(r.hidden_seed_id)));
    }
    // Station 1's readout is constant across every hidden cell sharing its
    // instruction; likewise for station 2.
    for (std::uint32_t cell = 0; cell < 16; ++cell) {
        for (std::uint32_t other = 0; other < 4; ++other) {
            const std::uint32_t same_row = (cell / 4) * 4 + other;
            CHECK(station1_readout(station1_instruction(cell)) ==
                  station1_readout(station1_instruction(same_row)));
            const std::uint32_t same_col = other * 4 + (cell % 4);
            CHECK(station2_readout(station2_instruction(cell)) ==
                  station2_readout(station2_instruction(same_col)));
        }
    }
}

TEST_CASE("empirical distribution basics") {
    const TrialRecord rec{0, EffectLabel(SettingTag::A, +1), EffectLabel(SettingTag::b, -1), 3};
    const std::vector<TrialRecord> one{rec};
    const JointDistribution d = empirical_distribution(one);
    CHECK(d.at(EffectLabel(SettingTag::A, +1), EffectLabel(SettingTag::b, -1)) == 1.0);

    const std::vector<TrialRecord> empty;
    CHECK_THROWS_AS(empirical_distribution(empty), std::invalid_argument);
}

TEST_CASE("concatenated runs average by trial count") {
    const InstructionModel m = instruction_model_from(singlet_table());
    const auto ra = sample_instructions(m, 300, 21);
    const auto rb = sample_instructions(m, 700, 22);
    std::vector<TrialRecord> both = ra;
    both.insert(both.end(), rb.begin(), rb.end());

    const auto da = empirical_distribution(ra).table();
    const auto db = empirical_distribution(rb).table();
    const auto dc = empirical_distribution(both).table();
    for (int k = 0; k < 16; ++k)
        CHECK(std::abs(dc[k] - (0.3 * da[k] + 0.7 * db[k])) <= 1e-15);
}

TEST_CASE("empirical tv distance at n = 1e6 is below 0.005") {
    const JointDistribution d = singlet_table();
    const InstructionModel m = instruction_model_from(d);
    const auto records = sample_instructions(m, 1000000, 2);
    CHECK(tv_distance(empirical_distribution(records), d) < 0.005);
}

TEST_CASE("empirical tv distance shrinks from n = 1e4 to n = 1e6") {
    const JointDistribution d = singlet_table();
    const InstructionModel m = instruction_model_from(d);
    std::vector<double> tv_small, tv_large;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        tv_small.push_back(tv_distance(empirical_distribution(sample_instructions(m, 10000, seed)), d));
        tv_large.push_back(
            tv_distance(empirical_distribution(sample_instructions(m, 1000000, seed)), d));
    }
    const auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return (v[9] + v[10]) / 2.0;
    };
    CHECK(median(tv_small) > median(tv_large));
}

TEST_CASE("tv distance") {
    const JointDistribution uniform{uniform_table()};
    CHECK(tv_distance(uniform, uniform) == 0.0);

    std::array<double, 16> delta{};
    delta[0] = 1.0;
    const JointDistribution d_delta{delta};
    CHECK(tv_distance(d_delta, uniform) == 0.9375);  // 1 - 1/16

    Pcg32 rng(401);
    for (int t = 0; t < 20; ++t) {
        std::array<double, 16> p{}, q{};
        double sp = 0.0, sq = 0.0;
        for (int k = 0; k < 16; ++k) {
            p[k] = rng.next_double();
            q[k] = rng.next_double();
            sp += p[k];
            sq += q[k];
        }
        for (int k = 0; k < 16; ++k) {
            p[k] /= sp;
            q[k] /= sq;
        }
        const JointDistribution dp{p}, dq{q};
        CHECK(tv_distance(dp, dq) == tv_distance(dq, dp));
        CHECK(tv_distance(dp, dq) >= 0.0);
        CHECK(tv_distance(dp, dq) <= 1.0);
    }
}

TEST_CASE("advance model matches the singlet joint law") {
    const DensityOperator rho = singlet();
    const auto q = optimal_quartet();
    const AdvanceModel m = advance_model_from(rho, q);

    const SettingTag t1[2] = {SettingTag::A, SettingTag::a};
    const SettingTag t2[2] = {SettingTag::B, SettingTag::b};
    const MeasurementSetting* s1[2] = {&q.A, &q.a};
    const MeasurementSetting* s2[2] = {&q.B, &q.b};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double e = correlator(rho, *s1[i], *s2[j]).value;
            const auto& table = m.table(t1[i], t2[j]);
            const int r1_of[4] = {+1, +1, -1, -1};
            const int r2_of[4] = {+1, -1, +1, -1};
            for (int k = 0; k < 4; ++k)
                CHECK(std::abs(table[k] - (1.0 + r1_of[k] * r2_of[k] * e) / 4.0) <= 1e-12);
            CHECK(std::abs(m.correlator_of(t1[i], t2[j]) - e) <= 1e-12);
        }
    CHECK(std::abs(std::abs(m.chsh()) - kTsirelson) <= 1e-9);
}

TEST_CASE("advance model on aligned settings is perfectly anticorrelated") {
    const AdvanceModel m = advance_model_from(singlet(), quartet_from_angles_deg(0, 0, 0, 0));
    const auto& t = m.table(SettingTag::A, SettingTag::B);
    CHECK(std::abs(t[0] - 0.0) <= 1e-12);
    CHECK(std::abs(t[1] - 0.5) <= 1e-12);
    CHECK(std::abs(t[2] - 0.5) <= 1e-12);
    CHECK(std::abs(t[3] - 0.0) <= 1e-12);
}

TEST_CASE("advance model reproduces projective correlators on random states") {
    Pcg32 rng(402);
    for (int t = 0; t < 20; ++t) {
        const DensityOperator rho = random_density(rng);
        const SettingsQuartet q(MeasurementSetting(SettingTag::A, random_unit_vector(rng)),
                                MeasurementSetting(SettingTag::a, random_unit_vector(rng)),
                                MeasurementSetting(SettingTag::B, random_unit_vector(rng)),
                                MeasurementSetting(SettingTag::b, random_unit_vector(rng)));
        const AdvanceModel m = advance_model_from(rho, q);
        CHECK(std::abs(m.correlator_of(SettingTag::A, SettingTag::B) -
                       correlator(rho, q.A, q.B).value) <= 1e-12);
        CHECK(std::abs(m.correlator_of(SettingTag::a, SettingTag::b) -
                       correlator(rho, q.a, q.b).value) <= 1e-12);
    }
}

TEST_CASE("advance model tables must be normalized") {
    std::array<std::array<AdvanceModel::Table, 2>, 2> tables{};
    for (auto& row : tables)
        for (auto& t : row) t = {0.25, 0.25, 0.25, 0.25};
    CHECK_NOTHROW(AdvanceModel(tables));
    tables[0][0] = {0.5, 0.25, 0.25, 0.25};
    CHECK_THROWS_AS(AdvanceModel(tables), invariant_error);
}
