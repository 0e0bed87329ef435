// lhv.hpp
// Two constructive local models.
//
// Instruction-set model: the source hands each particle a predetermined
// outcome for its fixed four-outcome measurement; pairs of instructions are
// drawn from a 16-entry table.  When that table is the quantum one, the
// model's predictions match the quantum ones entry for entry.
//
// Advance-announcement model: when the pair of settings is known before the
// particles are produced, the hidden variable may carry a jointly sampled
// outcome pair for exactly those settings; each station then outputs its
// half locally.  This formalizes why pre-announced settings void the
// derivation of the CHSH bound; it makes no claim of per-trial-choice
// locality.
//
// Sampling draws a hidden cell index by cumulative-sum inversion over the
// 16 cells (cells are scanned in canonical label order); the generator is
// Pcg32.  Identical (model, n, seed) input yields bit-identical records.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bellsim/fixed_povm.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

struct TrialRecord {
    std::uint64_t trial_index;
    EffectLabel out1;
    EffectLabel out2;
    std::uint32_t hidden_seed_id;  // the hidden cell index drawn at the source

    bool operator==(const TrialRecord&) const = default;
};

// The instruction carried by each particle is its own outcome; a hidden
// cell in [0,16) splits into one instruction per station.
inline int station1_instruction(std::uint32_t cell) { return static_cast<int>(cell / 4); }
inline int station2_instruction(std::uint32_t cell) { return static_cast<int>(cell % 4); }

// Readout at measurement time is a function of the local instruction only.
inline EffectLabel station1_readout(int instruction) {
    return EffectLabel::from_station_index(1, instruction);
}
inline EffectLabel station2_readout(int instruction) {
    return EffectLabel::from_station_index(2, instruction);
}

// Distribution over the 16 instruction pairs.
class InstructionModel {
public:
    explicit InstructionModel(std::array<double, 16> weights) : w_(weights) {
        double sum = 0.0;
        for (double v : w_) {
            if (!(v >= 0.0))
                throw invariant_error("InstructionModel: negative weight");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kTableNormTol)
            throw invariant_error("InstructionModel: weights sum to " + std::to_string(sum));
    }

    const std::array<double, 16>& weights() const { return w_; }

private:
    std::array<double, 16> w_;
};

// Weights copied entrywise from the outcome table, so the model's predicted
// joint distribution is the input distribution by construction.
inline InstructionModel instruction_model_from(const JointDistribution& d) {
    return InstructionModel(d.table());
}

inline JointDistribution predicted_distribution(const InstructionModel& m) {
    return JointDistribution(m.weights());
}

inline std::vector<TrialRecord> sample_instructions(const InstructionModel& m, std::uint64_t n,
                                                    std::uint64_t seed, std::uint64_t stream = 0) {
    if (n < 1)
        throw std::invalid_argument("sample_instructions: need at least one trial");
    const auto& w = m.weights();
    std::array<double, 16> cum{};
    double acc = 0.0;
    for (int k = 0; k < 16; ++k) {
        acc += w[k];
        cum[k] = acc;
    }
    int last_positive = -1;
    for (int k = 15; k >= 0; --k) {
        if (w[k] > 0.0) {
            last_positive = k;
            break;
        }
    }

    Pcg32 rng(seed, stream);
    std::vector<TrialRecord> records;
    records.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double u = rng.next_double();
        int cell = last_positive;
        for (int k = 0; k < 16; ++k) {
            if (u < cum[k]) {  // zero-weight cells collapse the interval and are never hit
                cell = k;
                break;
            }
        }
        const auto hidden = static_cast<std::uint32_t>(cell);
        records.push_back(TrialRecord{i, station1_readout(station1_instruction(hidden)),
                                      station2_readout(station2_instruction(hidden)), hidden});
    }
    return records;
}

inline JointDistribution empirical_distribution(std::span<const TrialRecord> records) {
    if (records.empty())
        throw std::invalid_argument("empirical_distribution: no records");
    std::array<double, 16> counts{};
    for (const auto& r : records)
        counts[static_cast<std::size_t>(r.out1.station_index()) * 4 + r.out2.station_index()] +=
            1.0;
    for (double& c : counts) c /= static_cast<double>(records.size());
    return JointDistribution(counts);
}

// Half the L1 distance between two 16-entry tables; 0 means exact agreement.
inline double tv_distance(const JointDistribution& p, const JointDistribution& q) {
    double s = 0.0;
    for (int k = 0; k < 16; ++k) s += std::abs(p.table()[k] - q.table()[k]);
    return s / 2.0;
}

// One normalized table over (+/-1, +/-1) outcome pairs per announced
// setting pair.  Outcome-pair order: (+,+), (+,-), (-,+), (-,-).
class AdvanceModel {
public:
    using Table = std::array<double, 4>;

    AdvanceModel(std::array<std::array<Table, 2>, 2> tables) : tables_(tables) {
        for (const auto& row : tables_) {
            for (const auto& t : row) {
                double sum = 0.0;
                for (double v : t) {
                    if (!(v >= 0.0))
                        throw invariant_error("AdvanceModel: negative table entry");
                    sum += v;
                }
                if (std::abs(sum - 1.0) > 1e-12)
                    throw invariant_error("AdvanceModel: table sums to " + std::to_string(sum));
            }
        }
    }

    // tag1 in {A,a}, tag2 in {B,b}.
    const Table& table(SettingTag tag1, SettingTag tag2) const {
        if (station_of(tag1) != 1 || station_of(tag2) != 2)
            throw std::invalid_argument("AdvanceModel: tags must be (station 1, station 2)");
        return tables_[tag1 == SettingTag::a ? 1 : 0][tag2 == SettingTag::b ? 1 : 0];
    }

    double correlator_of(SettingTag tag1, SettingTag tag2) const {
        const Table& t = table(tag1, tag2);
        return t[0] - t[1] - t[2] + t[3];
    }

    double chsh() const {
        return correlator_of(SettingTag::A, SettingTag::B) -
               correlator_of(SettingTag::A, SettingTag::b) -
               correlator_of(SettingTag::a, SettingTag::B) -
               correlator_of(SettingTag::a, SettingTag::b);
    }

private:
    std::array<std::array<Table, 2>, 2> tables_;  // [A=0,a=1][B=0,b=1]
};

// For each announced setting pair, the table is the quantum joint outcome
// law for projective measurements at those settings.
inline AdvanceModel advance_model_from(const DensityOperator& rho, const SettingsQuartet& q) {
    const MeasurementSetting* s1[2] = {&q.A, &q.a};
    const MeasurementSetting* s2[2] = {&q.B, &q.b};
    std::array<std::array<AdvanceModel::Table, 2>, 2> tables;
    for (int i = 0; i < 2; ++i) {
        const auto [p1_plus, p1_minus] = projectors(*s1[i]);
        for (int j = 0; j < 2; ++j) {
            const auto [p2_plus, p2_minus] = projectors(*s2[j]);
            tables[i][j] = {born_probability(rho, kron(p1_plus, p2_plus)),
                            born_probability(rho, kron(p1_plus, p2_minus)),
                            born_probability(rho, kron(p1_minus, p2_plus)),
                            born_probability(rho, kron(p1_minus, p2_minus))};
        }
    }
    return AdvanceModel(tables);
}

} // namespace bellsim
