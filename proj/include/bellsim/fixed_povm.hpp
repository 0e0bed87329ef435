// fixed_povm.hpp
// A single fixed four-outcome POVM per particle whose outcome labels carry
// a setting tag and a +/-1 result, the 16-outcome joint distribution it
// induces, and the CHSH value recovered from label-conditioned correlators.
//
// Canonical label order per station (used for every 4x4 table):
//   station 1: (A,+1) (A,-1) (a,+1) (a,-1)
//   station 2: (B,+1) (B,-1) (b,+1) (b,-1)

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/measurements.hpp"

namespace bellsim {

inline constexpr double kEffectPsdTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-12;
inline constexpr double kEntrySlack = 1e-12;
inline constexpr double kTableNormTol = 1e-10;

struct EffectLabel {
    SettingTag tag;
    int result;  // +1 or -1

    EffectLabel(SettingTag t, int r) : tag(t), result(r) {
        if (r != 1 && r != -1)
            throw std::invalid_argument("EffectLabel: result must be +1 or -1");
    }

    int station() const { return station_of(tag); }

    // Index in the canonical per-station order above.
    int station_index() const {
        const bool alternate = (tag == SettingTag::a || tag == SettingTag::b);
        return (alternate ? 2 : 0) + (result == 1 ? 0 : 1);
    }

    static EffectLabel from_station_index(int station, int index) {
        if (station != 1 && station != 2)
            throw std::invalid_argument("EffectLabel: station must be 1 or 2");
        if (index < 0 || index > 3)
            throw std::invalid_argument("EffectLabel: index must be in [0,3]");
        const bool alternate = index >= 2;
        SettingTag tag;
        if (station == 1)
            tag = alternate ? SettingTag::a : SettingTag::A;
        else
            tag = alternate ? SettingTag::b : SettingTag::B;
        return EffectLabel(tag, index % 2 == 0 ? 1 : -1);
    }

    bool operator==(const EffectLabel& o) const { return tag == o.tag && result == o.result; }
};

inline std::string to_string(const EffectLabel& l) {
    return to_string(l.tag) + (l.result == 1 ? "+" : "-");
}

// Four labeled positive effects summing to the identity.
class Povm {
public:
    Povm(int station, std::array<std::pair<EffectLabel, ComplexMatrix>, 4> effects)
        : station_(station), effects_(std::move(effects)) {
        if (station_ != 1 && station_ != 2)
            throw std::invalid_argument("Povm: station must be 1 or 2");
        std::array<bool, 4> seen{};
        ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
        for (const auto& [label, effect] : effects_) {
            if (label.station() != station_)
                throw std::invalid_argument("Povm: label " + to_string(label) +
                                            " does not belong to station " +
                                            std::to_string(station_));
            if (effect.rows() != 2 || effect.cols() != 2)
                throw std::invalid_argument("Povm: effects must be 2x2");
            if (!is_psd(effect, kEffectPsdTol))
                throw invariant_error("Povm: effect " + to_string(label) + " is not PSD");
            if (seen[label.station_index()])
                throw std::invalid_argument("Povm: duplicate label " + to_string(label));
            seen[label.station_index()] = true;
            sum += effect;
        }
        if ((sum - identity(2)).cwiseAbs().maxCoeff() > kCompletenessTol)
            throw invariant_error("Povm: effects do not sum to the identity within 1e-12");
    }

    int station() const { return station_; }

    const ComplexMatrix& effect(const EffectLabel& label) const {
        for (const auto& [l, e] : effects_)
            if (l == label) return e;
        throw std::invalid_argument("Povm: no effect labeled " + to_string(label));
    }

    // Effect for the canonical per-station index.
    const ComplexMatrix& effect_at(int index) const {
        return effect(EffectLabel::from_station_index(station_, index));
    }

private:
    int station_;
    std::array<std::pair<EffectLabel, ComplexMatrix>, 4> effects_;
};

// Statistical mixture of two projective measurements on one station:
// effects { w * P^primary_+-, (1-w) * P^alternate_+- } with matching labels.
inline Povm mixed_povm(const MeasurementSetting& s_primary,
                       const MeasurementSetting& s_alternate, double weight = 0.5) {
    if (s_primary.station() != s_alternate.station())
        throw std::invalid_argument("mixed_povm: settings belong to different stations");
    if (s_primary.label() == s_alternate.label())
        throw std::invalid_argument("mixed_povm: settings must carry distinct tags");
    if (!(weight > 0.0 && weight < 1.0))
        throw std::invalid_argument("mixed_povm: weight must lie strictly inside (0,1)");
    const auto [pp, pm] = projectors(s_primary);
    const auto [ap, am] = projectors(s_alternate);
    std::array<std::pair<EffectLabel, ComplexMatrix>, 4> effects = {{
        {EffectLabel(s_primary.label(), +1), (weight * pp).eval()},
        {EffectLabel(s_primary.label(), -1), (weight * pm).eval()},
        {EffectLabel(s_alternate.label(), +1), ((1.0 - weight) * ap).eval()},
        {EffectLabel(s_alternate.label(), -1), ((1.0 - weight) * am).eval()},
    }};
    return Povm(s_primary.station(), std::move(effects));
}

// 16-entry probability table over (station-1 label, station-2 label).
class JointDistribution {
public:
    explicit JointDistribution(std::array<double, 16> probs) : p_(probs) {
        double sum = 0.0;
        for (double& v : p_) {
            if (!std::isfinite(v))
                throw invariant_error("JointDistribution: non-finite entry");
            if (v < -kEntrySlack || v > 1.0 + kEntrySlack)
                throw invariant_error("JointDistribution: entry " + std::to_string(v) +
                                      " outside [0,1] beyond 1e-12");
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            sum += v;
        }
        if (std::abs(sum - 1.0) > kTableNormTol)
            throw invariant_error("JointDistribution: entries sum to " + std::to_string(sum));
    }

    double at(int i, int j) const { return p_[static_cast<std::size_t>(i) * 4 + j]; }

    double at(const EffectLabel& l1, const EffectLabel& l2) const {
        if (l1.station() != 1 || l2.station() != 2)
            throw std::invalid_argument("JointDistribution: labels must be (station 1, station 2)");
        return at(l1.station_index(), l2.station_index());
    }

    const std::array<double, 16>& table() const { return p_; }

    bool operator==(const JointDistribution& o) const { return p_ == o.p_; }

private:
    std::array<double, 16> p_;  // row-major, [station-1 index][station-2 index]
};

// probs[i][j] = tr(rho * (E_i x F_j)).
inline JointDistribution joint_distribution(const DensityOperator& rho, const Povm& p1,
                                            const Povm& p2) {
    if (p1.station() != 1 || p2.station() != 2)
        throw std::invalid_argument("joint_distribution: p1 must be station 1, p2 station 2");
    std::array<double, 16> probs{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            probs[static_cast<std::size_t>(i) * 4 + j] =
                born_probability(rho, kron(p1.effect_at(i), p2.effect_at(j)));
    return JointDistribution(probs);
}

// Correlator of the sub-ensemble whose labels carry (tag1, tag2).
// Conditioning on a zero-mass block is an error, never a silent zero.
inline Correlator conditional_correlator(const JointDistribution& d, SettingTag tag1,
                                         SettingTag tag2) {
    if (station_of(tag1) != 1 || station_of(tag2) != 2)
        throw std::invalid_argument("conditional_correlator: tags must be (station 1, station 2)");
    double num = 0.0;
    double den = 0.0;
    for (int r1 : {+1, -1}) {
        for (int r2 : {+1, -1}) {
            const double p = d.at(EffectLabel(tag1, r1), EffectLabel(tag2, r2));
            num += r1 * r2 * p;
            den += p;
        }
    }
    if (den <= 0.0)
        throw undefined_conditional_error("conditional_correlator: block (" + to_string(tag1) +
                                          "," + to_string(tag2) + ") has zero probability");
    return Correlator(num / den);
}

// Probability mass of one (tag1, tag2) block.
inline double block_mass(const JointDistribution& d, SettingTag tag1, SettingTag tag2) {
    double m = 0.0;
    for (int r1 : {+1, -1})
        for (int r2 : {+1, -1})
            m += d.at(EffectLabel(tag1, r1), EffectLabel(tag2, r2));
    return m;
}

// AB - Ab - aB - ab from the four label-conditioned correlators.
inline double chsh_from_fixed(const JointDistribution& d) {
    return conditional_correlator(d, SettingTag::A, SettingTag::B).value -
           conditional_correlator(d, SettingTag::A, SettingTag::b).value -
           conditional_correlator(d, SettingTag::a, SettingTag::B).value -
           conditional_correlator(d, SettingTag::a, SettingTag::b).value;
}

} // namespace bellsim
