// stats.hpp
// Goodness-of-fit and statistical-error helpers for sampled runs.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>

#include "bellsim/lhv.hpp"

namespace bellsim {

// Pearson statistic sum (obs - n p)^2 / (n p) over cells with p > 0.
// A count observed in a zero-probability cell is a model violation, not
// sampling noise.
inline double chi_square(const JointDistribution& expected, std::span<const TrialRecord> records) {
    if (records.empty())
        throw std::invalid_argument("chi_square: no records");
    std::array<double, 16> counts{};
    for (const auto& r : records)
        counts[static_cast<std::size_t>(r.out1.station_index()) * 4 + r.out2.station_index()] +=
            1.0;
    const auto n = static_cast<double>(records.size());
    double stat = 0.0;
    for (int k = 0; k < 16; ++k) {
        const double p = expected.table()[k];
        if (p > 0.0) {
            const double diff = counts[k] - n * p;
            stat += diff * diff / (n * p);
        } else if (counts[k] > 0.0) {
            throw model_violation_error("chi_square: " + std::to_string(counts[k]) +
                                        " counts in zero-probability cell " + std::to_string(k));
        }
    }
    return stat;
}

// Cells with positive expected probability, minus one.
inline int chi_square_dof(const JointDistribution& expected) {
    int positive = 0;
    for (double p : expected.table())
        if (p > 0.0) ++positive;
    return positive - 1;
}

struct ChshEstimate {
    double value;
    double std_error;
};

// CHSH value from the label-conditioned correlators of an empirical table,
// with the usual large-sample standard error
//   se^2 = sum_blocks (1 - E_k^2) / N_k,   N_k = n * block mass.
inline ChshEstimate empirical_chsh(const JointDistribution& empirical, std::uint64_t n) {
    if (n < 1)
        throw std::invalid_argument("empirical_chsh: need at least one trial");
    const SettingTag t1[2] = {SettingTag::A, SettingTag::a};
    const SettingTag t2[2] = {SettingTag::B, SettingTag::b};
    const double sign[2][2] = {{+1.0, -1.0}, {-1.0, -1.0}};
    double value = 0.0;
    double var = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double e = conditional_correlator(empirical, t1[i], t2[j]).value;
            const double mass = block_mass(empirical, t1[i], t2[j]);
            value += sign[i][j] * e;
            var += (1.0 - e * e) / (static_cast<double>(n) * mass);
        }
    }
    return {value, std::sqrt(var)};
}

} // namespace bellsim
