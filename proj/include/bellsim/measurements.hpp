// measurements.hpp
// Projective +/-1 spin measurements, pairwise correlators, the CHSH
// functional AB - Ab - aB - ab (one positive term, three negative), and
// its deterministic-strategy bound.
//
// Settings A and a belong to station 1, B and b to station 2.

#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <utility>

#include "bellsim/states.hpp"

namespace bellsim {

enum class SettingTag { A, a, B, b };

inline int station_of(SettingTag t) {
    return (t == SettingTag::A || t == SettingTag::a) ? 1 : 2;
}

inline char to_char(SettingTag t) {
    switch (t) {
        case SettingTag::A: return 'A';
        case SettingTag::a: return 'a';
        case SettingTag::B: return 'B';
        default: return 'b';
    }
}

inline std::string to_string(SettingTag t) { return std::string(1, to_char(t)); }

// A +/-1-valued projective spin measurement along a unit Bloch vector.
class MeasurementSetting {
public:
    MeasurementSetting(SettingTag label, const Vec3& direction)
        : label_(label), direction_(direction) {
        if (!direction_.allFinite())
            throw std::invalid_argument("MeasurementSetting: non-finite direction");
        if (std::abs(direction_.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("MeasurementSetting: direction must be a unit vector");
    }

    SettingTag label() const { return label_; }
    int station() const { return station_of(label_); }
    const Vec3& direction() const { return direction_; }

private:
    SettingTag label_;
    Vec3 direction_;
};

// Direction at `angle_deg` from the z-axis in the x-z plane.
inline MeasurementSetting setting_from_angle_deg(SettingTag label, double angle_deg) {
    const double t = angle_deg * std::numbers::pi / 180.0;
    return MeasurementSetting(label, Vec3(std::sin(t), 0.0, std::cos(t)));
}

struct SettingsQuartet {
    MeasurementSetting A, a, B, b;

    SettingsQuartet(MeasurementSetting A_, MeasurementSetting a_,
                    MeasurementSetting B_, MeasurementSetting b_)
        : A(std::move(A_)), a(std::move(a_)), B(std::move(B_)), b(std::move(b_)) {
        if (A.label() != SettingTag::A || a.label() != SettingTag::a ||
            B.label() != SettingTag::B || b.label() != SettingTag::b)
            throw std::invalid_argument("SettingsQuartet: field labels must be A, a, B, b");
    }
};

inline SettingsQuartet quartet_from_angles_deg(double A_deg, double a_deg,
                                               double B_deg, double b_deg) {
    return SettingsQuartet(setting_from_angle_deg(SettingTag::A, A_deg),
                           setting_from_angle_deg(SettingTag::a, a_deg),
                           setting_from_angle_deg(SettingTag::B, B_deg),
                           setting_from_angle_deg(SettingTag::b, b_deg));
}

// Expectation value of a product of two +/-1 results.
struct Correlator {
    double value;

    explicit Correlator(double v) : value(v) {
        if (!(std::abs(v) <= 1.0 + 1e-10))
            throw invariant_error("Correlator: |value| exceeds 1 beyond tolerance");
    }
};

// n . sigma
inline ComplexMatrix bloch_observable(const Vec3& n) {
    return n.x() * sigma_x() + n.y() * sigma_y() + n.z() * sigma_z();
}

// (P+, P-) = ((I +/- n.sigma)/2); PSD, idempotent, summing to I.
inline std::pair<ComplexMatrix, ComplexMatrix> projectors(const MeasurementSetting& s) {
    const ComplexMatrix ns = bloch_observable(s.direction());
    const ComplexMatrix i2 = identity(2);
    return {((i2 + ns) / 2.0).eval(), ((i2 - ns) / 2.0).eval()};
}

// Born-rule correlator: sum over the four joint outcomes of r1*r2*p(r1,r2).
inline Correlator correlator(const DensityOperator& rho, const MeasurementSetting& s1,
                             const MeasurementSetting& s2) {
    if (s1.station() != 1 || s2.station() != 2)
        throw std::invalid_argument("correlator: s1 must be a station-1 setting, s2 station-2");
    const auto [p1_plus, p1_minus] = projectors(s1);
    const auto [p2_plus, p2_minus] = projectors(s2);
    double e = 0.0;
    e += born_probability(rho, kron(p1_plus, p2_plus));
    e -= born_probability(rho, kron(p1_plus, p2_minus));
    e -= born_probability(rho, kron(p1_minus, p2_plus));
    e += born_probability(rho, kron(p1_minus, p2_minus));
    return Correlator(e);
}

// Signed CHSH functional AB - Ab - aB - ab; callers compare |value| to 2.
inline double chsh_value(const DensityOperator& rho, const SettingsQuartet& q) {
    return correlator(rho, q.A, q.B).value - correlator(rho, q.A, q.b).value -
           correlator(rho, q.a, q.B).value - correlator(rho, q.a, q.b).value;
}

// In-plane angles (degrees from z, x-z plane) that maximize |CHSH| on the
// singlet under this sign convention.
inline constexpr std::array<double, 4> kOptimalAnglesDeg = {0.0, 90.0, 135.0, 45.0};

inline SettingsQuartet optimal_quartet() {
    return quartet_from_angles_deg(kOptimalAnglesDeg[0], kOptimalAnglesDeg[1],
                                   kOptimalAnglesDeg[2], kOptimalAnglesDeg[3]);
}

struct DeterministicEnumeration {
    double bound;        // max |vA*vB - vA*vb - va*vB - va*vb|
    int count_at_bound;  // assignments attaining the max
};

// Exhaustive sweep of the 16 deterministic outcome assignments
// (vA, va, vB, vb) in {+1,-1}^4, in integer arithmetic.
inline DeterministicEnumeration enumerate_deterministic_strategies() {
    int best = 0;
    int count = 0;
    for (int mask = 0; mask < 16; ++mask) {
        const int vA = (mask & 1) ? 1 : -1;
        const int va = (mask & 2) ? 1 : -1;
        const int vB = (mask & 4) ? 1 : -1;
        const int vb = (mask & 8) ? 1 : -1;
        const int s = std::abs(vA * vB - vA * vb - va * vB - va * vb);
        if (s > best) {
            best = s;
            count = 1;
        } else if (s == best) {
            ++count;
        }
    }
    return {static_cast<double>(best), count};
}

inline double local_deterministic_bound() {
    return enumerate_deterministic_strategies().bound;
}

} // namespace bellsim
