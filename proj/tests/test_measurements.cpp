// Projective measurements, correlators, the CHSH functional and its
// deterministic bound.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "bellsim/measurements.hpp"
#include "bellsim/rng.hpp"

using namespace bellsim;

namespace {

constexpr double kTsirelson = 2.8284271247461903;  // 2*sqrt(2)

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    return (x - y).cwiseAbs().maxCoeff();
}

MeasurementSetting random_setting(SettingTag tag, Pcg32& rng) {
    return MeasurementSetting(tag, random_unit_vector(rng));
}

SettingsQuartet random_quartet(Pcg32& rng) {
    return SettingsQuartet(random_setting(SettingTag::A, rng), random_setting(SettingTag::a, rng),
                           random_setting(SettingTag::B, rng), random_setting(SettingTag::b, rng));
}

// Correlator through the spin-observable route: tr(rho * (n1.s x n2.s)).
double correlator_via_observables(const DensityOperator& rho, const MeasurementSetting& s1,
                                  const MeasurementSetting& s2) {
    const ComplexMatrix obs = kron(bloch_observable(s1.direction()), bloch_observable(s2.direction()));
    return (rho.matrix() * obs).trace().real();
}

} // namespace

TEST_CASE("setting construction validates the direction") {
    CHECK_THROWS_AS(MeasurementSetting(SettingTag::A, Vec3(0, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(MeasurementSetting(SettingTag::A, Vec3(1, 0, 1)), std::invalid_argument);
    CHECK_NOTHROW(MeasurementSetting(SettingTag::A, Vec3(0, 0, 1)));
    CHECK(MeasurementSetting(SettingTag::A, Vec3(0, 0, 1)).station() == 1);
    CHECK(MeasurementSetting(SettingTag::b, Vec3(0, 0, 1)).station() == 2);
}

TEST_CASE("quartet field labels must match") {
    const auto z = [](SettingTag t) { return MeasurementSetting(t, Vec3(0, 0, 1)); };
    CHECK_THROWS_AS(SettingsQuartet(z(SettingTag::a), z(SettingTag::A), z(SettingTag::B),
                                    z(SettingTag::b)),
                    std::invalid_argument);
}

TEST_CASE("projectors along the coordinate axes") {
    const auto [zp, zm] = projectors(setting_from_angle_deg(SettingTag::A, 0.0));
    ComplexMatrix dz = ComplexMatrix::Zero(2, 2);
    dz(0, 0) = 1.0;
    CHECK(max_abs_diff(zp, dz) <= 1e-15);
    dz(0, 0) = 0.0;
    dz(1, 1) = 1.0;
    CHECK(max_abs_diff(zm, dz) <= 1e-15);

    const auto [xp, xm] = projectors(setting_from_angle_deg(SettingTag::A, 90.0));
    ComplexMatrix half(2, 2);
    half << 0.5, 0.5, 0.5, 0.5;
    CHECK(max_abs_diff(xp, half) <= 1e-15);
}

TEST_CASE("projector completeness, idempotency and positivity") {
    Pcg32 rng(201);
    for (int t = 0; t < 100; ++t) {
        const auto s = random_setting(SettingTag::A, rng);
        const auto [pp, pm] = projectors(s);
        CHECK(max_abs_diff((pp + pm).eval(), identity(2)) <= 1e-14);
        CHECK(max_abs_diff((pp * pp).eval(), pp) <= 1e-12);
        CHECK(max_abs_diff((pm * pm).eval(), pm) <= 1e-12);
        CHECK(is_psd(pp, 1e-12));
        CHECK(is_psd(pm, 1e-12));
    }
}

TEST_CASE("singlet correlators at fixed angles") {
    const DensityOperator rho = singlet();
    const auto s_A = [](double deg) { return setting_from_angle_deg(SettingTag::A, deg); };
    const auto s_B = [](double deg) { return setting_from_angle_deg(SettingTag::B, deg); };

    CHECK(std::abs(correlator(rho, s_A(0), s_B(0)).value - (-1.0)) <= 1e-12);
    CHECK(std::abs(correlator(rho, s_A(0), s_B(90)).value - 0.0) <= 1e-12);
    for (double deg : {0.0, 30.0, 45.0, 60.0, 90.0}) {
        const double expected = -std::cos(deg * std::numbers::pi / 180.0);
        CHECK(std::abs(correlator(rho, s_A(0), s_B(deg)).value - expected) <= 1e-12);
    }
}

TEST_CASE("correlator rejects a station mismatch") {
    const DensityOperator rho = singlet();
    const auto a1 = setting_from_angle_deg(SettingTag::A, 0.0);
    const auto a2 = setting_from_angle_deg(SettingTag::a, 45.0);
    CHECK_THROWS_AS(correlator(rho, a1, a2), std::invalid_argument);
}

TEST_CASE("singlet correlator equals minus the dot product") {
    const DensityOperator rho = singlet();
    Pcg32 rng(202);
    for (int t = 0; t < 1000; ++t) {
        const auto s1 = random_setting(SettingTag::A, rng);
        const auto s2 = random_setting(SettingTag::B, rng);
        const double expected = -s1.direction().dot(s2.direction());
        CHECK(std::abs(correlator(rho, s1, s2).value - expected) <= 1e-12);
    }
}

TEST_CASE("outcome-sum and observable-trace correlator routes agree") {
    Pcg32 rng(203);
    for (int t = 0; t < 100; ++t) {
        const DensityOperator rho = random_density(rng);
        const auto s1 = random_setting(SettingTag::A, rng);
        const auto s2 = random_setting(SettingTag::B, rng);
        CHECK(std::abs(correlator(rho, s1, s2).value - correlator_via_observables(rho, s1, s2)) <=
              1e-12);
    }
}

TEST_CASE("chsh value on aligned settings") {
    // All four settings along z: value = -2 E(z,z).
    const auto q = quartet_from_angles_deg(0, 0, 0, 0);
    CHECK(std::abs(chsh_value(singlet(), q) - 2.0) <= 1e-12);
    CHECK(std::abs(chsh_value(product_00(), q) - (-2.0)) <= 1e-12);
}

TEST_CASE("optimal quartet attains 2*sqrt(2) on the singlet") {
    const double v = chsh_value(singlet(), optimal_quartet());
    CHECK(std::abs(std::abs(v) - kTsirelson) <= 1e-9);
    CHECK(v > 0.0);  // with this sign convention the maximizer is positive
}

TEST_CASE("chsh is invariant under a common in-plane rotation") {
    const DensityOperator rho = singlet();
    const double base = chsh_value(rho, optimal_quartet());
    Pcg32 rng(204);
    for (int t = 0; t < 5; ++t) {
        const double delta = 360.0 * rng.next_double();
        const auto rotated = quartet_from_angles_deg(
            kOptimalAnglesDeg[0] + delta, kOptimalAnglesDeg[1] + delta,
            kOptimalAnglesDeg[2] + delta, kOptimalAnglesDeg[3] + delta);
        CHECK(std::abs(chsh_value(rho, rotated) - base) <= 1e-10);
    }
}

TEST_CASE("singlet chsh stays below the 2*sqrt(2) ceiling") {
    const DensityOperator rho = singlet();
    Pcg32 rng(205);
    for (int t = 0; t < 1000; ++t) {
        const auto q = random_quartet(rng);
        CHECK(std::abs(chsh_value(rho, q)) <= kTsirelson + 1e-9);
    }
}

TEST_CASE("deterministic strategies never exceed 2") {
    const auto enumeration = enumerate_deterministic_strategies();
    CHECK(enumeration.bound == 2.0);
    CHECK(local_deterministic_bound() == 2.0);

    // Independent re-enumeration with explicit nested loops.
    int best = 0;
    int count = 0;
    for (int vA : {+1, -1})
        for (int va : {+1, -1})
            for (int vB : {+1, -1})
                for (int vb : {+1, -1}) {
                    const int s = std::abs(vA * vB - vA * vb - va * vB - va * vb);
                    if (s > best) {
                        best = s;
                        count = 1;
                    } else if (s == best) {
                        ++count;
                    }
                }
    CHECK(best == 2);
    CHECK(enumeration.count_at_bound == count);

    // The all +1 assignment contributes -2.
    CHECK(1 * 1 - 1 * 1 - 1 * 1 - 1 * 1 == -2);
}

TEST_CASE("optimal quartet is well formed") {
    const auto q = optimal_quartet();
    CHECK(q.A.label() == SettingTag::A);
    CHECK(q.a.label() == SettingTag::a);
    CHECK(q.B.label() == SettingTag::B);
    CHECK(q.b.label() == SettingTag::b);
    CHECK(q.A.station() == 1);
    CHECK(q.B.station() == 2);
    for (const auto* s : {&q.A, &q.a, &q.B, &q.b})
        CHECK(std::abs(s->direction().norm() - 1.0) <= 1e-12);
}
