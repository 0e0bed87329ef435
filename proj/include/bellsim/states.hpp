// states.hpp
// Two-qubit density operators and the Born rule.
//
// Basis ordering is |00>, |01>, |10>, |11> with particle 1 as the left
// tensor factor.  Every DensityOperator is validated on construction:
// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.

#pragma once

#include <complex>
#include <string>

#include "bellsim/matrix.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kProbClamp = 1e-10;

class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix m) : rho_(std::move(m)) {
        if (rho_.rows() != 4 || rho_.cols() != 4)
            throw std::invalid_argument("DensityOperator: expected a 4x4 matrix");
        if (!all_finite(rho_))
            throw invariant_error("DensityOperator: non-finite entries");
        if (hermitian_deviation(rho_) > kHermTol)
            throw invariant_error("DensityOperator: not Hermitian within 1e-12");
        if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > kTraceTol)
            throw invariant_error("DensityOperator: trace differs from 1 beyond 1e-12");
        if (!is_psd(rho_, kPsdTol))
            throw invariant_error("DensityOperator: negative eigenvalue beyond 1e-10");
    }

    const ComplexMatrix& matrix() const { return rho_; }

private:
    ComplexMatrix rho_;
};

// |psi><psi| for a (normalized) two-qubit ket.
inline DensityOperator pure_state(const Eigen::VectorXcd& psi) {
    if (psi.size() != 4)
        throw std::invalid_argument("pure_state: expected a 4-component ket");
    const double n = psi.norm();
    if (n < 1e-12)
        throw std::invalid_argument("pure_state: zero ket");
    const Eigen::VectorXcd v = psi / n;
    return DensityOperator((v * v.adjoint()).eval());
}

// (|01> - |10>)/sqrt(2).
inline DensityOperator singlet() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(1) = std::complex<double>(1.0 / std::sqrt(2.0), 0.0);
    psi(2) = std::complex<double>(-1.0 / std::sqrt(2.0), 0.0);
    return pure_state(psi);
}

inline DensityOperator maximally_mixed() {
    return DensityOperator((identity(4) / 4.0).eval());
}

inline DensityOperator product_00() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = 1.0;
    return pure_state(psi);
}

// Random full-rank mixed state: G G^dagger / tr(G G^dagger) with i.i.d.
// complex-Gaussian G.
inline DensityOperator random_density(Pcg32& rng) {
    ComplexMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityOperator(std::move(m));
}

// Re tr(rho * effect), clamped to [0,1] when within 1e-10 of the boundary.
// Rejects effects whose trace against rho has an imaginary part beyond
// 1e-10 (a sign of a non-Hermitian operand) and probabilities outside
// [-1e-10, 1 + 1e-10].
inline double born_probability(const DensityOperator& rho, const ComplexMatrix& effect) {
    if (effect.rows() != 4 || effect.cols() != 4)
        throw std::invalid_argument("born_probability: effect must be 4x4");
    const std::complex<double> t = (rho.matrix() * effect).trace();
    if (std::abs(t.imag()) > kProbClamp)
        throw invariant_error("born_probability: trace has imaginary part " +
                              std::to_string(t.imag()));
    double p = t.real();
    if (p < -kProbClamp || p > 1.0 + kProbClamp)
        throw invariant_error("born_probability: probability " + std::to_string(p) +
                              " outside [0,1] beyond tolerance");
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

} // namespace bellsim
