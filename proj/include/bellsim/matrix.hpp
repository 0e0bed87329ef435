// matrix.hpp
// Dense complex matrices for one- and two-qubit operators, backed by Eigen.
// Everything here is a pure function over immutable values.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "bellsim/errors.hpp"

namespace bellsim {

using ComplexMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

inline bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols(); }

inline bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

inline ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

inline ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline ComplexMatrix sigma_y() {
    ComplexMatrix m(2, 2);
    m << std::complex<double>(0, 0), std::complex<double>(0, -1),
         std::complex<double>(0, 1), std::complex<double>(0, 0);
    return m;
}

inline ComplexMatrix sigma_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// Kronecker product; block (i,j) of the result is a(i,j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!is_square(a) || !is_square(b))
        throw std::invalid_argument("kron: inputs must be square");
    return Eigen::kroneckerProduct(a, b).eval();
}

// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix& a) {
    if (!is_square(a))
        throw std::invalid_argument("dagger: input must be square");
    return a.adjoint();
}

inline std::complex<double> trace(const ComplexMatrix& a) {
    if (!is_square(a))
        throw std::invalid_argument("trace: input must be square");
    return a.trace();
}

// Max entrywise |a - a^dagger|.
inline double hermitian_deviation(const ComplexMatrix& a) {
    if (!is_square(a))
        throw std::invalid_argument("hermitian_deviation: input must be square");
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

// Real eigenvalue spectrum of a Hermitian matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol = 1e-12) {
    if (hermitian_deviation(a) > herm_tol)
        throw invariant_error("hermitian_eigenvalues: matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw invariant_error("hermitian_eigenvalues: eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// True iff every eigenvalue of the (Hermitian) input is >= -tol.
inline bool is_psd(const ComplexMatrix& a, double tol) {
    const auto eigs = hermitian_eigenvalues(a, tol);
    for (double e : eigs)
        if (e < -tol) return false;
    return true;
}

} // namespace bellsim
