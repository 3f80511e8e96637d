#pragma once

// Small dense complex linear algebra for two-qubit (4x4) and single-qubit
// (2x2) Hermitian matrices. Eigen's fixed-size types carry the storage; this
// header adds the spectral helpers and entropies used everywhere else.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>

#include <Eigen/Dense>

#include "tcq/error.hpp"

namespace tcq {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEntropyClip = 1e-12;
inline constexpr double kNegativeEigTol = 1e-8;

/// Real eigenvalues of a Hermitian matrix, sorted descending.
template <int N>
struct Spectrum {
    std::array<double, N> eigenvalues{};

    double sum() const {
        double s = 0.0;
        for (double v : eigenvalues) s += v;
        return s;
    }
    double max() const { return eigenvalues.front(); }
    double min() const { return eigenvalues.back(); }
};

using HermitianSpectrum = Spectrum<4>;

template <int N>
struct EigenDecomposition {
    Spectrum<N> spectrum;
    /// Column k is the eigenvector of spectrum.eigenvalues[k].
    Eigen::Matrix<Complex, N, N> vectors;
};

template <int N>
bool all_finite(const Eigen::Matrix<Complex, N, N> &m) {
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

template <int N>
Eigen::Matrix<Complex, N, N> hermitian_part(const Eigen::Matrix<Complex, N, N> &m) {
    return (m + m.adjoint()) * 0.5;
}

/// Largest absolute entry of `m`.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.cwiseAbs().maxCoeff();
}

/// Eigenvalues and eigenvectors of the Hermitian part of `m`, descending.
template <int N>
EigenDecomposition<N> eig_hermitian_decompose(const Eigen::Matrix<Complex, N, N> &m) {
    if (!all_finite<N>(m)) throw InputError("eig_hermitian: matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> solver(hermitian_part<N>(m));
    if (solver.info() != Eigen::Success) throw NumericalError("eig_hermitian: solver did not converge");

    // Eigen returns ascending order; flip it.
    EigenDecomposition<N> out;
    for (int k = 0; k < N; ++k) {
        out.spectrum.eigenvalues[k] = solver.eigenvalues()(N - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(N - 1 - k);
    }
    return out;
}

template <int N>
Spectrum<N> eig_hermitian(const Eigen::Matrix<Complex, N, N> &m) {
    return eig_hermitian_decompose<N>(m).spectrum;
}

inline HermitianSpectrum eig_hermitian(const Mat4 &m) { return eig_hermitian<4>(m); }

/// Shannon entropy in bits of a list of probabilities. Entries below
/// kEntropyClip contribute nothing.
inline double shannon_bits(std::span<const double> probabilities) {
    double s = 0.0;
    for (double p : probabilities)
        if (p > kEntropyClip) s -= p * std::log2(p);
    return s;
}

/// Checks unit trace and positivity, throwing StateError on violation, and
/// returns the spectrum so callers do not diagonalize twice.
template <int N>
Spectrum<N> checked_density_spectrum(const Eigen::Matrix<Complex, N, N> &rho) {
    const Complex tr = rho.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol)
        throw StateError("density matrix trace is not 1 (got " + std::to_string(tr.real()) + ")");
    if (max_abs(rho - rho.adjoint()) > kHermitianTol) throw StateError("density matrix is not Hermitian");
    auto spec = eig_hermitian<N>(rho);
    if (spec.min() < -kNegativeEigTol)
        throw StateError("density matrix has a negative eigenvalue " + std::to_string(spec.min()));
    return spec;
}

/// Von Neumann entropy -tr(rho log2 rho) in bits.
template <int N>
double von_neumann_entropy(const Eigen::Matrix<Complex, N, N> &rho) {
    static_assert(N == 2 || N == 4, "entropy is provided for one or two qubits");
    const auto spec = checked_density_spectrum<N>(rho);
    return shannon_bits(spec.eigenvalues);
}

inline double von_neumann_entropy(const Mat2 &rho) { return von_neumann_entropy<2>(rho); }
inline double von_neumann_entropy(const Mat4 &rho) { return von_neumann_entropy<4>(rho); }

/// Eigenvalues of a 2x2 Hermitian matrix [[a, b], [conj(b), d]], descending.
inline std::array<double, 2> eig_hermitian2(double a, double d, Complex b) {
    const double mean = 0.5 * (a + d);
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    return {mean + half_gap, mean - half_gap};
}

// Two-qubit basis index is 2*a + b, with qubit A the more significant one and
// local state 0 meaning the excited level |+>.

/// Reduced state of qubit A (qubit B traced out).
inline Mat2 partial_trace_b(const Mat4 &rho) {
    Mat2 out;
    for (int a = 0; a < 2; ++a)
        for (int a2 = 0; a2 < 2; ++a2) out(a, a2) = rho(2 * a, 2 * a2) + rho(2 * a + 1, 2 * a2 + 1);
    return out;
}

/// Reduced state of qubit B (qubit A traced out).
inline Mat2 partial_trace_a(const Mat4 &rho) {
    Mat2 out;
    for (int b = 0; b < 2; ++b)
        for (int b2 = 0; b2 < 2; ++b2) out(b, b2) = rho(b, b2) + rho(2 + b, 2 + b2);
    return out;
}

inline Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

inline Mat4 projector(const Eigen::Vector4cd &v) { return v * v.adjoint(); }

} // namespace tcq
