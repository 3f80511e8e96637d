#pragma once

// Exact resonant Tavis-Cummings evolution of two two-level systems and one
// cavity mode, restricted to a single excitation manifold.
//
// Manifold n is spanned, in this order, by
//   |++>_{n-1}, |+->_n, |-+>_n, |-->_{n+1}
// (subscript = photon number). Inside the manifold the interaction has
// eigenfrequencies {0, 0, +W, -W} with W = g sqrt(4n+2), so all dynamics are
// periodic in t_R = 1/Omega_R. Time is dimensionless, tau = t / t_R, and a
// full period is tau = 1.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "tcq/error.hpp"
#include "tcq/qmatrix.hpp"

namespace tcq {

/// Photon number carried by |+-> and |-+> in the manifold; always >= 1.
class ManifoldIndex {
  public:
    explicit ManifoldIndex(std::int64_t n) : n_(n) {
        if (n < 1) throw DomainError("manifold index must be >= 1, got " + std::to_string(n));
    }
    std::int64_t value() const { return n_; }
    double as_double() const { return static_cast<double>(n_); }
    friend bool operator==(ManifoldIndex, ManifoldIndex) = default;
    friend auto operator<=>(ManifoldIndex, ManifoldIndex) = default;

  private:
    std::int64_t n_;
};

/// Coupling and bare frequency. `omega` only contributes a global phase for
/// states confined to one manifold and is kept for unit conversion only.
struct TCParams {
    double g = 1.0;
    double omega = 0.0;

    TCParams() = default;
    TCParams(double g_, double omega_) : g(g_), omega(omega_) {
        if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("coupling g must be positive and finite");
    }

    /// Omega_R = g sqrt(4n+2).
    double rabi_frequency(ManifoldIndex n) const { return g * std::sqrt(4.0 * n.as_double() + 2.0); }
    double period(ManifoldIndex n) const { return 1.0 / rabi_frequency(n); }
    double to_tau(double t, ManifoldIndex n) const { return t * rabi_frequency(n); }
    double to_time(double tau, ManifoldIndex n) const { return tau / rabi_frequency(n); }
};

/// Density matrix of the qubits + field inside one manifold.
class ManifoldDensity {
  public:
    static constexpr double kTol = 1e-10;

    ManifoldDensity(const Mat4 &rho, ManifoldIndex n) : rho_(rho), n_(n) { validate(); }

    /// Skips validation; for states produced by unitary evolution of a valid state.
    static ManifoldDensity trusted(const Mat4 &rho, ManifoldIndex n) { return ManifoldDensity(rho, n, 0); }

    const Mat4 &matrix() const { return rho_; }
    ManifoldIndex manifold() const { return n_; }
    Complex operator()(int i, int j) const { return rho_(i, j); }

    /// Same amplitudes relabelled into another manifold's basis.
    ManifoldDensity with_manifold(ManifoldIndex n) const { return trusted(rho_, n); }

    double purity() const { return (rho_ * rho_).trace().real(); }

  private:
    ManifoldDensity(const Mat4 &rho, ManifoldIndex n, int) : rho_(rho), n_(n) {}

    void validate() const {
        if (!all_finite<4>(rho_)) throw StateError("manifold density has non-finite entries");
        if (max_abs(rho_ - rho_.adjoint()) > kTol) throw StateError("manifold density is not Hermitian");
        const Complex tr = rho_.trace();
        if (std::abs(tr.real() - 1.0) > kTol || std::abs(tr.imag()) > kTol)
            throw StateError("manifold density trace is not 1");
        if (eig_hermitian(rho_).min() < -kTol) throw StateError("manifold density is not positive semidefinite");
    }

    Mat4 rho_;
    ManifoldIndex n_;
};

/// In-manifold propagator U(tau), global phase dropped.
inline Mat4 build_unitary(ManifoldIndex manifold, double tau) {
    if (!std::isfinite(tau)) throw DomainError("tau must be finite");
    const double n = manifold.as_double();
    const double phase = 2.0 * std::numbers::pi * tau;
    const double c1 = std::cos(phase) - 1.0;
    const double c2 = std::sin(phase);
    const double d = 2.0 * n + 1.0;
    const double s = std::sqrt(2.0 * d);
    const Complex lo(0.0, -std::sqrt(n) * c2 / s);       // |++> <-> |+->, |-+>
    const Complex hi(0.0, -std::sqrt(n + 1.0) * c2 / s); // |+->, |-+> <-> |-->
    const double corner = std::sqrt(n * (n + 1.0)) * c1 / d;

    Mat4 u;
    u << 1.0 + n * c1 / d, lo, lo, corner,
         lo, 1.0 + 0.5 * c1, 0.5 * c1, hi,
         lo, 0.5 * c1, 1.0 + 0.5 * c1, hi,
         corner, hi, hi, 1.0 + (n + 1.0) * c1 / d;
    return u;
}

inline ManifoldDensity evolve(const ManifoldDensity &rho0, double tau) {
    const Mat4 u = build_unitary(rho0.manifold(), tau);
    Mat4 rho = u * rho0.matrix() * u.adjoint();
    rho = hermitian_part<4>(rho);
    return ManifoldDensity::trusted(rho, rho0.manifold());
}

} // namespace tcq
