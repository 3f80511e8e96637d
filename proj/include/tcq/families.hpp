#pragma once

// Named initial-condition families and the analytic reference formulas that
// go with them.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "tcq/dynamics.hpp"
#include "tcq/error.hpp"
#include "tcq/qmatrix.hpp"

namespace tcq {

enum class Family { PsiPlus, PsiMinus, PhiPlus, PhiMinus, Werner, Ali };

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::PsiPlus:
        return "psi+";
    case Family::PsiMinus:
        return "psi-";
    case Family::PhiPlus:
        return "phi+";
    case Family::PhiMinus:
        return "phi-";
    case Family::Werner:
        return "werner";
    case Family::Ali:
        break;
    }
    return "ali";
}

inline std::optional<Family> parse_family(std::string_view s) {
    for (Family f : {Family::PsiPlus, Family::PsiMinus, Family::PhiPlus, Family::PhiMinus, Family::Werner, Family::Ali})
        if (s == to_string(f)) return f;
    return std::nullopt;
}

/// A family member: `alpha` in [0, 1] in manifold `manifold`.
struct FamilySpec {
    Family family;
    double alpha;
    ManifoldIndex manifold;

    FamilySpec(Family f, double a, ManifoldIndex n) : family(f), alpha(a), manifold(n) {
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    FamilySpec(Family f, double a, std::int64_t n) : FamilySpec(f, a, ManifoldIndex(n)) {}
};

namespace detail {

inline Eigen::Vector4cd basis_vector(int k) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(k) = 1.0;
    return v;
}

inline Eigen::Vector4cd superpose(int i, int j, double alpha, double sign) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(i) = alpha;
    v(j) = sign * std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    return v;
}

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

} // namespace detail

inline ManifoldDensity make_state(const FamilySpec &spec) {
    const double a = spec.alpha;
    const double bell = 1.0 / std::numbers::sqrt2;
    Mat4 rho;
    switch (spec.family) {
    case Family::PsiPlus:
        rho = projector(detail::superpose(1, 2, a, +1.0));
        break;
    case Family::PsiMinus:
        rho = projector(detail::superpose(1, 2, a, -1.0));
        break;
    case Family::PhiPlus:
        rho = projector(detail::superpose(0, 3, a, +1.0));
        break;
    case Family::PhiMinus:
        rho = projector(detail::superpose(0, 3, a, -1.0));
        break;
    case Family::Werner:
        rho = a * projector(detail::superpose(1, 2, bell, -1.0)) + (1.0 - a) * 0.25 * Mat4::Identity();
        break;
    case Family::Ali:
        rho = a * projector(detail::superpose(1, 2, bell, +1.0)) + (1.0 - a) * projector(detail::basis_vector(0));
        break;
    }
    return ManifoldDensity(rho, spec.manifold);
}

/// Arbitrary in-manifold initial state; validated as a density matrix only.
inline ManifoldDensity make_raw_state(const Mat4 &rho, ManifoldIndex n) { return ManifoldDensity(rho, n); }

// ---------------------------------------------------------------------------
// Analytic references

/// sqrt(n(n+1)) / (1+2n); rises from sqrt(2)/3 at n=1 toward 1/2.
inline double photon_factor(ManifoldIndex n) {
    const double x = n.as_double();
    return std::sqrt(x * (x + 1.0)) / (1.0 + 2.0 * x);
}

/// 2 alpha sqrt(1 - alpha^2).
inline double bell_weight(double alpha) { return 2.0 * alpha * std::sqrt(std::max(0.0, 1.0 - alpha * alpha)); }

enum class Reference {
    BellWeight,               ///< g(alpha), initial concurrence of psi+-
    PsiInitialDiscord,        ///< D(0) of psi+-
    PhotonFactor,             ///< f(n)
    PsiMinusConcurrence,      ///< C(tau) of psi-, needs tau
    WernerConcurrence,        ///< C of the Werner state
    WernerDiscord,            ///< D of the Werner state
    AliHalfPeriodConcurrence, ///< C(1/2) of the Ali state
    PiFactor,                 ///< Pi(n) controlling the |--> collapse time
    BasisKinkTime,            ///< slope discontinuity of C for |-->_{n+1}, in (1/4, 1/2]
    BasisCollapseTime,        ///< collapse time of C for |-->_{n+1}, in (1/4, 1/2)
};

inline double pi_factor(ManifoldIndex n) {
    const double x = n.as_double();
    return std::sqrt(x * (x + 1.0) * (2.0 * x + 1.0) * (2.0 * x + 1.0)) / (x + 1.0) - 2.0 * x;
}

inline double closed_form(Reference kind, double alpha, ManifoldIndex n, double tau = 0.0) {
    const bool alpha_used = kind != Reference::PhotonFactor && kind != Reference::PiFactor &&
                            kind != Reference::BasisKinkTime && kind != Reference::BasisCollapseTime;
    if (alpha_used && !(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("closed_form: alpha must lie in [0, 1]");
    const double f = photon_factor(n);
    const double two_pi = 2.0 * std::numbers::pi;
    switch (kind) {
    case Reference::BellWeight:
        return bell_weight(alpha);
    case Reference::PsiInitialDiscord: {
        const double a2 = alpha * alpha;
        return -detail::xlog2x(1.0 - a2) - detail::xlog2x(a2);
    }
    case Reference::PhotonFactor:
        return f;
    case Reference::PsiMinusConcurrence: {
        if (!std::isfinite(tau)) throw DomainError("closed_form: tau must be finite");
        const double g = bell_weight(alpha);
        const double s = std::sin(two_pi * tau);
        return g + (0.5 - f) * (1.0 - g) * s * s;
    }
    case Reference::WernerConcurrence:
        return std::max(0.0, (3.0 * alpha - 1.0) / 2.0);
    case Reference::WernerDiscord:
        return 0.25 * (detail::xlog2x(1.0 - alpha) + detail::xlog2x(1.0 + 3.0 * alpha) -
                       2.0 * detail::xlog2x(1.0 + alpha));
    case Reference::AliHalfPeriodConcurrence:
        return std::max(0.0, alpha - 4.0 * (1.0 - alpha) * f / (1.0 + 2.0 * n.as_double()));
    case Reference::PiFactor:
        return pi_factor(n);
    case Reference::BasisKinkTime:
        return std::acos(-n.as_double() / (1.0 + n.as_double())) / two_pi;
    case Reference::BasisCollapseTime:
        return std::acos(std::sqrt(pi_factor(n))) / std::numbers::pi;
    }
    throw DomainError("closed_form: unknown reference quantity");
}

enum class CriticalAlphaKind { AlphaB, AlphaC, AlphaOne, AlphaA, AlphaZeroDiscord, AlphaPlateau };

inline std::string_view to_string(CriticalAlphaKind k) {
    switch (k) {
    case CriticalAlphaKind::AlphaB:
        return "alpha-b";
    case CriticalAlphaKind::AlphaC:
        return "alpha-c";
    case CriticalAlphaKind::AlphaOne:
        return "alpha-1";
    case CriticalAlphaKind::AlphaA:
        return "alpha-a";
    case CriticalAlphaKind::AlphaZeroDiscord:
        return "alpha-0";
    case CriticalAlphaKind::AlphaPlateau:
        break;
    }
    return "alpha-plateau";
}

inline std::optional<CriticalAlphaKind> parse_critical_alpha_kind(std::string_view s) {
    for (auto k : {CriticalAlphaKind::AlphaB, CriticalAlphaKind::AlphaC, CriticalAlphaKind::AlphaOne,
                   CriticalAlphaKind::AlphaA, CriticalAlphaKind::AlphaZeroDiscord, CriticalAlphaKind::AlphaPlateau})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

inline bool has_closed_form(CriticalAlphaKind k) {
    return k != CriticalAlphaKind::AlphaZeroDiscord && k != CriticalAlphaKind::AlphaPlateau;
}

/// Critical alpha values known in closed form. The zero-discord and plateau
/// values need the numerical solvers in features.hpp.
inline double critical_alpha_closed_form(CriticalAlphaKind kind, ManifoldIndex n) {
    const double x = n.as_double();
    switch (kind) {
    case CriticalAlphaKind::AlphaB:
        return std::sqrt(x / (1.0 + 2.0 * x));
    case CriticalAlphaKind::AlphaC:
        return 1.0 / (1.0 + 2.0 * x);
    case CriticalAlphaKind::AlphaOne:
        return 2.0 * photon_factor(n);
    case CriticalAlphaKind::AlphaA:
        return 1.0 / (1.0 + (1.0 + 2.0 * x) / (4.0 * photon_factor(n)));
    default:
        break;
    }
    throw DomainError("critical alpha '" + std::string(to_string(kind)) + "' has no closed form");
}

} // namespace tcq
