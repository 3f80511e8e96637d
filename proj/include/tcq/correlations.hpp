#pragma once

// Correlation quantifiers for two qubits: concurrence, mutual information,
// measured conditional entropy, and quantum discord. Subsystem A is the first
// qubit and measurements are always performed on B. Entropies are in bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string_view>

#include "tcq/error.hpp"
#include "tcq/qmatrix.hpp"
#include "tcq/reduction.hpp"
#include "tcq/roots.hpp"

namespace tcq {

enum class DiscordBranch { SigmaZ, SigmaX, Neither };

inline std::string_view to_string(DiscordBranch b) {
    switch (b) {
    case DiscordBranch::SigmaZ:
        return "sigma_z";
    case DiscordBranch::SigmaX:
        return "sigma_x";
    case DiscordBranch::Neither:
        break;
    }
    return "neither";
}

struct DiscordResult {
    double discord = 0.0;
    DiscordBranch branch = DiscordBranch::Neither;
    bool chen_huang_valid = false;
    double mutual_info = 0.0;
    double classical_corr = 0.0;
    /// Discord evaluated with each fixed measurement on B.
    double discord_sigma_z = 0.0;
    double discord_sigma_x = 0.0;
    /// The two sufficient conditions for the sigma_z resp. sigma_x
    /// measurement to be optimal.
    bool sigma_z_condition = false;
    bool sigma_x_condition = false;
};

/// Orthogonal pair of rank-1 projectors acting on qubit B.
struct MeasurementBasis {
    Mat2 first;
    Mat2 second;

    /// Projectors onto cos(theta/2)|+> + e^{i phi} sin(theta/2)|-> and its
    /// orthogonal complement.
    static MeasurementBasis bloch(double theta, double phi) {
        Eigen::Vector2cd v(std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi));
        Eigen::Vector2cd w(-std::conj(v(1)), std::conj(v(0)));
        return {v * v.adjoint(), w * w.adjoint()};
    }
    static MeasurementBasis sigma_z() { return bloch(0.0, 0.0); }
    static MeasurementBasis sigma_x() { return bloch(std::numbers::pi / 2.0, 0.0); }
};

/// 2 max(0, |rho_23| - sqrt(rho_11 rho_44)).
inline double concurrence_x(const TwoQubitX &rho) {
    return std::clamp(2.0 * rho.entanglement_margin(), 0.0, 1.0);
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
inline double concurrence_wootters(const Mat4 &rho_in) {
    const Mat4 rho = hermitian_part<4>(rho_in);
    checked_density_spectrum<4>(rho);

    Mat4 flip = Mat4::Zero(); // sigma_y (x) sigma_y
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    // With rho = A A^dagger, the square roots of the eigenvalues of rho * tilde
    // are the singular values of A^dagger Y A^*. Taking them from an SVD
    // avoids square-rooting eigenvalues that sit at the rounding floor.
    // Eigenvalues below the solver's resolution are treated as exact zeros.
    constexpr double rank_floor = 1e-14;
    const auto dec = eig_hermitian_decompose<4>(rho);
    Eigen::Vector4cd root_vals;
    for (int k = 0; k < 4; ++k) {
        const double ev = dec.spectrum.eigenvalues[k];
        root_vals(k) = ev > rank_floor ? std::sqrt(ev) : 0.0;
    }
    const Mat4 a = dec.vectors * root_vals.asDiagonal();
    const Eigen::JacobiSVD<Mat4> svd(Mat4(a.adjoint() * flip * a.conjugate()));
    const Eigen::Vector4d sv = svd.singularValues();
    std::array<double, 4> lambda{sv(0), sv(1), sv(2), sv(3)};
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

inline double mutual_information(const Mat4 &rho) {
    return von_neumann_entropy(partial_trace_b(rho)) + von_neumann_entropy(partial_trace_a(rho)) -
           von_neumann_entropy(rho);
}

/// sum_k p_k S(rho_A | k) for the projective measurement `basis` on B.
inline double conditional_entropy_measured(const Mat4 &rho, const MeasurementBasis &basis) {
    constexpr double tol = 1e-12;
    const Mat2 id = Mat2::Identity();
    if (max_abs(basis.first + basis.second - id) > tol) throw InputError("measurement projectors are not complete");
    for (const Mat2 *p : {&basis.first, &basis.second}) {
        if (max_abs(*p - p->adjoint()) > tol || max_abs(Mat2(*p * *p) - *p) > tol)
            throw InputError("measurement operator is not a projector");
        if (std::abs(p->trace().real() - 1.0) > tol) throw InputError("measurement projector is not rank 1");
    }

    double s = 0.0;
    for (const Mat2 *p : {&basis.first, &basis.second}) {
        const Mat4 m = kron(id, *p);
        const Mat4 post = m * rho * m;
        const double pk = post.trace().real();
        if (pk < tol) continue;
        s += pk * von_neumann_entropy(Mat2(partial_trace_b(post) / pk));
    }
    return s;
}

namespace detail {

/// p_k S(rho_A | k) summed over the two outcomes of the Bloch-angle
/// measurement, without validation. Inner loop of the brute-force search.
inline double measured_entropy_fast(const Mat4 &rho, double theta, double phi) {
    const Complex v0(std::cos(0.5 * theta), 0.0);
    const Complex v1 = std::polar(std::sin(0.5 * theta), phi);
    const std::array<std::array<Complex, 2>, 2> vecs{{{v0, v1}, {-std::conj(v1), std::conj(v0)}}};
    double s = 0.0;
    for (const auto &v : vecs) {
        // sigma(a, a') = sum_{b, b'} conj(v_b) rho(2a+b, 2a'+b') v_b'
        Complex sig[2][2];
        for (int a = 0; a < 2; ++a)
            for (int a2 = 0; a2 < 2; ++a2) {
                Complex acc = 0.0;
                for (int b = 0; b < 2; ++b)
                    for (int b2 = 0; b2 < 2; ++b2) acc += std::conj(v[b]) * rho(2 * a + b, 2 * a2 + b2) * v[b2];
                sig[a][a2] = acc;
            }
        const double pk = sig[0][0].real() + sig[1][1].real();
        if (pk < 1e-12) continue;
        auto ev = eig_hermitian2(sig[0][0].real() / pk, sig[1][1].real() / pk, sig[0][1] / pk);
        s += pk * shannon_bits(ev);
    }
    return s;
}

inline constexpr double kConditionSlack = 1e-12;

} // namespace detail

/// Discord of an X state from the two candidate measurements sigma_z and
/// sigma_x on B. The returned value is always the smaller of the two;
/// `chen_huang_valid` tells whether a sufficient optimality condition holds.
inline DiscordResult discord_x(const TwoQubitX &x) {
    const Mat4 rho = x.to_dense();
    const double s_ab = von_neumann_entropy(rho);
    const double s_a = von_neumann_entropy(partial_trace_b(rho));
    const double s_b = von_neumann_entropy(partial_trace_a(rho));

    DiscordResult out;
    out.mutual_info = s_a + s_b - s_ab;
    out.discord_sigma_z = s_b - s_ab + conditional_entropy_measured(rho, MeasurementBasis::sigma_z());
    out.discord_sigma_x = s_b - s_ab + conditional_entropy_measured(rho, MeasurementBasis::sigma_x());

    const double c = std::abs(x.r23());
    const double r11 = std::max(0.0, x.r11()), r22 = std::max(0.0, x.r22());
    const double r33 = std::max(0.0, x.r33()), r44 = std::max(0.0, x.r44());
    // Orientation matches a measurement on B: the outcome-conditioned A states
    // pair populations (11, 33) and (22, 44).
    out.sigma_z_condition = c * c <= (r11 - r33) * (r44 - r22) + detail::kConditionSlack;
    out.sigma_x_condition = std::abs(std::sqrt(r11 * r44) - std::sqrt(r22 * r33)) <= c + detail::kConditionSlack;
    out.chen_huang_valid = out.sigma_z_condition || out.sigma_x_condition;

    const bool z_smaller = out.discord_sigma_z <= out.discord_sigma_x;
    if (out.sigma_z_condition && out.sigma_x_condition)
        out.branch = z_smaller ? DiscordBranch::SigmaZ : DiscordBranch::SigmaX;
    else if (out.sigma_z_condition)
        out.branch = DiscordBranch::SigmaZ;
    else if (out.sigma_x_condition)
        out.branch = DiscordBranch::SigmaX;

    out.discord = std::clamp(std::min(out.discord_sigma_z, out.discord_sigma_x), 0.0, std::max(0.0, out.mutual_info));
    out.classical_corr = out.mutual_info - out.discord;
    return out;
}

struct BruteForceGrid {
    int theta_points = 180;
    int phi_points = 360;
    double angle_tol = 1e-6;
    int max_iterations = 200;
};

struct BruteForceDiscord {
    double discord;
    double theta;
    double phi;
    double conditional_entropy;
};

/// Discord minimized over all rank-1 projective measurements on B: grid scan
/// over Bloch angles, then alternating golden-section refinement of theta
/// and phi. On an X state this never exceeds discord_x, which only tries two
/// bases.
inline BruteForceDiscord discord_bruteforce_detailed(const Mat4 &rho, const BruteForceGrid &grid = {}) {
    if (grid.theta_points < 8 || grid.phi_points < 8)
        throw ConfigError("brute-force discord grid needs at least 8 points per axis");
    const double s_ab = von_neumann_entropy(rho);
    const double s_b = von_neumann_entropy(partial_trace_a(rho));

    const double pi = std::numbers::pi;
    const double h_theta = pi / (grid.theta_points - 1);
    const double h_phi = 2.0 * pi / grid.phi_points;

    double best = detail::measured_entropy_fast(rho, 0.0, 0.0);
    double theta = 0.0, phi = 0.0;
    for (int i = 0; i < grid.theta_points; ++i) {
        const double th = i * h_theta;
        for (int j = 0; j < grid.phi_points; ++j) {
            const double ph = j * h_phi;
            const double v = detail::measured_entropy_fast(rho, th, ph);
            if (v < best) {
                best = v;
                theta = th;
                phi = ph;
            }
        }
    }

    for (int it = 0; it < grid.max_iterations; ++it) {
        const double inner_tol = grid.angle_tol * 1e-2;
        auto along_theta = [&](double t) { return detail::measured_entropy_fast(rho, t, phi); };
        const auto mt = golden_section_minimize(along_theta, theta - h_theta, theta + h_theta, inner_tol);
        double moved = 0.0;
        if (mt.value < best) {
            moved = std::max(moved, std::abs(mt.x - theta));
            theta = mt.x;
            best = mt.value;
        }
        auto along_phi = [&](double p) { return detail::measured_entropy_fast(rho, theta, p); };
        const auto mp = golden_section_minimize(along_phi, phi - h_phi, phi + h_phi, inner_tol);
        if (mp.value < best) {
            moved = std::max(moved, std::abs(mp.x - phi));
            phi = mp.x;
            best = mp.value;
        }
        if (moved < grid.angle_tol) break;
    }

    const double d = std::max(0.0, s_b - s_ab + best);
    return {d, theta, phi, best};
}

inline double discord_bruteforce(const Mat4 &rho, const BruteForceGrid &grid = {}) {
    return discord_bruteforce_detailed(rho, grid).discord;
}

} // namespace tcq
