#pragma once

// Numerical detection of dynamical features over one period tau in [0, 1):
// entanglement sudden death (collapse/revival), slope discontinuities of the
// concurrence and of the discord, and the solver-backed critical alphas.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "tcq/correlations.hpp"
#include "tcq/error.hpp"
#include "tcq/families.hpp"
#include "tcq/roots.hpp"
#include "tcq/trajectory.hpp"

namespace tcq {

/// C is reported as zero when |rho_23| - sqrt(rho_11 rho_44) <= this.
inline constexpr double kZeroConcurrence = 1e-12;
inline constexpr double kFeatureTol = 1e-10;
inline constexpr int kMinResolution = 1000;
inline constexpr int kMinOrbitSamples = 100;

enum class KinkKind { ConcurrenceKink, DiscordBranchSwitch, DiscordEntropyMinSwitch };

inline std::string_view to_string(KinkKind k) {
    switch (k) {
    case KinkKind::ConcurrenceKink:
        return "concurrence_kink";
    case KinkKind::DiscordBranchSwitch:
        return "discord_branch_switch";
    case KinkKind::DiscordEntropyMinSwitch:
        break;
    }
    return "discord_entropy_min_switch";
}

/// For concurrence kinks, the population whose zero causes it.
enum class KinkOrigin { None, Rho11, Rho44 };

struct Kink {
    double tau;
    KinkKind kind;
    KinkOrigin origin = KinkOrigin::None;
};

struct FeatureReport {
    std::vector<double> collapse_times;
    std::vector<double> revival_times;
    std::vector<Kink> kinks;
    double tolerance = kFeatureTol;

    std::vector<double> kink_times(KinkKind kind) const {
        std::vector<double> out;
        for (const auto &k : kinks)
            if (k.kind == kind) out.push_back(k.tau);
        return out;
    }
};

namespace detail {

inline double wrap_unit(double tau) {
    double t = tau - std::floor(tau);
    return t >= 1.0 ? 0.0 : t;
}

inline void check_resolution(int resolution) {
    if (resolution < kMinResolution)
        throw ConfigError("feature detection needs at least " + std::to_string(kMinResolution) +
                          " samples per period, got " + std::to_string(resolution));
}

/// Zeros of sqrt(rho_ii(tau)) over one period, found as grid minima refined
/// by golden section. `index` is 0 for rho_11 and 3 for rho_44.
inline std::vector<double> population_zeros(const Trajectory &traj, int index, int resolution) {
    const double h = 1.0 / resolution;
    auto amp = [&](double tau) {
        const auto rho = traj.state(tau);
        return std::sqrt(std::max(0.0, rho(index, index).real()));
    };
    std::vector<double> a(resolution);
    for (int k = 0; k < resolution; ++k) a[k] = amp(k * h);

    std::vector<double> zeros;
    // An identically vanishing population makes sqrt(rho_11 rho_44) smooth.
    if (*std::max_element(a.begin(), a.end()) < 1e-12) return zeros;
    // A simple zero of the amplitude leaves a grid value of at most slope * h.
    const double candidate_cut = 50.0 * h;
    for (int k = 0; k < resolution; ++k) {
        const double prev = a[(k + resolution - 1) % resolution];
        const double next = a[(k + 1) % resolution];
        if (a[k] > candidate_cut || !(a[k] <= prev && a[k] <= next)) continue;
        const auto m = golden_section_minimize(amp, (k - 1) * h, (k + 1) * h, 1e-13, 300);
        if (m.value > 1e-7) continue;
        const double t = wrap_unit(m.x);
        bool dup = false;
        for (double z : zeros) {
            const double d = std::abs(z - t);
            if (std::min(d, 1.0 - d) < 1e-8) dup = true;
        }
        if (!dup) zeros.push_back(t);
    }
    return zeros;
}

inline double circular_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

} // namespace detail

/// Collapse (C drops to zero) and revival (C leaves zero) times in [0, 1).
inline FeatureReport find_collapse_revival(const Trajectory &traj, int resolution = 2000) {
    detail::check_resolution(resolution);
    const double h = 1.0 / resolution;
    auto margin = [&](double tau) { return traj.reduced(tau).entanglement_margin() - kZeroConcurrence; };

    std::vector<double> s(resolution + 1);
    for (int k = 0; k <= resolution; ++k) s[k] = margin(k * h);

    FeatureReport report;
    for (int k = 0; k < resolution; ++k) {
        const bool zero_here = s[k] <= 0.0;
        const bool zero_next = s[k + 1] <= 0.0;
        if (zero_here == zero_next) continue;
        // Bisect on the analytic margin, not on the clipped concurrence.
        const double root = detail::wrap_unit(bisect(margin, k * h, (k + 1) * h, 1e-13));
        (zero_next ? report.collapse_times : report.revival_times).push_back(root);
    }
    std::sort(report.collapse_times.begin(), report.collapse_times.end());
    std::sort(report.revival_times.begin(), report.revival_times.end());
    return report;
}

inline FeatureReport find_collapse_revival(const FamilySpec &spec, int resolution = 2000) {
    return find_collapse_revival(Trajectory(spec), resolution);
}

/// Slope discontinuities of C and of the discord over one period.
///
/// Concurrence kinks sit where exactly one of rho_11, rho_44 vanishes while
/// C > 0; when both vanish together sqrt(rho_11 rho_44) is smooth and no kink
/// is reported. Discord kinks are sign changes of D_z - D_x (the minimizing
/// measurement switches), plus any remaining slope jump picked up by a
/// second-difference scan.
inline FeatureReport find_kinks(const Trajectory &traj, int resolution = 2000) {
    detail::check_resolution(resolution);
    const double h = 1.0 / resolution;
    FeatureReport report;

    // Concurrence.
    const auto z11 = detail::population_zeros(traj, 0, resolution);
    const auto z44 = detail::population_zeros(traj, 3, resolution);
    auto add_population_kinks = [&](const std::vector<double> &zs, const std::vector<double> &other, KinkOrigin o) {
        for (double t : zs) {
            bool merged = false;
            for (double u : other)
                if (detail::circular_distance(t, u) < 1e-7) merged = true;
            if (merged) continue;
            if (traj.reduced(t).entanglement_margin() <= kZeroConcurrence) continue;
            report.kinks.push_back({t, KinkKind::ConcurrenceKink, o});
        }
    };
    add_population_kinks(z11, z44, KinkOrigin::Rho11);
    add_population_kinks(z44, z11, KinkOrigin::Rho44);

    // Discord branch switches.
    std::vector<DiscordResult> grid(resolution + 1);
    for (int k = 0; k <= resolution; ++k) grid[k] = discord_x(traj.reduced(k * h));
    auto gap = [&](double tau) {
        const auto d = discord_x(traj.reduced(tau));
        return d.discord_sigma_z - d.discord_sigma_x;
    };
    constexpr double sign_floor = 1e-13;
    auto sign_of = [&](double v) { return v > sign_floor ? 1 : (v < -sign_floor ? -1 : 0); };
    std::vector<double> switches;
    int last_sign = 0;
    int last_index = 0;
    for (int k = 0; k <= resolution; ++k) {
        const int sg = sign_of(grid[k].discord_sigma_z - grid[k].discord_sigma_x);
        if (sg == 0) continue;
        if (last_sign != 0 && sg != last_sign) {
            const double t = detail::wrap_unit(bisect(gap, last_index * h, k * h, 1e-13));
            switches.push_back(t);
            report.kinks.push_back({t, KinkKind::DiscordBranchSwitch});
        }
        last_sign = sg;
        last_index = k;
    }

    // Remaining discord slope jumps: a kink of slope jump J makes the second
    // difference O(J h) against O(D'' h^2) for smooth stretches.
    auto discord_at = [&](double tau) { return discord_x(traj.reduced(tau)).discord; };
    auto second_diff = [&](int k) {
        auto val = [&](int i) { return grid[(i % resolution + resolution) % resolution].discord; };
        return std::abs(val(k + 1) - 2.0 * val(k) + val(k - 1));
    };
    for (int k = 0; k < resolution; ++k) {
        const double d2 = second_diff(k);
        const double scale = std::max(second_diff(k - 3), second_diff(k + 3));
        if (d2 < 1e-9 || d2 <= 10.0 * scale) continue;
        if (d2 < second_diff(k - 1) || d2 < second_diff(k + 1)) continue;
        bool near_switch = false;
        for (double t : switches)
            if (detail::circular_distance(t, k * h) < 4.0 * h) near_switch = true;
        if (near_switch) continue;

        // Zoom on the largest second difference until the window is tiny.
        double centre = k * h;
        double width = 2.0 * h;
        while (width > 1e-10) {
            constexpr int m = 40;
            const double step = width / m;
            double best = -1.0;
            double best_t = centre;
            for (int i = 1; i < m; ++i) {
                const double t = centre - 0.5 * width + i * step;
                const double v = std::abs(discord_at(t + step) - 2.0 * discord_at(t) + discord_at(t - step));
                if (v > best) {
                    best = v;
                    best_t = t;
                }
            }
            centre = best_t;
            width /= 10.0;
        }
        // Genuine slope jump: one-sided slopes differ by a resolution-independent amount.
        auto jump = [&](double eps) {
            const double d0 = discord_at(centre);
            return (discord_at(centre + eps) - d0) / eps - (d0 - discord_at(centre - eps)) / eps;
        };
        const double j_fine = std::abs(jump(1e-7));
        const double j_coarse = std::abs(jump(1e-5));
        if (j_fine > 1e-4 && j_fine > 0.5 * j_coarse)
            report.kinks.push_back({detail::wrap_unit(centre), KinkKind::DiscordEntropyMinSwitch});
    }

    std::sort(report.kinks.begin(), report.kinks.end(), [](const Kink &a, const Kink &b) { return a.tau < b.tau; });
    return report;
}

inline FeatureReport find_kinks(const FamilySpec &spec, int resolution = 2000) {
    return find_kinks(Trajectory(spec), resolution);
}

/// Collapse/revival times and kinks together.
inline FeatureReport find_features(const FamilySpec &spec, int resolution = 2000) {
    const Trajectory traj(spec);
    FeatureReport report = find_collapse_revival(traj, resolution);
    report.kinks = find_kinks(traj, resolution).kinks;
    return report;
}

/// How closely discord kinks accompany sudden death: for each collapse the
/// delay until the next discord kink, and for each revival the lead of the
/// last discord kink before it. Circular in tau; empty without discord kinks.
struct EsdKinkLags {
    std::vector<double> after_collapse;
    std::vector<double> before_revival;
};

inline EsdKinkLags esd_kink_lags(const FeatureReport &report) {
    std::vector<double> kinks;
    for (const auto &k : report.kinks)
        if (k.kind != KinkKind::ConcurrenceKink) kinks.push_back(k.tau);
    EsdKinkLags lags;
    if (kinks.empty()) return lags;
    auto forward = [](double from, double to) { return detail::wrap_unit(to - from); };
    for (double t : report.collapse_times) {
        double best = 1.0;
        for (double k : kinks) best = std::min(best, forward(t, k));
        lags.after_collapse.push_back(best);
    }
    for (double t : report.revival_times) {
        double best = 1.0;
        for (double k : kinks) best = std::min(best, forward(k, t));
        lags.before_revival.push_back(best);
    }
    return lags;
}

// ---------------------------------------------------------------------------
// Solver-backed critical alphas

struct ZeroDiscordSolution {
    double alpha;
    /// Largest discord over the sampled orbit at `alpha`.
    double max_discord;
    /// Whether the sigma_z optimality condition held at every sampled time.
    bool sigma_z_condition_on_orbit;
};

/// Largest discord over a uniform tau grid for the phi- family.
inline double max_orbit_discord(Family family, double alpha, ManifoldIndex n, int tau_points = 2000) {
    if (tau_points < kMinOrbitSamples)
        throw ConfigError("orbit scan needs at least " + std::to_string(kMinOrbitSamples) + " samples per period");
    const Trajectory traj(FamilySpec(family, alpha, n));
    double m = 0.0;
    for (int k = 0; k < tau_points; ++k) m = std::max(m, discord_x(traj.reduced(double(k) / tau_points)).discord);
    return m;
}

/// alpha in (1/sqrt 2, 1) for which the phi- orbit has zero discord at all
/// times. Throws SolverFailure if the best orbit still carries discord.
inline ZeroDiscordSolution solve_alpha_zero_discord(ManifoldIndex n, int tau_points = 2000) {
    auto objective = [&](double a) { return max_orbit_discord(Family::PhiMinus, a, n, tau_points); };
    const double lo = 1.0 / std::numbers::sqrt2;
    const double hi = 1.0;
    constexpr int coarse = 40;
    const double step = (hi - lo) / coarse;
    int best = 1;
    double best_val = objective(lo + step);
    for (int i = 2; i < coarse; ++i) {
        const double v = objective(lo + i * step);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const auto m = golden_section_minimize(objective, lo + (best - 1) * step, lo + (best + 1) * step, 1e-8, 200);

    ZeroDiscordSolution sol{m.x, m.value, true};
    if (sol.max_discord >= 1e-6)
        throw SolverFailure("alpha-0 solver: orbit discord " + std::to_string(sol.max_discord) + " at alpha " +
                            std::to_string(sol.alpha) + " is not zero");
    const Trajectory traj(FamilySpec(Family::PhiMinus, sol.alpha, n));
    for (int k = 0; k < tau_points; ++k)
        if (!discord_x(traj.reduced(double(k) / tau_points)).sigma_z_condition) sol.sigma_z_condition_on_orbit = false;
    return sol;
}

struct PlateauSolution {
    double alpha;
    /// max - min of the discord over the window at `alpha`.
    double flatness;
    double discord_at_quarter;
    /// |D(1/4) - alpha| <= 0.01.
    bool self_consistent;
};

struct PlateauOptions {
    double half_width = 0.02;
    int window_samples = 201;
    int alpha_grid = 400;
};

/// Spread of the Ali-family discord over tau in [1/4 - w, 1/4 + w].
inline double plateau_flatness(double alpha, ManifoldIndex n, const PlateauOptions &opt = {}) {
    const Trajectory traj(FamilySpec(Family::Ali, alpha, n));
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < opt.window_samples; ++i) {
        const double tau = 0.25 - opt.half_width + 2.0 * opt.half_width * i / (opt.window_samples - 1);
        const double d = discord_x(traj.reduced(tau)).discord;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi - lo;
}

/// Ali-family alpha whose discord is flat around tau = 1/4.
inline PlateauSolution solve_alpha_plateau(ManifoldIndex n, const PlateauOptions &opt = {}) {
    if (!(opt.half_width > 0.0 && opt.half_width < 0.25)) throw ConfigError("plateau half-width must lie in (0, 1/4)");
    if (opt.window_samples < 3 || opt.alpha_grid < 10) throw ConfigError("plateau sampling too coarse");
    auto objective = [&](double a) { return plateau_flatness(a, n, opt); };

    const int m = opt.alpha_grid;
    std::vector<double> f(m + 1);
    for (int j = 1; j < m; ++j) f[j] = objective(double(j) / m);
    f[0] = f[m] = 1e300; // endpoints excluded

    int best = 1;
    for (int j = 2; j < m; ++j)
        if (f[j] < f[best]) best = j;
    for (int j = 1; j < m; ++j) {
        if (std::abs(j - best) <= 2) continue;
        const bool local_min = f[j] <= f[j - 1] && f[j] <= f[j + 1];
        if (local_min && f[j] <= 2.0 * f[best] + 1e-9)
            throw AmbiguityError("alpha-plateau: competing minima near alpha " + std::to_string(double(best) / m) +
                                 " and " + std::to_string(double(j) / m));
    }

    const auto r = golden_section_minimize(objective, double(best - 1) / m, double(best + 1) / m, 1e-6, 200);
    PlateauSolution sol{r.x, r.value, 0.0, false};
    sol.discord_at_quarter = Trajectory(FamilySpec(Family::Ali, sol.alpha, n)).point(0.25).discord;
    sol.self_consistent = std::abs(sol.discord_at_quarter - sol.alpha) <= 0.01;
    return sol;
}

inline double critical_alpha(CriticalAlphaKind kind, ManifoldIndex n) {
    switch (kind) {
    case CriticalAlphaKind::AlphaZeroDiscord:
        return solve_alpha_zero_discord(n).alpha;
    case CriticalAlphaKind::AlphaPlateau:
        return solve_alpha_plateau(n).alpha;
    default:
        return critical_alpha_closed_form(kind, n);
    }
}

} // namespace tcq
