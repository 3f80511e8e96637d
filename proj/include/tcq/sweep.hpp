#pragma once

// Parameter sweeps over (alpha, n, tau), the discord-gate schedule, and
// CSV/JSON serialization of the resulting tables.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcq/error.hpp"
#include "tcq/families.hpp"
#include "tcq/features.hpp"
#include "tcq/trajectory.hpp"

namespace tcq {

enum class OutputFormat { Csv, Json };

struct SweepRow {
    Family family;
    double alpha;
    std::int64_t n;
    CorrelationPoint point;
};

using Dataset = std::vector<SweepRow>;

struct SweepConfig {
    Family family = Family::PsiPlus;
    std::vector<double> alphas;
    std::vector<std::int64_t> manifolds{1};
    int tau_points = 2000;

    void validate() const {
        if (alphas.empty()) throw ConfigError("sweep: no alpha values");
        if (manifolds.empty()) throw ConfigError("sweep: no manifold values");
        if (tau_points < 2) throw ConfigError("sweep: tau-points must be >= 2");
        for (double a : alphas)
            if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("sweep: alpha outside [0, 1]: " + std::to_string(a));
        for (auto n : manifolds)
            if (n < 1) throw ConfigError("sweep: manifold index must be >= 1");
    }
};

/// `count` evenly spaced values from `start` to `stop` inclusive.
inline std::vector<double> linspace(double start, double stop, int count) {
    if (count < 2) throw ConfigError("alpha range needs at least 2 points");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = start + (stop - start) * i / (count - 1);
    out.back() = stop;
    return out;
}

/// Worker count: TC_CORR_THREADS if set and positive, else hardware threads.
inline unsigned worker_count() {
    if (const char *env = std::getenv("TC_CORR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Rows ordered by (alpha, n, tau) regardless of how work is scheduled.
inline Dataset run_sweep(const SweepConfig &cfg) {
    cfg.validate();
    const std::size_t jobs = cfg.alphas.size() * cfg.manifolds.size();
    std::vector<Dataset> parts(jobs);

    auto run_job = [&](std::size_t j) {
        const double alpha = cfg.alphas[j / cfg.manifolds.size()];
        const std::int64_t n = cfg.manifolds[j % cfg.manifolds.size()];
        const Trajectory traj(FamilySpec(cfg.family, alpha, n));
        Dataset &out = parts[j];
        out.reserve(cfg.tau_points);
        for (int k = 0; k < cfg.tau_points; ++k)
            out.push_back({cfg.family, alpha, n, traj.point(double(k) / cfg.tau_points)});
    };

    const unsigned workers = std::min<std::size_t>(worker_count(), jobs);
    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs; ++j) run_job(j);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t j = w; j < jobs; j += workers) run_job(j);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto &t : pool) t.join();
        for (auto &e : errors)
            if (e) std::rethrow_exception(e);
    }

    Dataset rows;
    rows.reserve(jobs * cfg.tau_points);
    for (auto &p : parts) rows.insert(rows.end(), p.begin(), p.end());
    return rows;
}

// ---------------------------------------------------------------------------
// Discord gate

struct GateSegment {
    std::int64_t n;
    int periods;
};

enum class GateAlphaPolicy { FixedAlphaZeroOfFirstN };

struct GateSchedule {
    std::vector<GateSegment> segments;
    GateAlphaPolicy policy = GateAlphaPolicy::FixedAlphaZeroOfFirstN;

    void validate() const {
        if (segments.empty()) throw ConfigError("gate: empty schedule");
        for (const auto &s : segments) {
            if (s.n < 1) throw ConfigError("gate: manifold index must be >= 1");
            if (s.periods < 1) throw ConfigError("gate: segment duration must be a whole number of periods >= 1");
        }
    }
};

struct GateResult {
    double alpha;
    Dataset rows;
    std::vector<double> segment_max_discord;
};

/// Evolves the phi- state through the schedule. Each segment runs whole
/// periods in its own manifold; at a boundary the 4x4 amplitudes are carried
/// over unchanged into the next manifold's basis. Segment times are in units
/// of that segment's t_R.
inline GateResult run_gate(const GateSchedule &schedule, int tau_points = 2000) {
    schedule.validate();
    if (tau_points < 2) throw ConfigError("gate: tau-points must be >= 2");
    const ManifoldIndex first(schedule.segments.front().n);
    GateResult result;
    result.alpha = solve_alpha_zero_discord(first).alpha;

    ManifoldDensity state = make_state(FamilySpec(Family::PhiMinus, result.alpha, first));
    double offset = 0.0;
    for (const auto &seg : schedule.segments) {
        const Trajectory traj(state.with_manifold(ManifoldIndex(seg.n)));
        double seg_max = 0.0;
        const int samples = seg.periods * tau_points;
        for (int k = 0; k < samples; ++k) {
            const double local = double(k) / tau_points;
            CorrelationPoint p = traj.point(local);
            seg_max = std::max(seg_max, p.discord);
            p.tau = offset + local;
            result.rows.push_back({Family::PhiMinus, result.alpha, seg.n, p});
        }
        result.segment_max_discord.push_back(seg_max);
        state = traj.state(seg.periods);
        offset += seg.periods;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Serialization

inline constexpr const char *kCsvHeader =
    "family,alpha,n,tau,concurrence,discord,branch,chen_huang_valid,mutual_info,classical_corr";

/// %.12g, with negative zero folded to zero.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
    return buf;
}

inline double round_significant(double v) { return std::stod(format_number(v)); }

inline void write_csv(std::ostream &os, const Dataset &rows) {
    os << kCsvHeader << '\n';
    for (const auto &r : rows) {
        const auto &p = r.point;
        os << to_string(r.family) << ',' << format_number(r.alpha) << ',' << r.n << ',' << format_number(p.tau) << ','
           << format_number(p.concurrence) << ',' << format_number(p.discord) << ',' << to_string(p.branch) << ','
           << (p.chen_huang_valid ? "true" : "false") << ',' << format_number(p.mutual_info) << ','
           << format_number(p.classical_corr) << '\n';
    }
}

inline nlohmann::ordered_json to_json(const SweepRow &r) {
    const auto &p = r.point;
    nlohmann::ordered_json j;
    j["family"] = std::string(to_string(r.family));
    j["alpha"] = round_significant(r.alpha);
    j["n"] = r.n;
    j["tau"] = round_significant(p.tau);
    j["concurrence"] = round_significant(p.concurrence);
    j["discord"] = round_significant(p.discord);
    j["branch"] = std::string(to_string(p.branch));
    j["chen_huang_valid"] = p.chen_huang_valid;
    j["mutual_info"] = round_significant(p.mutual_info);
    j["classical_corr"] = round_significant(p.classical_corr);
    return j;
}

inline void write_json(std::ostream &os, const Dataset &rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
}

inline void emit(std::ostream &os, const Dataset &rows, OutputFormat format) {
    if (rows.empty()) throw InputError("refusing to emit an empty dataset");
    if (format == OutputFormat::Csv)
        write_csv(os, rows);
    else
        write_json(os, rows);
}

inline void emit(const std::string &path, const Dataset &rows, OutputFormat format) {
    if (rows.empty()) throw InputError("refusing to emit an empty dataset");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file '" + path + "'");
    emit(out, rows, format);
    out.flush();
    if (!out) throw InputError("write to '" + path + "' failed");
}

/// Feature report as JSON.
inline nlohmann::ordered_json to_json(const FamilySpec &spec, const FeatureReport &rep) {
    nlohmann::ordered_json j;
    j["family"] = std::string(to_string(spec.family));
    j["alpha"] = round_significant(spec.alpha);
    j["n"] = spec.manifold.value();
    j["tolerance"] = rep.tolerance;
    auto times = [](const std::vector<double> &v) {
        auto a = nlohmann::ordered_json::array();
        for (double t : v) a.push_back(round_significant(t));
        return a;
    };
    j["collapse_times"] = times(rep.collapse_times);
    j["revival_times"] = times(rep.revival_times);
    auto kinks = nlohmann::ordered_json::array();
    for (const auto &k : rep.kinks) {
        nlohmann::ordered_json kj;
        kj["tau"] = round_significant(k.tau);
        kj["kind"] = std::string(to_string(k.kind));
        kj["origin"] = k.origin == KinkOrigin::Rho11 ? "rho11" : (k.origin == KinkOrigin::Rho44 ? "rho44" : "none");
        kinks.push_back(kj);
    }
    j["kinks"] = kinks;
    const auto lags = esd_kink_lags(rep);
    j["discord_kink_after_collapse"] = times(lags.after_collapse);
    j["discord_kink_before_revival"] = times(lags.before_revival);
    return j;
}

inline constexpr const char *kFeatureCsvHeader = "family,alpha,n,event,tau";

/// Feature report as CSV, one event per row, ordered by tau.
inline void write_features_csv(std::ostream &os, const FamilySpec &spec, const FeatureReport &rep) {
    struct Event {
        double tau;
        std::string name;
    };
    std::vector<Event> events;
    for (double t : rep.collapse_times) events.push_back({t, "collapse"});
    for (double t : rep.revival_times) events.push_back({t, "revival"});
    for (const auto &k : rep.kinks) events.push_back({k.tau, std::string(to_string(k.kind))});
    std::stable_sort(events.begin(), events.end(), [](const Event &a, const Event &b) { return a.tau < b.tau; });
    os << kFeatureCsvHeader << '\n';
    for (const auto &e : events)
        os << to_string(spec.family) << ',' << format_number(spec.alpha) << ',' << spec.manifold.value() << ','
           << e.name << ',' << format_number(e.tau) << '\n';
}

} // namespace tcq
