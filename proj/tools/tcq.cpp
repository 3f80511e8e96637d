// tcq: command-line front end for the Tavis-Cummings correlation library.
//
//   tcq sweep          --family psi+ --alpha-range 0:0.7071:3 --n 1 --out fig.csv
//   tcq features       --family phi+ --alpha 0 --n 1 --format json
//   tcq critical-alpha --kind alpha-0 --n 1
//   tcq gate           --schedule 1:1,2:1,1:1 --out gate.csv
//
// Any subcommand accepts --config FILE with `key = value` lines using the
// long flag names; flags given on the command line win.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "tcq/tcq.hpp"

namespace {

using tcq::ConfigError;

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string &s, const char *what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw ConfigError(std::string("cannot parse ") + what + " from '" + s + "'");
    }
}

std::int64_t parse_int(const std::string &s, const char *what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw ConfigError(std::string("cannot parse ") + what + " from '" + s + "'");
    }
}

/// Splices `key = value` lines from a config file into the argument list,
/// skipping keys already given as flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw ConfigError("--config needs a file name");
    const std::string path = *(it + 1);
    args.erase(it, it + 2);

    std::set<std::string> given;
    for (const auto &a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
        const std::string key = "--" + trim(line.substr(0, eq));
        if (given.count(key)) continue;
        extra.push_back(key);
        extra.push_back(trim(line.substr(eq + 1)));
    }
    // Options go right after the subcommand name.
    const auto pos = args.empty() ? args.end() : args.begin() + 1;
    args.insert(pos, extra.begin(), extra.end());
    return args;
}

tcq::Family family_from(const std::string &s) {
    if (auto f = tcq::parse_family(s)) return *f;
    throw ConfigError("unknown family '" + s + "' (psi+, psi-, phi+, phi-, werner, ali)");
}

tcq::OutputFormat format_from(const std::string &s) {
    if (s == "csv") return tcq::OutputFormat::Csv;
    if (s == "json") return tcq::OutputFormat::Json;
    throw ConfigError("unknown format '" + s + "' (csv, json)");
}

std::vector<std::int64_t> manifolds_from(const std::vector<std::string> &raw) {
    std::vector<std::int64_t> out;
    for (const auto &r : raw)
        for (const auto &p : split(r, ','))
            if (!p.empty()) out.push_back(parse_int(p, "--n"));
    if (out.empty()) out.push_back(1);
    return out;
}

std::vector<double> alphas_from(const std::vector<std::string> &raw, const std::string &range) {
    std::vector<double> out;
    for (const auto &r : raw)
        for (const auto &p : split(r, ','))
            if (!p.empty()) out.push_back(parse_double(p, "--alpha"));
    if (!range.empty()) {
        const auto parts = split(range, ':');
        if (parts.size() != 3) throw ConfigError("--alpha-range expects a:b:k");
        const auto vals = tcq::linspace(parse_double(parts[0], "--alpha-range"), parse_double(parts[1], "--alpha-range"),
                                        static_cast<int>(parse_int(parts[2], "--alpha-range")));
        out.insert(out.end(), vals.begin(), vals.end());
    }
    return out;
}

/// Writes `text` to `path`, or stdout for "-".
void write_text(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tcq::InputError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw tcq::InputError("write to '" + path + "' failed");
}

std::string render(const tcq::Dataset &rows, tcq::OutputFormat fmt) {
    std::ostringstream os;
    tcq::emit(os, rows, fmt);
    return os.str();
}

struct CommonOptions {
    std::string family = "psi+";
    std::vector<std::string> alpha;
    std::string alpha_range;
    std::vector<std::string> n;
    int tau_points = 2000;
    std::string out = "-";
    std::string format = "csv";
    double plateau_window = 0.02;
    int grid_theta = 180;
    int grid_phi = 360;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--family", o.family, "psi+, psi-, phi+, phi-, werner or ali");
    cmd->add_option("--alpha", o.alpha, "alpha value(s), comma separated or repeated");
    cmd->add_option("--alpha-range", o.alpha_range, "evenly spaced alphas a:b:k");
    cmd->add_option("--n", o.n, "manifold index list, comma separated");
    cmd->add_option("--tau-points", o.tau_points, "samples per period");
    cmd->add_option("--out", o.out, "output path, - for stdout");
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--plateau-window", o.plateau_window, "plateau half-width around tau = 1/4");
    cmd->add_option("--grid-theta", o.grid_theta, "brute-force discord grid, polar points");
    cmd->add_option("--grid-phi", o.grid_phi, "brute-force discord grid, azimuthal points");
}

int run_sweep_cmd(const CommonOptions &o) {
    tcq::SweepConfig cfg;
    cfg.family = family_from(o.family);
    cfg.alphas = alphas_from(o.alpha, o.alpha_range);
    cfg.manifolds = manifolds_from(o.n);
    cfg.tau_points = o.tau_points;
    write_text(o.out, render(tcq::run_sweep(cfg), format_from(o.format)));
    return 0;
}

int run_features_cmd(const CommonOptions &o, bool oracle) {
    const auto family = family_from(o.family);
    const auto alphas = alphas_from(o.alpha, o.alpha_range);
    if (alphas.empty()) throw ConfigError("features: give --alpha or --alpha-range");
    const auto fmt = format_from(o.format);
    std::ostringstream os;
    auto arr = nlohmann::ordered_json::array();
    bool header_done = false;
    for (double a : alphas)
        for (auto n : manifolds_from(o.n)) {
            const tcq::FamilySpec spec(family, a, n);
            const auto rep = tcq::find_features(spec, o.tau_points);
            if (fmt == tcq::OutputFormat::Json) {
                auto j = tcq::to_json(spec, rep);
                if (oracle) {
                    // Largest |closed-form - brute force| discord gap on the orbit.
                    const tcq::Trajectory traj(spec);
                    const tcq::BruteForceGrid grid{o.grid_theta, o.grid_phi};
                    double gap = 0.0;
                    const int stride = std::max(1, o.tau_points / 100);
                    for (int k = 0; k < o.tau_points; k += stride) {
                        const auto x = traj.reduced(double(k) / o.tau_points);
                        gap = std::max(gap, std::abs(tcq::discord_x(x).discord -
                                                     tcq::discord_bruteforce(x.to_dense(), grid)));
                    }
                    j["oracle_max_gap"] = tcq::round_significant(gap);
                }
                arr.push_back(j);
            } else {
                std::ostringstream part;
                tcq::write_features_csv(part, spec, rep);
                std::string s = part.str();
                if (header_done) s = s.substr(s.find('\n') + 1);
                header_done = true;
                os << s;
            }
        }
    if (fmt == tcq::OutputFormat::Json) os << arr.dump(2) << '\n';
    write_text(o.out, os.str());
    return 0;
}

int run_critical_cmd(const CommonOptions &o, const std::string &kind_name) {
    const auto kind = tcq::parse_critical_alpha_kind(kind_name);
    if (!kind)
        throw ConfigError("unknown kind '" + kind_name +
                          "' (alpha-b, alpha-c, alpha-1, alpha-a, alpha-0, alpha-plateau)");
    const auto fmt = format_from(o.format);
    std::ostringstream os;
    if (fmt == tcq::OutputFormat::Csv) os << "kind,n,alpha\n";
    auto arr = nlohmann::ordered_json::array();
    for (auto nv : manifolds_from(o.n)) {
        const tcq::ManifoldIndex n(nv);
        nlohmann::ordered_json j;
        j["kind"] = std::string(tcq::to_string(*kind));
        j["n"] = nv;
        double alpha = 0.0;
        if (*kind == tcq::CriticalAlphaKind::AlphaZeroDiscord) {
            const auto sol = tcq::solve_alpha_zero_discord(n, o.tau_points);
            alpha = sol.alpha;
            j["max_discord"] = sol.max_discord;
            j["sigma_z_condition_on_orbit"] = sol.sigma_z_condition_on_orbit;
        } else if (*kind == tcq::CriticalAlphaKind::AlphaPlateau) {
            tcq::PlateauOptions opt;
            opt.half_width = o.plateau_window;
            const auto sol = tcq::solve_alpha_plateau(n, opt);
            alpha = sol.alpha;
            j["flatness"] = sol.flatness;
            j["discord_at_quarter"] = tcq::round_significant(sol.discord_at_quarter);
            j["self_consistent"] = sol.self_consistent;
        } else {
            alpha = tcq::critical_alpha_closed_form(*kind, n);
        }
        j["alpha"] = tcq::round_significant(alpha);
        if (fmt == tcq::OutputFormat::Csv)
            os << kind_name << ',' << nv << ',' << tcq::format_number(alpha) << '\n';
        arr.push_back(j);
    }
    if (fmt == tcq::OutputFormat::Json) os << arr.dump(2) << '\n';
    write_text(o.out, os.str());
    return 0;
}

tcq::GateSchedule schedule_from(const std::string &text) {
    tcq::GateSchedule s;
    for (const auto &seg : split(text, ',')) {
        if (seg.empty()) continue;
        const auto parts = split(seg, ':');
        if (parts.size() > 2) throw ConfigError("gate segment '" + seg + "' is not n[:periods]");
        const auto n = parse_int(parts[0], "--schedule");
        const auto periods = parts.size() == 2 ? parse_int(parts[1], "--schedule") : 1;
        s.segments.push_back({n, static_cast<int>(periods)});
    }
    return s;
}

int run_gate_cmd(const CommonOptions &o, const std::string &schedule_text) {
    const auto result = tcq::run_gate(schedule_from(schedule_text), o.tau_points);
    write_text(o.out, render(result.rows, format_from(o.format)));
    std::cerr << "alpha_0 = " << tcq::format_number(result.alpha) << "; per-segment max discord:";
    for (double d : result.segment_max_discord) std::cerr << ' ' << tcq::format_number(d);
    std::cerr << '\n';
    return 0;
}

void report_error(const char *category, const std::string &message) {
    nlohmann::json j;
    j["error"] = category;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement and quantum discord in the exact Tavis-Cummings model"};
    app.require_subcommand(1);

    CommonOptions sweep_opts, feature_opts, critical_opts, gate_opts;
    auto *sweep = app.add_subcommand("sweep", "correlation table over (alpha, n, tau)");
    add_common(sweep, sweep_opts);

    auto *features = app.add_subcommand("features", "collapse/revival times and kinks of a family member");
    add_common(features, feature_opts);
    bool oracle = false;
    features->add_flag("--oracle", oracle, "also report the brute-force discord gap on the orbit (json only)");

    auto *critical = app.add_subcommand("critical-alpha", "critical alpha values");
    add_common(critical, critical_opts);
    std::string kind;
    critical->add_option("--kind", kind, "alpha-b, alpha-c, alpha-1, alpha-a, alpha-0, alpha-plateau")->required();

    auto *gate = app.add_subcommand("gate", "discord-gate schedule for the phi- family");
    add_common(gate, gate_opts);
    std::string schedule = "1:1,2:1,1:1";
    gate->add_option("--schedule", schedule, "segments n[:periods], comma separated");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const tcq::Error &e) {
        report_error(e.category(), e.what());
        return 1;
    }

    try {
        if (*sweep) return run_sweep_cmd(sweep_opts);
        if (*features) return run_features_cmd(feature_opts, oracle);
        if (*critical) return run_critical_cmd(critical_opts, kind);
        if (*gate) return run_gate_cmd(gate_opts, schedule);
    } catch (const tcq::SolverFailure &e) {
        report_error(e.category(), e.what());
        return 2;
    } catch (const tcq::AmbiguityError &e) {
        report_error(e.category(), e.what());
        return 2;
    } catch (const tcq::Error &e) {
        report_error(e.category(), e.what());
        return 1;
    }
    return 0;
}
