#pragma once

#include "tcq/correlations.hpp"
#include "tcq/dynamics.hpp"
#include "tcq/families.hpp"
#include "tcq/reduction.hpp"

namespace tcq {

/// Correlations of the reduced two-qubit state at one time.
struct CorrelationPoint {
    double tau = 0.0;
    double concurrence = 0.0;
    double discord = 0.0;
    double mutual_info = 0.0;
    double classical_corr = 0.0;
    DiscordBranch branch = DiscordBranch::Neither;
    bool chen_huang_valid = false;
};

/// Reduced two-qubit trajectory of a fixed initial manifold state.
class Trajectory {
  public:
    explicit Trajectory(ManifoldDensity initial) : initial_(std::move(initial)) {}
    explicit Trajectory(const FamilySpec &spec) : initial_(make_state(spec)) {}

    const ManifoldDensity &initial() const { return initial_; }
    ManifoldIndex manifold() const { return initial_.manifold(); }

    ManifoldDensity state(double tau) const { return evolve(initial_, tau); }
    TwoQubitX reduced(double tau) const { return partial_trace_field(state(tau)); }

    CorrelationPoint point(double tau) const {
        const TwoQubitX x = reduced(tau);
        const DiscordResult d = discord_x(x);
        CorrelationPoint p;
        p.tau = tau;
        p.concurrence = concurrence_x(x);
        p.discord = d.discord;
        p.mutual_info = d.mutual_info;
        p.classical_corr = d.classical_corr;
        p.branch = d.branch;
        p.chen_huang_valid = d.chen_huang_valid;
        return p;
    }

  private:
    ManifoldDensity initial_;
};

} // namespace tcq
