#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace tcq;
using namespace tcq::testing;

namespace {

double h2(double p) {
    double s = 0.0;
    for (double q : {p, 1.0 - p})
        if (q > 0.0) s -= q * std::log2(q);
    return s;
}

// Conditional entropy of A after measuring sigma_z on B: outcome 0 leaves
// A diagonal with weights (r11, r33), outcome 1 with (r22, r44).
double cond_entropy_sigma_z(const TwoQubitX &x) {
    double s = 0.0;
    for (auto [a, b] : {std::pair{x.r11(), x.r33()}, std::pair{x.r22(), x.r44()}}) {
        const double p = a + b;
        if (p > 0.0) s += p * h2(a / p);
    }
    return s;
}

// After measuring sigma_x on B each outcome has probability 1/2 and leaves A
// with populations (r11 + r22, r33 + r44) and coherence +-r23.
double cond_entropy_sigma_x(const TwoQubitX &x) {
    const double z = x.r11() + x.r22() - x.r33() - x.r44();
    const double r = std::sqrt(z * z + 4.0 * std::norm(x.r23()));
    return h2(0.5 * (1.0 + r));
}

Mat4 werner(double a) { return a * bell_psi_minus() + (1.0 - a) * 0.25 * Mat4::Identity(); }

TwoQubitX as_x(const Mat4 &m) {
    return TwoQubitX(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(1, 2));
}

const BruteForceGrid kCoarse{36, 72, 1e-7, 200};

} // namespace

TEST(Concurrence, WernerHalf) {
    const auto x = as_x(werner(0.5));
    EXPECT_NEAR(concurrence_x(x), 0.25, 1e-12);
    EXPECT_NEAR(concurrence_wootters(werner(0.5)), 0.25, 1e-12);
}

TEST(Concurrence, BellAndProduct) {
    EXPECT_NEAR(concurrence_x(as_x(bell_psi_plus())), 1.0, 1e-14);
    EXPECT_NEAR(concurrence_x(TwoQubitX(1.0, 0.0, 0.0, 0.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(concurrence_x(TwoQubitX(0.25, 0.25, 0.25, 0.25, 0.0)), 0.0, 1e-15);
}

TEST(Concurrence, ClosedFormAgreesWithWootters) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto x = random_x_state(rng);
        EXPECT_NEAR(concurrence_x(x), concurrence_wootters(x.to_dense()), 1e-9);
    }
}

TEST(Concurrence, WoottersInvariantUnderLocalUnitaries) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat4 rho = random_density(rng);
        const Mat4 u = kron(random_unitary2(rng), random_unitary2(rng));
        const Mat4 rotated = hermitian_part<4>(Mat4(u * rho * u.adjoint()));
        EXPECT_NEAR(concurrence_wootters(rotated), concurrence_wootters(rho), 1e-9);
    }
}

TEST(Discord, WernerHalfReference) {
    // (1-a)log(1-a) + (1+3a)log(1+3a) - 2(1+a)log(1+a), over 4, at a = 1/2.
    const double expected = 0.25 * (0.5 * std::log2(0.5) + 2.5 * std::log2(2.5) - 3.0 * std::log2(1.5));
    EXPECT_NEAR(discord_x(as_x(werner(0.5))).discord, expected, 1e-12);
}

TEST(Discord, PsiPlusInitialValue) {
    const double a = 0.2, a2 = a * a;
    const auto x = partial_trace_field(make_state(FamilySpec(Family::PsiPlus, a, 1)));
    const double expected = -(1.0 - a2) * std::log2(1.0 - a2) - a2 * std::log2(a2);
    EXPECT_NEAR(expected, 0.2423, 5e-5);
    EXPECT_NEAR(discord_x(x).discord, expected, 1e-12);
}

TEST(Discord, BranchValuesMatchClosedFormConditionalEntropies) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = random_x_state(rng);
        const Mat4 rho = x.to_dense();
        const double base = von_neumann_entropy(partial_trace_a(rho)) - von_neumann_entropy(rho);
        const auto d = discord_x(x);
        EXPECT_NEAR(d.discord_sigma_z, base + cond_entropy_sigma_z(x), 1e-10);
        EXPECT_NEAR(d.discord_sigma_x, base + cond_entropy_sigma_x(x), 1e-10);
    }
}

TEST(Discord, MeasuredEntropyRoutesAgree) {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 300; ++trial) {
        const Mat4 rho = random_density(rng);
        const double t = th(rng), p = ph(rng);
        EXPECT_NEAR(detail::measured_entropy_fast(rho, t, p),
                    conditional_entropy_measured(rho, MeasurementBasis::bloch(t, p)), 1e-10);
    }
}

TEST(Discord, BoundsAndIdentities) {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = random_x_state(rng);
        const auto d = discord_x(x);
        EXPECT_GE(d.discord, 0.0);
        EXPECT_LE(d.discord, d.mutual_info + 1e-12);
        EXPECT_NEAR(d.mutual_info, d.discord + d.classical_corr, 1e-12);
        EXPECT_LE(d.discord, std::min(d.discord_sigma_z, d.discord_sigma_x) + 1e-15);
    }
}

TEST(Discord, PureStateEqualsEntanglementEntropy) {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = u(rng);
        const Mat4 rho = make_state(FamilySpec(Family::PsiPlus, a, 1)).matrix();
        const double s_a = von_neumann_entropy(partial_trace_b(rho));
        EXPECT_NEAR(discord_x(as_x(rho)).discord, s_a, 1e-10);
        EXPECT_NEAR(discord_bruteforce(rho, kCoarse), s_a, 1e-7);
    }
}

TEST(Discord, ConditionSelectedBranchIsOptimal) {
    std::mt19937_64 rng(37);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const auto x = random_x_state(rng);
        const auto d = discord_x(x);
        const double brute = discord_bruteforce(x.to_dense(), kCoarse);
        EXPECT_LE(brute, d.discord + 1e-9);
        if (d.chen_huang_valid) {
            ++checked;
            EXPECT_NEAR(d.discord, brute, 1e-6);
            const double selected = d.branch == DiscordBranch::SigmaZ ? d.discord_sigma_z : d.discord_sigma_x;
            EXPECT_NEAR(selected, brute, 1e-6);
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Discord, BruteForceInvariantUnderLocalUnitaries) {
    std::mt19937_64 rng(38);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat4 rho = random_density(rng);
        const Mat4 u = kron(random_unitary2(rng), random_unitary2(rng));
        const Mat4 rotated = hermitian_part<4>(Mat4(u * rho * u.adjoint()));
        EXPECT_NEAR(discord_bruteforce(rotated, kCoarse), discord_bruteforce(rho, kCoarse), 1e-7);
    }
}

TEST(Discord, ClassicalStateHasZeroDiscord) {
    EXPECT_NEAR(discord_x(TwoQubitX(0.4, 0.1, 0.2, 0.3, 0.0)).discord, 0.0, 1e-12);
    EXPECT_NEAR(discord_x(TwoQubitX(0.25, 0.25, 0.25, 0.25, 0.0)).discord, 0.0, 1e-12);
}

TEST(Discord, BranchNames) {
    EXPECT_EQ(to_string(DiscordBranch::SigmaZ), "sigma_z");
    EXPECT_EQ(to_string(DiscordBranch::SigmaX), "sigma_x");
    EXPECT_EQ(to_string(DiscordBranch::Neither), "neither");
}

TEST(Discord, RejectsBadMeasurementAndGrid) {
    MeasurementBasis bad = MeasurementBasis::sigma_z();
    bad.second = bad.first;
    EXPECT_THROW(conditional_entropy_measured(Mat4(Mat4::Identity() * 0.25), bad), InputError);
    EXPECT_THROW(discord_bruteforce(Mat4(Mat4::Identity() * 0.25), BruteForceGrid{4, 72, 1e-6, 10}), ConfigError);
}

TEST(Discord, BruteForceReferenceStates) {
    EXPECT_NEAR(discord_bruteforce(bell_psi_plus()), 1.0, 1e-6);
    Mat4 product = Mat4::Zero();
    product(0, 0) = 1.0;
    EXPECT_NEAR(discord_bruteforce(product), 0.0, 1e-9);
    EXPECT_NEAR(discord_x(TwoQubitX(1.0, 0.0, 0.0, 0.0, 0.0)).discord, 0.0, 1e-12);
    EXPECT_NEAR(discord_x(as_x(bell_psi_plus())).discord, 1.0, 1e-12);
}

TEST(Discord, BoundedByMarginalEntropiesOnOrbits) {
    for (Family f : {Family::PsiPlus, Family::PsiMinus, Family::PhiPlus, Family::PhiMinus, Family::Werner, Family::Ali})
        for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const Trajectory traj(FamilySpec(f, a, 3));
            for (int k = 0; k < 100; ++k) {
                const auto x = traj.reduced(k / 100.0);
                const Mat4 rho = x.to_dense();
                const double bound =
                    std::min(von_neumann_entropy(partial_trace_b(rho)), von_neumann_entropy(partial_trace_a(rho)));
                const auto d = discord_x(x);
                EXPECT_GE(d.discord, 0.0);
                EXPECT_LE(d.discord, bound + 1e-9);
                const double c = concurrence_x(x);
                EXPECT_GE(c, 0.0);
                EXPECT_LE(c, 1.0);
            }
        }
}

TEST(Discord, ClosedFormWithinToleranceWhereConditionsFail) {
    std::mt19937_64 rng(39);
    int neither = 0;
    for (int trial = 0; trial < 4000 && neither < 40; ++trial) {
        const auto x = random_x_state(rng);
        const auto d = discord_x(x);
        if (d.chen_huang_valid) continue;
        ++neither;
        EXPECT_EQ(d.branch, DiscordBranch::Neither);
        const double brute = discord_bruteforce(x.to_dense(), kCoarse);
        // The two-basis minimum can only overshoot the full minimum here.
        EXPECT_LE(brute, d.discord + 1e-9);
        EXPECT_LE(std::abs(d.discord - brute), 0.0021);
    }
    EXPECT_GT(neither, 10);
}
