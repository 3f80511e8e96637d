#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "test_support.hpp"

using namespace tcq;
using namespace tcq::testing;

TEST(EigHermitian, IdentityQuarter) {
    const auto s = eig_hermitian(Mat4(Mat4::Identity() * 0.25));
    for (double v : s.eigenvalues) EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(EigHermitian, DiagonalIsSortedDescending) {
    Mat4 m = Mat4::Zero();
    m(0, 0) = 0.1;
    m(1, 1) = 0.7;
    m(2, 2) = 0.0;
    m(3, 3) = 0.2;
    const auto s = eig_hermitian(m);
    EXPECT_NEAR(s.eigenvalues[0], 0.7, 1e-15);
    EXPECT_NEAR(s.eigenvalues[1], 0.2, 1e-15);
    EXPECT_NEAR(s.eigenvalues[2], 0.1, 1e-15);
    EXPECT_NEAR(s.eigenvalues[3], 0.0, 1e-15);
}

TEST(EigHermitian, BellProjectorIsRankOne) {
    const auto s = eig_hermitian(bell_psi_plus());
    EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-14);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(s.eigenvalues[k], 0.0, 1e-14);
}

TEST(EigHermitian, ReconstructsRandomMatrices) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat4 a = random_gaussian4(rng);
        const Mat4 h = hermitian_part<4>(a);
        const auto dec = eig_hermitian_decompose<4>(h);
        Eigen::Vector4d vals;
        for (int k = 0; k < 4; ++k) vals(k) = dec.spectrum.eigenvalues[k];
        const Mat4 back = dec.vectors * vals.cast<Complex>().asDiagonal() * dec.vectors.adjoint();
        EXPECT_LE(max_abs(Mat4(back - h)), 1e-10);
        for (int k = 0; k + 1 < 4; ++k) EXPECT_GE(dec.spectrum.eigenvalues[k], dec.spectrum.eigenvalues[k + 1]);
    }
}

TEST(EigHermitian, RejectsNonFinite) {
    Mat4 m = Mat4::Identity();
    m(1, 2) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(eig_hermitian(m), InputError);
}

TEST(EigHermitian, InvariantUnderBasisPermutation) {
    std::mt19937_64 rng(3);
    const Mat4 rho = random_density(rng);
    Eigen::PermutationMatrix<4> perm;
    perm.indices() << 2, 0, 3, 1;
    const Mat4 permuted = perm * rho * perm.transpose();
    const auto a = eig_hermitian(rho), b = eig_hermitian(permuted);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(a.eigenvalues[k], b.eigenvalues[k], 1e-12);
}

TEST(VonNeumannEntropy, ReferenceValues) {
    EXPECT_NEAR(von_neumann_entropy(bell_psi_minus()), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(Mat4(Mat4::Identity() * 0.25)), 2.0, 1e-12);
    Mat4 bit = Mat4::Zero();
    bit(0, 0) = bit(1, 1) = 0.5;
    EXPECT_NEAR(von_neumann_entropy(bit), 1.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(Mat2(Mat2::Identity() * 0.5)), 1.0, 1e-12);
}

TEST(VonNeumannEntropy, RejectsBadStates) {
    Mat4 m = Mat4::Identity() * 0.3;
    EXPECT_THROW(von_neumann_entropy(m), StateError);
    Mat4 neg = Mat4::Zero();
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    EXPECT_THROW(von_neumann_entropy(neg), StateError);
}

TEST(VonNeumannEntropy, UnitaryInvariance) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat4 rho = random_density(rng);
        const Mat4 u = random_unitary4(rng);
        const Mat4 rotated = hermitian_part<4>(Mat4(u * rho * u.adjoint()));
        EXPECT_NEAR(von_neumann_entropy(rotated), von_neumann_entropy(rho), 1e-9);
    }
}

TEST(PartialTrace, ProductStateFactorizes) {
    std::mt19937_64 rng(9);
    const Mat2 ua = random_unitary2(rng), ub = random_unitary2(rng);
    Mat2 a = Mat2::Zero(), b = Mat2::Zero();
    a(0, 0) = 0.8;
    a(1, 1) = 0.2;
    b(0, 0) = 0.35;
    b(1, 1) = 0.65;
    a = ua * a * ua.adjoint();
    b = ub * b * ub.adjoint();
    const Mat4 ab = kron(a, b);
    EXPECT_LE(max_abs(Mat2(partial_trace_b(ab) - a)), 1e-14);
    EXPECT_LE(max_abs(Mat2(partial_trace_a(ab) - b)), 1e-14);
}
