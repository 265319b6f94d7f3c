#include <cowaist/geometry.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace cowaist;

TEST(Hopf, CurvatureNorm)
{
    EXPECT_EQ(hopf_curvature_norm(SphereLineBundle(1)), Rational(1, 2));
    EXPECT_EQ(hopf_curvature_norm(SphereLineBundle(2)), Rational(1, 8));
    for (const Rational R : {Rational(1), Rational(3), Rational(7, 2), Rational(1, 5)}) {
        EXPECT_EQ(hopf_curvature_norm(SphereLineBundle(2 * R)), hopf_curvature_norm(SphereLineBundle(R)) / 4);
    }
    const RadiusPower sym = hopf_curvature_norm_symbolic();
    EXPECT_EQ(sym.coefficient, Rational(1, 2));
    EXPECT_EQ(sym.exponent, -2);
    EXPECT_THROW(SphereLineBundle(0), usage_error);
    EXPECT_THROW(SphereLineBundle(-1), usage_error);
    EXPECT_THROW(SphereLineBundle(1, 2), usage_error);
}

TEST(Hopf, ChernNumber)
{
    for (const Rational R : {Rational(1), Rational(5, 3)}) {
        EXPECT_EQ(hopf_chern_number(SphereLineBundle(R, 1)), -1);
        EXPECT_EQ(hopf_chern_number(SphereLineBundle(R, -1)), 1);
    }
}

TEST(Hopf, ChernNumberFromCurvatureIntegral)
{
    // Chern-Weil: F = i*kappa*vol with |kappa| = ||F||, and the tautological bundle has kappa > 0,
    // so (i/2pi) * integral F = -kappa * area / (2 pi) = -kappa * (4 R^2) / 2.
    for (const Rational R : {Rational(1), Rational(2), Rational(7, 2)}) {
        const SphereLineBundle b(R);
        const Rational kappa = hopf_curvature_norm(b);
        const Rational area_over_pi = 4 * R * R;
        EXPECT_EQ(-kappa * area_over_pi / 2, hopf_chern_number(b));
    }
}

TEST(Hopf, AcwLowerBound)
{
    EXPECT_EQ(acw_lower_bound(SphereLineBundle(1), 2).bound, 2);
    EXPECT_EQ(acw_lower_bound(SphereLineBundle(3), 2).bound, 18);
    EXPECT_THROW(acw_lower_bound(SphereLineBundle(1), 0), hypothesis_failure);
    for (const Rational R : {Rational(1), Rational(2), Rational(3), Rational(7, 2)}) {
        const SphereLineBundle b(R);
        const AcwWitness w = acw_lower_bound(b, Rational(-3, 2));
        EXPECT_EQ(w.bound * hopf_curvature_norm(b), 1);
        EXPECT_EQ(w.bound, 2 * R * R);
        EXPECT_EQ(w.product_pairing, Rational(-3, 2) * hopf_chern_number(b));
        EXPECT_NE(w.product_pairing, 0);
    }
}

TEST(MatrixNorm, ScalarsAndZero)
{
    ComplexMatrix a(1, 1), b(1, 1);
    a(0, 0) = {0, 2};
    b(0, 0) = {0, 3};
    EXPECT_NEAR(kron_norm_ratio(a, b), 1.0, 1e-12);
    b(0, 0) = {0, -3};
    EXPECT_LE(kron_norm_ratio(a, b), 1.0 + 1e-12);

    std::mt19937_64 rng(5);
    const ComplexMatrix B = random_anti_hermitian(4, rng);
    const ComplexMatrix Z = ComplexMatrix::Zero(3, 3);
    EXPECT_NEAR(kron_norm_ratio(Z, B), 1.0, 1e-12);
    EXPECT_EQ(kron_norm_ratio(Z, ComplexMatrix::Zero(2, 2)), 0.0);
}

TEST(MatrixNorm, OperatorNormOfKnownMatrices)
{
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = {0, 1};
    d(1, 1) = {0, -4};
    d(2, 2) = {0, 2};
    EXPECT_NEAR(operator_norm(d), 4.0, 1e-12);
    // Kronecker sum of diagonals: eigenvalues add, max |i(a_j + b_k)|.
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(0, 0) = {0, -1};
    e(1, 1) = {0, 3};
    EXPECT_NEAR(operator_norm(kronecker_sum(d, e)), 5.0, 1e-12);
}

TEST(MatrixNorm, RandomTrialsRespectInequality)
{
    const NormSample s = kron_norm_check(4, 4, 100, 7);
    EXPECT_LE(s.max_ratio, 1 + 1e-9);
    EXPECT_LE(s.max_identity_defect, 1e-9);
    EXPECT_GT(s.max_ratio, 0.5);
    const NormSample again = kron_norm_check(4, 4, 100, 7);
    EXPECT_EQ(s.max_ratio, again.max_ratio);
    EXPECT_THROW(kron_norm_check(0, 4, 1, 1), usage_error);
    EXPECT_THROW(kron_norm_check(4, 17, 1, 1), usage_error);
    EXPECT_THROW(kron_norm_check(4, 4, 0, 1), usage_error);
}

TEST(MatrixNorm, RandomMatricesAreAntiHermitian)
{
    std::mt19937_64 rng(9);
    for (int d = 1; d <= 8; ++d) {
        const ComplexMatrix m = random_anti_hermitian(d, rng);
        EXPECT_LT((m + m.adjoint()).norm(), 1e-14);
    }
}
