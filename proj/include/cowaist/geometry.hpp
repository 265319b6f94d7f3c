#pragma once

// Closed-form Hopf bundle witness on S^2(R) and a numeric check of
// ||A (x) I + I (x) B|| <= ||A|| + ||B|| for curvature-shaped matrices.

#include "rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <random>

namespace cowaist
{

/// Tautological (Hopf) line bundle over the round sphere of radius R.
struct SphereLineBundle {
    Rational radius;
    int orientation = 1; // +1 or -1

    SphereLineBundle(Rational r, int s = 1) : radius(std::move(r)), orientation(s)
    {
        if (radius <= 0) {
            throw usage_error("sphere radius must be positive");
        }
        if (s != 1 && s != -1) {
            throw usage_error("orientation must be +1 or -1");
        }
    }
};

/// coefficient * R^exponent, kept symbolic in R.
struct RadiusPower {
    Rational coefficient;
    int exponent = 0;

    Rational at(const Rational &R) const
    {
        Rational v = coefficient;
        for (int i = 0; i < std::abs(exponent); ++i) {
            v = exponent > 0 ? v * R : v / R;
        }
        return v;
    }
};

/// ||R^H|| = 1/(2R^2): the constant curvature 2-form of the Hopf connection, measured on unit bivectors.
inline RadiusPower hopf_curvature_norm_symbolic() { return {Rational(1, 2), -2}; }

inline Rational hopf_curvature_norm(const SphereLineBundle &b) { return hopf_curvature_norm_symbolic().at(b.radius); }

/// Integral of c_1 over S^2: -1 for the tautological bundle, sign flips with orientation.
inline int hopf_chern_number(const SphereLineBundle &b) { return -b.orientation; }

struct AcwWitness {
    Rational bound;           // 2R^2
    Rational product_pairing; // ahat_number * chern_number
};

/// Lower bound for the A-hat cowaist of N x S^2(R) given the A-hat number of N.
inline AcwWitness acw_lower_bound(const SphereLineBundle &b, const Rational &ahat_number)
{
    if (ahat_number.is_zero()) {
        throw hypothesis_failure("hypothesis int A-hat(N) != 0 fails");
    }
    return {1 / hopf_curvature_norm(b), ahat_number * hopf_chern_number(b)};
}

// --- matrix norms ----------------------------------------------------------------

using ComplexMatrix = Eigen::MatrixXcd;

inline double operator_norm(const ComplexMatrix &m)
{
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

inline ComplexMatrix kronecker(const ComplexMatrix &a, const ComplexMatrix &b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// A (x) I + I (x) B: the curvature of a tensor product connection at one bivector.
inline ComplexMatrix kronecker_sum(const ComplexMatrix &a, const ComplexMatrix &b)
{
    return kronecker(a, ComplexMatrix::Identity(b.rows(), b.cols())) +
           kronecker(ComplexMatrix::Identity(a.rows(), a.cols()), b);
}

/// Skew-Hermitian matrix from entries uniform on [-1, 1] + i[-1, 1].
template <typename Rng>
ComplexMatrix random_anti_hermitian(int d, Rng &rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i, j) = {dist(rng), dist(rng)};
        }
    }
    return (m - m.adjoint()) / 2.0;
}

/// ||A (x) I + I (x) B|| / (||A|| + ||B||), or 0 when both vanish.
inline double kron_norm_ratio(const ComplexMatrix &a, const ComplexMatrix &b)
{
    const double denom = operator_norm(a) + operator_norm(b);
    if (denom == 0.0) {
        return 0.0;
    }
    return operator_norm(kronecker_sum(a, b)) / denom;
}

struct NormSample {
    int d1 = 0;
    int d2 = 0;
    int trials = 0;
    double max_ratio = 0.0;
    double max_identity_defect = 0.0; // max | ||A (x) I|| - ||A|| |
};

inline NormSample kron_norm_check(int d1, int d2, int trials, std::uint64_t seed)
{
    if (d1 < 1 || d1 > 16 || d2 < 1 || d2 > 16) {
        throw usage_error("matrix dimensions must lie in [1, 16]");
    }
    if (trials < 1) {
        throw usage_error("need at least one trial");
    }
    NormSample s{d1, d2, trials, 0.0, 0.0};
    for (int t = 0; t < trials; ++t) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t)};
        std::mt19937_64 rng(seq);
        const ComplexMatrix a = random_anti_hermitian(d1, rng);
        const ComplexMatrix b = random_anti_hermitian(d2, rng);
        s.max_ratio = std::max(s.max_ratio, kron_norm_ratio(a, b));
        const double lifted = operator_norm(kronecker(a, ComplexMatrix::Identity(d2, d2)));
        s.max_identity_defect = std::max(s.max_identity_defect, std::abs(lifted - operator_norm(a)));
    }
    return s;
}

} // namespace cowaist
