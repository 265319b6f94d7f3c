#pragma once

// Exact Vandermonde systems at the integer nodes 1..n+1.

#include "rational.hpp"

#include <vector>

namespace cowaist
{

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Determinant by exact Gaussian elimination with row swaps.
inline Rational exact_determinant(RationalMatrix m)
{
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            return 0;
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) {
                continue;
            }
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    return det;
}

/// Solves m x = rhs exactly; throws usage_error if m is singular.
inline std::vector<Rational> exact_solve(RationalMatrix m, std::vector<Rational> rhs)
{
    const std::size_t n = m.size();
    if (rhs.size() != n) {
        throw usage_error("right-hand side has the wrong length");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            throw usage_error("singular system");
        }
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) {
                continue;
            }
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] /= m[i][i];
    }
    return rhs;
}

inline std::vector<Rational> mat_vec(const RationalMatrix &m, const std::vector<Rational> &x)
{
    std::vector<Rational> out(m.size(), 0);
    for (std::size_t r = 0; r < m.size(); ++r) {
        for (std::size_t c = 0; c < x.size(); ++c) {
            out[r] += m[r][c] * x[c];
        }
    }
    return out;
}

/// L[j-1][i] = j^i for nodes j = 1..n+1 and exponents i = 0..n.
struct VandermondeSystem {
    int size = 0;
    std::vector<int> nodes;
    RationalMatrix matrix;
    Rational determinant;
};

inline RationalMatrix vandermonde_matrix(int n)
{
    RationalMatrix m(static_cast<std::size_t>(n + 1), std::vector<Rational>(static_cast<std::size_t>(n + 1)));
    for (int j = 1; j <= n + 1; ++j) {
        Rational p = 1;
        for (int i = 0; i <= n; ++i) {
            m[j - 1][i] = p;
            p *= j;
        }
    }
    return m;
}

/// prod_{1 <= i < j <= n+1} (j - i).
inline Rational vandermonde_det(int n)
{
    if (n < 0) {
        throw usage_error("Vandermonde size must be non-negative");
    }
    BigInt d = 1;
    for (int j = 1; j <= n + 1; ++j) {
        for (int i = 1; i < j; ++i) {
            d *= (j - i);
        }
    }
    return Rational(d);
}

/// The system L a = 0 built from psi_1..psi_{n+1}; nonsingular for every n.
inline VandermondeSystem adams_integral_matrix(int n)
{
    VandermondeSystem s;
    s.size = n + 1;
    for (int j = 1; j <= n + 1; ++j) {
        s.nodes.push_back(j);
    }
    s.matrix = vandermonde_matrix(n);
    s.determinant = vandermonde_det(n);
    return s;
}

/// Weights lambda_1..lambda_{r+1} with sum_l lambda_l l^b = [b == a] for 0 <= b <= r.
inline std::vector<Rational> vandermonde_select(int r, int a)
{
    if (r < 0 || a < 0 || a > r) {
        throw usage_error("vandermonde_select needs 0 <= a <= r");
    }
    const RationalMatrix L = vandermonde_matrix(r);
    RationalMatrix Lt(L.size(), std::vector<Rational>(L.size()));
    for (std::size_t i = 0; i < L.size(); ++i) {
        for (std::size_t j = 0; j < L.size(); ++j) {
            Lt[i][j] = L[j][i];
        }
    }
    std::vector<Rational> e(L.size(), 0);
    e[static_cast<std::size_t>(a)] = 1;
    return exact_solve(std::move(Lt), std::move(e));
}

} // namespace cowaist
