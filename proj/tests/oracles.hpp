#pragma once

// Independent reference computations used by the tests. None of these call the
// routines they are checking: roots are explicit integer lists, series come
// from long division, Vandermonde weights from Lagrange interpolation.

#include <cowaist/cowaist.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace oracle
{

using cowaist::BigInt;
using cowaist::FunctorExpr;
using cowaist::FunctorOp;
using cowaist::Rational;

// --- explicit root lists -----------------------------------------------------

using Roots = std::vector<long long>;

inline void subsets(const Roots &r, int k, std::size_t from, long long acc, Roots &out)
{
    if (k == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = from; i + static_cast<std::size_t>(k) <= r.size(); ++i) {
        subsets(r, k - 1, i + 1, acc + r[i], out);
    }
}

/// J(args) with every root a concrete integer, no multiplicity compression.
inline Roots evaluate(const FunctorExpr &f, const std::vector<Roots> &args)
{
    switch (f.op()) {
    case FunctorOp::Identity:
        return args.at(static_cast<std::size_t>(f.slot()));
    case FunctorOp::Trivial:
        return Roots(static_cast<std::size_t>(f.k()), 0);
    case FunctorOp::Dual: {
        Roots r = evaluate(f.child(), args);
        for (auto &x : r) {
            x = -x;
        }
        return r;
    }
    case FunctorOp::Wedge: {
        Roots out;
        subsets(evaluate(f.child(), args), f.k(), 0, 0, out);
        return out;
    }
    case FunctorOp::DirectSum: {
        Roots a = evaluate(f.left(), args);
        const Roots b = evaluate(f.right(), args);
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    case FunctorOp::Tensor: {
        const Roots a = evaluate(f.left(), args);
        const Roots b = evaluate(f.right(), args);
        Roots out;
        out.reserve(a.size() * b.size());
        for (long long x : a) {
            for (long long y : b) {
                out.push_back(x + y);
            }
        }
        return out;
    }
    }
    return {};
}

/// ch_K at a point: sum of root^K / K!.
inline Rational ch_at(const Roots &r, int K)
{
    BigInt s = 0;
    for (long long x : r) {
        s += cowaist::ipow(BigInt(x), static_cast<unsigned>(K));
    }
    return Rational(s, cowaist::factorial(static_cast<unsigned>(K)));
}

/// e_a of the roots by expanding prod (1 + x t).
inline Rational elementary_at(const Roots &r, int a)
{
    std::vector<BigInt> e(static_cast<std::size_t>(a) + 1, 0);
    e[0] = 1;
    for (long long x : r) {
        for (int i = a; i >= 1; --i) {
            e[static_cast<std::size_t>(i)] += e[static_cast<std::size_t>(i - 1)] * x;
        }
    }
    return Rational(e[static_cast<std::size_t>(a)]);
}

inline Roots random_roots(std::mt19937_64 &rng, int rank, int span = 3)
{
    std::uniform_int_distribution<long long> d(-span, span);
    Roots r(static_cast<std::size_t>(rank));
    for (auto &x : r) {
        x = d(rng);
    }
    return r;
}

// --- series ------------------------------------------------------------------

/// Coefficients b_m of (y/2)/sinh(y/2) = sum_m b_m y^{2m}, m < len, by long division.
inline std::vector<Rational> ahat_one_variable(std::size_t len)
{
    std::vector<Rational> s(len);
    for (std::size_t m = 0; m < len; ++m) {
        // sinh(y/2)/(y/2) = sum (1/4)^m / (2m+1)! y^{2m}
        s[m] = Rational(1, cowaist::ipow(BigInt(4), static_cast<unsigned>(m)) *
                               cowaist::factorial(static_cast<unsigned>(2 * m + 1)));
    }
    std::vector<Rational> inv(len);
    inv[0] = 1;
    for (std::size_t m = 1; m < len; ++m) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= m; ++i) {
            acc += s[i] * inv[m - i];
        }
        inv[m] = -acc;
    }
    return inv;
}

/// prod_j (y_j/2)/sinh(y_j/2) as a class in y_1..y_r (weight 1), truncated at N.
inline cowaist::GradedClass ahat_in_roots(int r, int N)
{
    std::vector<cowaist::Generator> g;
    for (int j = 1; j <= r; ++j) {
        g.push_back({"y" + std::to_string(j), 1});
    }
    const cowaist::Universe u = cowaist::make_universe(g);
    const auto b = ahat_one_variable(static_cast<std::size_t>(N / 2) + 1);
    cowaist::GradedClass out = cowaist::GradedClass::constant(u, N, 1);
    for (int j = 1; j <= r; ++j) {
        cowaist::GradedClass f(u, N);
        for (std::size_t m = 0; m < b.size(); ++m) {
            cowaist::Monomial mono{static_cast<int>(2 * m), std::vector<unsigned>(u->size(), 0)};
            mono.exps[*u->index_of("y" + std::to_string(j))] = static_cast<unsigned>(2 * m);
            f.add_term(mono, b[m]);
        }
        out *= f;
    }
    return out;
}

// --- Vandermonde ----------------------------------------------------------------

/// lambda_l = [x^a] prod_{m != l} (x - m)/(l - m) over nodes 1..r+1 (Lagrange basis).
inline std::vector<Rational> lagrange_select(int r, int a)
{
    std::vector<Rational> out;
    for (int l = 1; l <= r + 1; ++l) {
        std::vector<Rational> poly{1};
        Rational denom = 1;
        for (int m = 1; m <= r + 1; ++m) {
            if (m == l) {
                continue;
            }
            std::vector<Rational> next(poly.size() + 1, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= poly[i] * m;
            }
            poly = std::move(next);
            denom *= l - m;
        }
        out.push_back(poly[static_cast<std::size_t>(a)] / denom);
    }
    return out;
}

// --- Adams / Waring ---------------------------------------------------------------

/// Coefficient of e_{m_1}...e_{m_s} in the power sum p_k (Waring):
/// (-1)^{k-s} k (s-1)! / prod_i mult_i!.
inline BigInt waring(const std::vector<int> &orders)
{
    int k = 0;
    std::map<int, unsigned> mult;
    for (int m : orders) {
        k += m;
        ++mult[m];
    }
    const auto s = static_cast<unsigned>(orders.size());
    BigInt num = BigInt(k) * cowaist::factorial(s - 1);
    for (const auto &[m, c] : mult) {
        num /= cowaist::factorial(c);
    }
    return (k - static_cast<int>(s)) % 2 == 0 ? num : BigInt(-num);
}

/// All partitions of k as ascending part lists.
inline std::vector<std::vector<int>> ascending_partitions(int k)
{
    std::vector<std::vector<int>> out;
    for (const auto &p : cowaist::partitions_of(k)) {
        std::vector<int> parts = p.parts();
        std::sort(parts.begin(), parts.end());
        out.push_back(parts);
    }
    return out;
}

} // namespace oracle
