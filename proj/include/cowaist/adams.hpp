#pragma once

// Adams operations as virtual combinations of admissible functors.
//
// psi_k = e1 psi_{k-1} - e2 psi_{k-2} + ... + (-1)^k e_{k-1} psi_1 + (-1)^{k-1} k e_k
// with e_i read as the exterior power functor Lambda^i in slot 0.

#include "functor_expr.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <vector>

namespace cowaist
{

/// Tensor monomial Lambda^{m_1} E (x) ... (x) Lambda^{m_s} E, orders ascending.
using WedgeMonomial = std::vector<int>;

/// Left-nested tensor product of the wedge factors; Lambda^1 E is written as E itself.
inline FunctorExpr wedge_monomial_functor(const WedgeMonomial &orders, int slot = 0)
{
    if (orders.empty()) {
        return FunctorExpr::trivial(1);
    }
    auto factor = [slot](int m) {
        return m == 1 ? FunctorExpr::identity(slot) : FunctorExpr::wedge(m, FunctorExpr::identity(slot));
    };
    FunctorExpr out = factor(orders.front());
    for (std::size_t i = 1; i < orders.size(); ++i) {
        out = FunctorExpr::tensor(out, factor(orders[i]));
    }
    return out;
}

/// Integer coefficients of psi_k in the wedge-monomial basis, ordered by monomial.
inline const std::map<WedgeMonomial, BigInt> &adams_coefficients(int k)
{
    if (k < 1) {
        throw usage_error("Adams operation needs k >= 1");
    }
    static std::mutex mu;
    static std::deque<std::map<WedgeMonomial, BigInt>> cache{{}};
    std::lock_guard lock(mu);
    while (static_cast<int>(cache.size()) <= k) {
        const int n = static_cast<int>(cache.size());
        std::map<WedgeMonomial, BigInt> psi;
        for (int i = 1; i < n; ++i) {
            const int sign = i % 2 == 1 ? 1 : -1;
            for (const auto &[mono, c] : cache[n - i]) {
                WedgeMonomial m = mono;
                m.insert(std::upper_bound(m.begin(), m.end(), i), i);
                psi[m] += sign * c;
            }
        }
        psi[WedgeMonomial{n}] += (n % 2 == 1 ? 1 : -1) * n;
        std::erase_if(psi, [](const auto &kv) { return kv.second == 0; });
        cache.push_back(std::move(psi));
    }
    return cache[k];
}

inline VirtualCombination adams_expand(int k)
{
    VirtualCombination out;
    for (const auto &[mono, c] : adams_coefficients(k)) {
        out.terms.push_back({Rational(c), wedge_monomial_functor(mono)});
    }
    return out;
}

/// psi_k = G1 - G2 with both parts honest: positive and negative terms collected
/// into direct sums of C^|c| (x) monomial. An empty part is the zero bundle C^0.
struct AdamsParts {
    FunctorExpr positive;
    FunctorExpr negative;
};

inline AdamsParts adams_parts(int k)
{
    std::vector<FunctorExpr> pos;
    std::vector<FunctorExpr> neg;
    for (const auto &[mono, c] : adams_coefficients(k)) {
        const FunctorExpr f = wedge_monomial_functor(mono);
        if (c > 0) {
            pos.push_back(scaled(c, f));
        } else {
            neg.push_back(scaled(-c, f));
        }
    }
    auto fold = [](const std::vector<FunctorExpr> &fs) {
        if (fs.empty()) {
            return FunctorExpr::trivial(0);
        }
        FunctorExpr out = fs.front();
        for (std::size_t i = 1; i < fs.size(); ++i) {
            out = FunctorExpr::direct_sum(out, fs[i]);
        }
        return out;
    };
    return {fold(pos), fold(neg)};
}

} // namespace cowaist
