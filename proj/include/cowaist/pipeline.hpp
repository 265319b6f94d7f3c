#pragma once

// From a bundle with a nonzero Chern number to one with a nonzero A-hat pairing,
// with an explicit curvature constant c depending only on the half dimension n:
//
//   1. decompose the witness product into sum lambda_i ch_n(J_i(E)) and take the
//      first J_1 with nonzero pairing of ch_n(J_1(E));
//   2. scan k0 = 1..n+1 for a nonzero pairing of A-hat ch(psi_k0(E_1));
//   3. psi_k0 = G1 - G2 with honest parts, keep a part with nonzero pairing;
//   4. c = 1 / (max_{k <= n+1} C_k * A_n).

#include "adams.hpp"
#include "decomposition.hpp"
#include "splitting.hpp"

#include <optional>

namespace cowaist
{

struct PipelineResult {
    FunctorExpr functor = FunctorExpr::trivial(0);       // G o J_1, applied to E
    FunctorExpr first_functor = FunctorExpr::trivial(0); // J_1
    bool positive_part = true; // G = G1 (true) or G2 (false)
    int k0 = 0;
    Rational c;
    Rational A_N;
    Rational C_k0;
    Rational max_C;
    Rational bound;          // (1/c) / m0, the curvature bound of the output bundle
    Rational chern_pairing;  // pairing of the witness product
    Rational ch_pairing;     // pairing of ch_n(E_1)
    Rational ahat_pairing;   // pairing of A-hat ch(G(E_1))
};

/// C_k = max(C_{G1_k}, C_{G2_k}).
inline Rational adams_bound_constant(int k)
{
    const AdamsParts parts = adams_parts(k);
    return std::max(bound_constant(parts.positive).constant, bound_constant(parts.negative).constant);
}

/// The constant c for half dimension n; a function of n alone.
struct ComparisonConstant {
    Rational A_N;
    Rational max_C;
    Rational c;
};

inline ComparisonConstant comparison_constant(int n)
{
    const FunctorLibrary library = build_library(n, n);
    ComparisonConstant out;
    out.A_N = library.sup_bound_constant(n);
    out.max_C = 0;
    for (int k = 1; k <= n + 1; ++k) {
        out.max_C = std::max(out.max_C, adams_bound_constant(k));
    }
    out.c = 1 / (out.max_C * out.A_N);
    return out;
}

/// Pairing of A-hat ch(psi_k(E1)) split into the G1 and G2 contributions.
inline std::pair<Rational, Rational> adams_part_pairings(const FormalBundle &E1, int k, const PairingData &data)
{
    BatchEvaluator eval({E1});
    Rational pos = 0;
    Rational neg = 0;
    for (const auto &[mono, c] : adams_coefficients(k)) {
        const Rational v = ahat_pairing(eval(wedge_monomial_functor(mono)), data);
        if (c > 0) {
            pos += Rational(c) * v;
        } else {
            neg -= Rational(c) * v;
        }
    }
    return {pos, neg};
}

inline PipelineResult comparison_pipeline(const FormalBundle &E, const PairingData &data, const Partition &witness,
                                          const Rational &m0)
{
    if (m0 <= 0) {
        throw usage_error("m0 must be positive");
    }
    const int n = data.half_dimension;
    PipelineResult out;

    const int K = witness.sum();
    GradedClass product(E.universe(), std::max(K, n));
    const GradedClass witness_class = chern_product(E, witness);
    for (const auto &[m, c] : witness_class.terms()) {
        product.add_term(m, c);
    }
    out.chern_pairing = integrate(product, data);
    if (out.chern_pairing.is_zero()) {
        throw hypothesis_failure("Chern-number hypothesis fails: the witness Chern number vanishes");
    }

    const FunctorLibrary library = build_library(n, n);
    const DecompositionCertificate cert = decompose(witness, library);

    BatchEvaluator on_E({E});
    std::optional<FormalBundle> E1;
    for (const auto &t : cert.terms) {
        const FormalBundle &image = on_E(t.functor);
        const Rational v = integrate(chern_character_component(image, n), data);
        if (!v.is_zero()) {
            out.first_functor = t.functor;
            out.ch_pairing = v;
            E1 = image;
            break;
        }
    }
    if (!E1) {
        throw std::logic_error("internal invariant violation: no certificate term has a nonzero ch_n pairing");
    }

    std::optional<std::pair<Rational, Rational>> parts_pairing;
    for (int k = 1; k <= n + 1; ++k) {
        auto [pos, neg] = adams_part_pairings(*E1, k, data);
        if (pos != neg) {
            out.k0 = k;
            parts_pairing = std::make_pair(pos, neg);
            break;
        }
    }
    if (!parts_pairing) {
        throw std::logic_error("internal invariant violation: no k0 <= n+1 with nonzero A-hat pairing");
    }

    const AdamsParts parts = adams_parts(out.k0);
    out.positive_part = !parts_pairing->first.is_zero();
    const FunctorExpr &G = out.positive_part ? parts.positive : parts.negative;
    out.ahat_pairing = out.positive_part ? parts_pairing->first : parts_pairing->second;
    out.functor = substitute(G, {out.first_functor});

    const ComparisonConstant cc = comparison_constant(n);
    out.A_N = cc.A_N;
    out.max_C = cc.max_C;
    out.C_k0 = adams_bound_constant(out.k0);
    out.c = cc.c;
    out.bound = 1 / (out.c * m0);
    return out;
}

} // namespace cowaist
