#pragma once

// Small, fast versions of the module invariants; `cowaist selftest` runs these.

#include "adams.hpp"
#include "decomposition.hpp"
#include "geometry.hpp"
#include "pipeline.hpp"
#include "vandermonde.hpp"

#include <functional>
#include <random>

namespace cowaist
{

struct SelftestCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

namespace detail
{

inline FormalBundle random_bundle(std::mt19937_64 &rng, int rank, int generators, int span = 2)
{
    std::vector<Generator> gens;
    for (int i = 1; i <= generators; ++i) {
        gens.push_back({"x" + std::to_string(i), 1});
    }
    std::uniform_int_distribution<int> coef(-span, span);
    std::vector<LinearForm> roots;
    for (int r = 0; r < rank; ++r) {
        LinearForm f(static_cast<std::size_t>(generators));
        for (auto &c : f) {
            c = coef(rng);
        }
        roots.push_back(f);
    }
    return FormalBundle(make_universe(gens), roots);
}

inline FunctorExpr random_functor(std::mt19937_64 &rng, int depth, int slots = 1)
{
    std::uniform_int_distribution<int> pick(0, depth <= 1 ? 1 : 5);
    std::uniform_int_distribution<int> small(0, 3);
    std::uniform_int_distribution<int> slot(0, slots - 1);
    switch (pick(rng)) {
    case 0:
        return FunctorExpr::identity(slot(rng));
    case 1:
        return FunctorExpr::trivial(small(rng));
    case 2:
        return FunctorExpr::dual(random_functor(rng, depth - 1, slots));
    case 3:
        return FunctorExpr::wedge(small(rng), random_functor(rng, depth - 1, slots));
    case 4:
        return FunctorExpr::direct_sum(random_functor(rng, depth - 1, slots), random_functor(rng, depth - 1, slots));
    default:
        return FunctorExpr::tensor(random_functor(rng, depth - 1, slots), random_functor(rng, depth - 1, slots));
    }
}

/// sum_i k^i ch_i(E) up to weight N.
inline GradedClass scaled_chern_character(const FormalBundle &E, int k, int N)
{
    GradedClass out(E.universe(), N);
    Rational f = 1;
    for (int i = 0; i <= N; ++i) {
        out += chern_character_component(E, i).retruncated(N) * f;
        f *= k;
    }
    return out;
}

/// ch of a virtual combination evaluated on E.
inline GradedClass virtual_chern_character(const VirtualCombination &v, const FormalBundle &E, int N)
{
    BatchEvaluator eval({E});
    GradedClass out(E.universe(), N);
    for (const auto &t : v.terms) {
        out += chern_character(eval(t.functor), N) * t.coefficient;
    }
    return out;
}

} // namespace detail

inline std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 20240611)
{
    std::vector<SelftestCheck> out;
    auto check = [&out](std::string name, const std::function<std::string()> &body) {
        SelftestCheck c{std::move(name), false, ""};
        try {
            c.detail = body();
            c.ok = c.detail.empty();
        } catch (const std::exception &e) {
            c.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(c));
    };
    std::mt19937_64 rng(seed);

    check("ring laws", [&] {
        for (int t = 0; t < 10; ++t) {
            const FormalBundle b = detail::random_bundle(rng, 3, 2);
            const GradedClass x = chern_character(b, 4);
            const GradedClass y = total_chern_class(b, 4);
            const GradedClass z = chern_character(scale_roots(b, 2), 4);
            if ((x * y) * z != x * (y * z) || x * y != y * x || x * (y + z) != x * y + x * z) {
                return std::string("ring law violated");
            }
            if ((x.truncated(2) * y.truncated(2)).truncated(2) != (x * y).truncated(2)) {
                return std::string("truncation incoherent");
            }
        }
        return std::string();
    });

    check("ch additive and multiplicative", [&] {
        for (int t = 0; t < 10; ++t) {
            const FormalBundle e = detail::random_bundle(rng, 1 + t % 3, 2);
            const FormalBundle f = detail::random_bundle(rng, 1 + t % 2, 2);
            const auto sum = evaluate_functor(FunctorExpr::direct_sum(FunctorExpr::identity(0), FunctorExpr::identity(1)), {e, f});
            const auto prod = evaluate_functor(FunctorExpr::tensor(FunctorExpr::identity(0), FunctorExpr::identity(1)), {e, f});
            const GradedClass ce = chern_character(e, 5);
            const GradedClass cf = chern_character(f.embedded(e.universe()), 5);
            if (chern_character(sum, 5) != ce + cf || chern_character(prod, 5) != ce * cf) {
                return std::string("ch(E+F) or ch(E*F) mismatch");
            }
        }
        return std::string();
    });

    check("chern classes from total class", [&] {
        for (int r = 1; r <= 4; ++r) {
            const FormalBundle b = detail::random_bundle(rng, r, 3);
            const GradedClass total = total_chern_class(b, r);
            for (int i = 0; i <= r; ++i) {
                if (chern_class(b, i).retruncated(r) != total.component(i)) {
                    return "c_" + std::to_string(i) + " mismatch at rank " + std::to_string(r);
                }
            }
        }
        return std::string();
    });

    check("Newton round trip", [&] {
        const FormalBundle b = detail::random_bundle(rng, 3, 3);
        std::vector<GradedClass> ch;
        for (int i = 0; i <= 4; ++i) {
            ch.push_back(chern_character_component(b, i).retruncated(4));
        }
        const auto c = chern_from_ch(ch, 3);
        for (int i = 0; i <= 4; ++i) {
            const GradedClass expect = i <= 3 ? chern_class(b, i).retruncated(4) : GradedClass(b.universe(), 4);
            if (c[i] != expect) {
                return "chern_from_ch wrong at weight " + std::to_string(i);
            }
        }
        if (ch_from_chern(c, 3) != ch) {
            return std::string("round trip failed");
        }
        return std::string();
    });

    check("duality flips odd components", [&] {
        const FormalBundle b = detail::random_bundle(rng, 3, 2);
        const GradedClass d = chern_character(evaluate_functor(FunctorExpr::dual(FunctorExpr::identity(0)), {b}), 5);
        for (int w = 0; w <= 5; ++w) {
            const GradedClass c = chern_character_component(b, w).retruncated(5);
            if (d.component(w) != (w % 2 == 0 ? c : c * Rational(-1))) {
                return "weight " + std::to_string(w);
            }
        }
        return std::string();
    });

    check("A-hat low coefficients", [&] {
        const GradedClass a = ahat_series({"y1", "y2"}, 4);
        if (a.coefficient("p1") != Rational(-1, 24) || a.coefficient("p1^2") != Rational(7, 5760) ||
            a.coefficient("p2") != Rational(-4, 5760)) {
            return "got " + a.to_string();
        }
        return std::string();
    });

    check("Adams expansion matches root scaling", [&] {
        for (int r = 1; r <= 3; ++r) {
            const FormalBundle E = FormalBundle::generic(r);
            for (int k = 1; k <= 4; ++k) {
                const GradedClass lhs = detail::virtual_chern_character(adams_expand(k), E, 5);
                if (lhs != chern_character(scale_roots(E, k), 5) || lhs != detail::scaled_chern_character(E, k, 5)) {
                    return "k=" + std::to_string(k) + " rank=" + std::to_string(r);
                }
            }
        }
        return std::string();
    });

    check("functor JSON round trip", [&] {
        for (int t = 0; t < 200; ++t) {
            const FunctorExpr f = detail::random_functor(rng, 6, 2);
            if (parse_functor(functor_to_json(f)) != f || parse_functor(functor_document(f)) != f) {
                return "round trip failed for " + f.key();
            }
        }
        return std::string();
    });

    check("bound constant rules", [&] {
        const auto I = FunctorExpr::identity(0);
        const auto f = FunctorExpr::tensor(FunctorExpr::tensor(I, I), FunctorExpr::wedge(2, I));
        if (bound_constant(f).constant != 4) {
            return std::string("(E*E)*L2E should give 4");
        }
        return std::string();
    });

    check("Vandermonde", [&] {
        for (int n = 0; n <= 6; ++n) {
            if (vandermonde_det(n) != exact_determinant(vandermonde_matrix(n))) {
                return "det n=" + std::to_string(n);
            }
            for (int a = 0; a <= n; ++a) {
                const auto lam = vandermonde_select(n, a);
                const RationalMatrix L = vandermonde_matrix(n);
                for (int b = 0; b <= n; ++b) {
                    Rational s = 0;
                    for (int l = 0; l <= n; ++l) {
                        s += lam[l] * L[l][b];
                    }
                    if (s != (a == b ? 1 : 0)) {
                        return "select r=" + std::to_string(n) + " a=" + std::to_string(a);
                    }
                }
            }
        }
        return std::string();
    });

    check("certificates verify (N=3)", [&] {
        const FunctorLibrary lib = build_library(3, 3);
        for (int K = 1; K <= 3; ++K) {
            for (const auto &p : partitions_of(K)) {
                if (!verify_certificate(decompose(p, lib), {1, 2, 3}).ok) {
                    return "partition of " + std::to_string(K) + " failed";
                }
            }
        }
        return std::string();
    });

    check("checker rejects a perturbed lambda", [&] {
        DecompositionCertificate cert = decompose(Partition({1, 1}), build_library(2, 2));
        cert.terms.front().lambda += 1;
        return verify_certificate(cert, {1, 2, 3}).ok ? std::string("mutant accepted") : std::string();
    });

    check("pipeline on a line bundle (n=1)", [&] {
        const FormalBundle E = FormalBundle::parse("x");
        const PairingData data(1, GradedClass::constant(pontryagin_universe(0), 1, 1), {{"x", 1}});
        const PipelineResult r = comparison_pipeline(E, data, Partition({1}), 1);
        const FormalBundle out = evaluate_functor(r.functor, {E});
        if (ahat_pairing(out, data).is_zero() || r.c != Rational(1, 2)) {
            return std::string("unexpected pipeline output");
        }
        if (bound_constant(r.functor).constant > 1 / r.c) {
            return std::string("bound constant exceeds 1/c");
        }
        return std::string();
    });

    check("Hopf witness", [&] {
        for (const Rational R : {Rational(1), Rational(2), Rational(3), Rational(7, 2)}) {
            const SphereLineBundle b(R);
            if (hopf_curvature_norm(b) * acw_lower_bound(b, 2).bound != 1 || hopf_curvature_norm(b) != 1 / (2 * R * R)) {
                return "R=" + to_string(R);
            }
        }
        return std::string();
    });

    check("Kronecker norm inequality", [&] {
        for (int d = 1; d <= 4; ++d) {
            const NormSample s = kron_norm_check(d, 5 - d, 25, seed + d);
            if (s.max_ratio > 1 + 1e-9 || s.max_identity_defect > 1e-9) {
                return "dimension " + std::to_string(d);
            }
        }
        return std::string();
    });

    return out;
}

} // namespace cowaist
