#pragma once

// Decomposition certificates: prod c_{a_l}(E) = sum_i lambda_i ch_K(J_i(E)).
//
// The Chern product is first rewritten as a polynomial in ch_1..ch_N (Newton),
// then each ch-monomial ch_{b_1} ch_{b_2} ... is peeled one factor at a time:
//
//   ch_a(E) ch_K1(J(E)) = sum_l mu_l ch_{a+K1}(psi_l(E) (x) J(E)),  l = 1..a+K1+1,
//
// where mu = vandermonde_select(a+K1, a) and psi_l is expanded into wedge
// monomials. Everything is checked afterwards against the splitting oracle.

#include "adams.hpp"
#include "functor_expr.hpp"
#include "graded_class.hpp"
#include "splitting.hpp"
#include "vandermonde.hpp"

#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cowaist
{

struct CertificateTerm {
    Rational lambda;
    FunctorExpr functor;
};

/// Merges terms with equal functors, drops zeros, orders by canonical JSON text.
inline std::vector<CertificateTerm> canonical_terms(const std::vector<CertificateTerm> &terms)
{
    std::map<std::string, CertificateTerm> merged;
    for (const auto &t : terms) {
        auto [it, inserted] = merged.try_emplace(functor_to_json(t.functor), t);
        if (!inserted) {
            it->second.lambda += t.lambda;
        }
    }
    std::vector<CertificateTerm> out;
    for (auto &[text, t] : merged) {
        if (!t.lambda.is_zero()) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

// --- product splitting ---------------------------------------------------------

/// ch_a(F1) ch_K1(F2) as a combination of ch_{a+K1}(M(F1) (x) F2) over the wedge
/// monomials M of psi_1..psi_{a+K1+1}. F1 is slot `e_slot`, F2 is the functor `second`.
inline std::vector<CertificateTerm> split_pair(int a, int K1, const FunctorExpr &second, int e_slot = 0)
{
    const int r = a + K1;
    const std::vector<Rational> mu = vandermonde_select(r, a);
    std::vector<CertificateTerm> out;
    for (int l = 1; l <= r + 1; ++l) {
        const Rational &w = mu[static_cast<std::size_t>(l - 1)];
        if (w.is_zero()) {
            continue;
        }
        for (const auto &[mono, c] : adams_coefficients(l)) {
            out.push_back({w * Rational(c), FunctorExpr::tensor(wedge_monomial_functor(mono, e_slot), second)});
        }
    }
    return canonical_terms(out);
}

struct ProductSplit {
    int i = 0;
    int j = 0;
    std::vector<Rational> node_weights;  // lambda_l for the templates psi_l(F1) (x) F2, l = 1..i+j+1
    std::vector<CertificateTerm> terms;  // flattened honest two-slot functors
};

/// ch_i(F1) ch_j(F2) = sum_l lambda_l ch_{i+j}(psi_l(F1) (x) F2); F1 in slot 0, F2 in slot 1.
inline ProductSplit product_split(int i, int j)
{
    if (i < 1 || j < 1) {
        throw usage_error("product_split needs i, j >= 1");
    }
    ProductSplit s;
    s.i = i;
    s.j = j;
    s.node_weights = vandermonde_select(i + j, i);
    s.terms = split_pair(i, j, FunctorExpr::identity(1), 0);
    return s;
}

// --- functor library -------------------------------------------------------------

/// Nested functor sets C^1 = {I} and C^{v+1} = C^v u { M(E) (x) J : J in C^v }, where M
/// runs over the wedge monomials of psi_l for l <= N+1 (none when N = 1).
///
/// Levels grow geometrically, so membership and the bound supremum are answered
/// structurally; enumerate() materializes a level when it is small enough.
class FunctorLibrary
{
public:
    FunctorLibrary(int N, int depth) : N_(N), depth_(depth)
    {
        if (N < 1 || depth < 1) {
            throw usage_error("library needs N >= 1 and at least one level");
        }
        const int max_l = N >= 2 ? N + 1 : 0;
        for (int l = 1; l <= max_l; ++l) {
            for (const auto &[mono, c] : adams_coefficients(l)) {
                const FunctorExpr f = wedge_monomial_functor(mono);
                if (monomial_keys_.insert(f.key()).second) {
                    monomials_.push_back(f);
                }
            }
        }
    }

    int N() const { return N_; }
    int depth() const { return depth_; }
    const std::vector<FunctorExpr> &monomials() const { return monomials_; }

    /// Smallest level containing J, if any.
    std::optional<int> level_of(const FunctorExpr &J) const
    {
        if (J.op() == FunctorOp::Identity && J.slot() == 0) {
            return 1;
        }
        if (J.op() == FunctorOp::Tensor && monomial_keys_.count(J.left().key())) {
            if (auto inner = level_of(J.right()); inner && *inner < depth_) {
                return *inner + 1;
            }
        }
        return std::nullopt;
    }

    bool contains(const FunctorExpr &J, int level) const
    {
        auto l = level_of(J);
        return l && *l <= level;
    }

    BigInt level_size(int level) const
    {
        check_level(level);
        BigInt size = 0;
        BigInt power = 1;
        for (int v = 0; v < level; ++v) {
            size += power;
            power *= monomials_.size();
        }
        return size;
    }

    std::vector<FunctorExpr> enumerate(int level, std::size_t limit = 1'000'000) const
    {
        if (level_size(level) > limit) {
            throw usage_error("level " + std::to_string(level) + " has more than " + std::to_string(limit) +
                              " functors");
        }
        std::vector<FunctorExpr> all{FunctorExpr::identity(0)};
        std::vector<FunctorExpr> frontier = all;
        std::set<std::string> seen{all.front().key()};
        for (int v = 1; v < level; ++v) {
            std::vector<FunctorExpr> next;
            for (const auto &J : frontier) {
                for (const auto &M : monomials_) {
                    FunctorExpr G = FunctorExpr::tensor(M, J);
                    if (seen.insert(G.key()).second) {
                        next.push_back(G);
                    }
                }
            }
            all.insert(all.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        return all;
    }

    /// A_N at a level: max over the level of bound_constant, via the level recursion.
    Rational sup_bound_constant(int level) const
    {
        check_level(level);
        Rational step = 0;
        for (const auto &M : monomials_) {
            step = std::max(step, bound_constant(M).constant);
        }
        // bound(M (x) J) = bound(M) + bound(J) and bound(I) = 1.
        return 1 + step * (level - 1);
    }

private:
    void check_level(int level) const
    {
        if (level < 1 || level > depth_) {
            throw usage_error("library level " + std::to_string(level) + " outside [1, " + std::to_string(depth_) +
                              "]");
        }
    }

    int N_;
    int depth_;
    std::vector<FunctorExpr> monomials_;
    std::set<std::string> monomial_keys_;
};

inline FunctorLibrary build_library(int N, int max_parts) { return FunctorLibrary(N, max_parts); }

inline Rational sup_bound_constant(const FunctorLibrary &library, int level)
{
    return library.sup_bound_constant(level);
}

// --- certificates ------------------------------------------------------------------

struct DecompositionCertificate {
    int N = 0;
    Partition partition{std::vector<int>{1}};
    std::vector<CertificateTerm> terms;
    int generator_level = 1;        // which C_N^v the functors come from
    std::vector<int> verified_ranks; // ranks at which verify_certificate passed

    int weight() const { return partition.sum(); }
};

class insufficient_level : public usage_error
{
public:
    insufficient_level(int required, int available)
        : usage_error("insufficient level: decomposition needs level " + std::to_string(required) +
                      " but the library has " + std::to_string(available)),
          required_(required)
    {
    }
    int required() const { return required_; }

private:
    int required_;
};

inline std::string ch_generator_name(int i) { return "ch" + std::to_string(i); }

/// prod c_{a_l} as a polynomial in the symbols ch_1..ch_K (weight of ch_i is i).
inline GradedClass chern_product_in_ch(const Partition &p)
{
    const int K = p.sum();
    std::vector<Generator> gens;
    for (int i = 1; i <= K; ++i) {
        gens.push_back({ch_generator_name(i), i});
    }
    const Universe u = make_universe(gens);
    std::vector<GradedClass> ch_parts{GradedClass(u, K)};
    for (int i = 1; i <= K; ++i) {
        ch_parts.push_back(GradedClass::generator(u, K, ch_generator_name(i)));
    }
    const auto c = chern_from_ch(ch_parts, 0);
    GradedClass product = GradedClass::constant(u, K, 1);
    for (int a : p.parts()) {
        product *= c[static_cast<std::size_t>(a)];
    }
    return product.component(K);
}

namespace detail
{

class Decomposer
{
public:
    // Certificate for the ch-monomial with the given parts (ascending).
    const std::vector<CertificateTerm> &monomial(const std::vector<int> &parts)
    {
        if (auto it = memo_.find(parts); it != memo_.end()) {
            return it->second;
        }
        std::vector<CertificateTerm> out;
        if (parts.size() == 1) {
            out.push_back({1, FunctorExpr::identity(0)});
        } else {
            const int a0 = parts.front();
            const std::vector<int> rest(parts.begin() + 1, parts.end());
            int K1 = 0;
            for (int b : rest) {
                K1 += b;
            }
            std::vector<CertificateTerm> acc;
            for (const auto &[lambda, J] : monomial(rest)) {
                for (const auto &t : split_pair(a0, K1, J)) {
                    acc.push_back({lambda * t.lambda, t.functor});
                }
            }
            out = canonical_terms(acc);
        }
        return memo_.emplace(parts, std::move(out)).first->second;
    }

private:
    std::map<std::vector<int>, std::vector<CertificateTerm>> memo_;
};

} // namespace detail

inline DecompositionCertificate decompose(const Partition &partition, const FunctorLibrary &library)
{
    const int K = partition.sum();
    if (K > library.N()) {
        throw usage_error("partition weight " + std::to_string(K) + " exceeds N = " + std::to_string(library.N()));
    }
    const GradedClass chern = chern_product_in_ch(partition);
    const GeneratorSet &gens = *chern.universe();

    std::vector<std::pair<Rational, std::vector<int>>> monomials;
    int required = 1;
    for (const auto &[m, c] : chern.terms()) {
        std::vector<int> parts;
        for (std::size_t g = 0; g < m.exps.size(); ++g) {
            parts.insert(parts.end(), m.exps[g], gens[g].weight);
        }
        std::sort(parts.begin(), parts.end());
        required = std::max(required, static_cast<int>(parts.size()));
        monomials.emplace_back(c, std::move(parts));
    }
    if (required > library.depth()) {
        throw insufficient_level(required, library.depth());
    }

    detail::Decomposer dec;
    std::vector<CertificateTerm> acc;
    for (const auto &[coef, parts] : monomials) {
        for (const auto &t : dec.monomial(parts)) {
            acc.push_back({coef * t.lambda, t.functor});
        }
    }

    DecompositionCertificate cert;
    cert.N = library.N();
    cert.partition = partition;
    cert.terms = canonical_terms(acc);
    cert.generator_level = required;
    for (const auto &t : cert.terms) {
        if (!library.contains(t.functor, required)) {
            throw std::logic_error("decompose produced a functor outside the library: " + t.functor.key());
        }
    }
    return cert;
}

struct RankResidual {
    int rank = 0;
    GradedClass residual;
};

struct VerificationReport {
    bool ok = true;
    std::vector<RankResidual> residuals; // one per rank, zero when the identity holds
};

/// LHS prod c_{a_l}(E) for the generic rank-r bundle, as a weight-K class.
inline GradedClass chern_product(const FormalBundle &E, const Partition &p)
{
    const int K = p.sum();
    GradedClass out = GradedClass::constant(E.universe(), K, 1);
    for (int a : p.parts()) {
        GradedClass lifted(E.universe(), K);
        const GradedClass ca = chern_class(E, a);
        for (const auto &[m, c] : ca.terms()) {
            lifted.add_term(m, c);
        }
        out *= lifted;
    }
    return out;
}

inline RankResidual certificate_residual(const DecompositionCertificate &cert, int rank)
{
    const int K = cert.weight();
    const FormalBundle E = FormalBundle::generic(rank);
    GradedClass residual = chern_product(E, cert.partition);
    BatchEvaluator eval({E});
    for (const auto &t : cert.terms) {
        residual -= chern_character_component(eval(t.functor), K) * t.lambda;
    }
    return {rank, std::move(residual)};
}

/// Checks the identity exactly at each rank via the splitting oracle.
inline VerificationReport verify_certificate(const DecompositionCertificate &cert, const std::vector<int> &ranks,
                                             bool parallel = true)
{
    for (int r : ranks) {
        if (r < 1) {
            throw usage_error("ranks must be positive");
        }
    }
    VerificationReport report;
    if (parallel && ranks.size() > 1) {
        std::vector<std::future<RankResidual>> jobs;
        for (int r : ranks) {
            jobs.push_back(std::async(std::launch::async, [&cert, r] { return certificate_residual(cert, r); }));
        }
        for (auto &j : jobs) {
            report.residuals.push_back(j.get());
        }
    } else {
        for (int r : ranks) {
            report.residuals.push_back(certificate_residual(cert, r));
        }
    }
    for (const auto &rr : report.residuals) {
        report.ok = report.ok && rr.residual.is_zero();
    }
    return report;
}

// --- cc-cert-v1 ----------------------------------------------------------------------

inline constexpr const char *certificate_version = "cc-cert-v1";

inline ojson certificate_to_json(const DecompositionCertificate &cert)
{
    ojson j;
    j["version"] = certificate_version;
    j["N"] = cert.N;
    j["partition"] = cert.partition.parts();
    j["generator_level"] = cert.generator_level;
    ojson terms = ojson::array();
    for (const auto &t : cert.terms) {
        ojson term;
        term["lambda"] = to_string(t.lambda);
        term["functor"] = functor_to_ojson(t.functor);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    j["verified_ranks"] = cert.verified_ranks;
    return j;
}

inline DecompositionCertificate certificate_from_json(const ojson &j)
{
    if (!j.is_object()) {
        throw parse_error("/", "expected a certificate object");
    }
    detail::expect_keys(j, {"version", "N", "partition", "generator_level", "terms", "verified_ranks"}, "/");
    if (!j.contains("version") || j["version"] != certificate_version) {
        throw parse_error("/version", "expected \"" + std::string(certificate_version) + "\"");
    }
    DecompositionCertificate cert;
    cert.N = detail::int_field(j, "N", "/");
    if (!j.contains("partition") || !j["partition"].is_array()) {
        throw parse_error("/partition", "expected an array of positive integers");
    }
    std::vector<int> parts;
    for (std::size_t i = 0; i < j["partition"].size(); ++i) {
        const auto &p = j["partition"][i];
        if (!p.is_number_integer() || p.get<long long>() < 1 || p.get<long long>() > 1000) {
            throw parse_error("/partition/" + std::to_string(i), "expected a positive integer");
        }
        parts.push_back(p.get<int>());
    }
    if (parts.empty()) {
        throw parse_error("/partition", "empty partition");
    }
    cert.partition = Partition(parts);
    if (j.contains("generator_level")) {
        cert.generator_level = detail::int_field(j, "generator_level", "/");
    }
    if (!j.contains("terms") || !j["terms"].is_array()) {
        throw parse_error("/terms", "expected an array");
    }
    for (std::size_t i = 0; i < j["terms"].size(); ++i) {
        const auto &t = j["terms"][i];
        const std::string path = "/terms/" + std::to_string(i);
        if (!t.is_object() || !t.contains("lambda") || !t["lambda"].is_string()) {
            throw parse_error(path, "expected {\"lambda\": \"p/q\", \"functor\": {...}}");
        }
        detail::expect_keys(t, {"lambda", "functor"}, path);
        Rational lambda;
        try {
            lambda = parse_rational(t["lambda"].get<std::string>());
        } catch (const usage_error &e) {
            throw parse_error(path + "/lambda", e.what());
        }
        cert.terms.push_back({lambda, functor_from_json(detail::object_field(t, "functor", path), path + "/functor")});
    }
    if (j.contains("verified_ranks")) {
        if (!j["verified_ranks"].is_array()) {
            throw parse_error("/verified_ranks", "expected an array");
        }
        for (const auto &r : j["verified_ranks"]) {
            if (!r.is_number_integer()) {
                throw parse_error("/verified_ranks", "expected integers");
            }
            cert.verified_ranks.push_back(r.get<int>());
        }
    }
    return cert;
}

inline DecompositionCertificate parse_certificate(const std::string &text)
{
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw parse_error("byte " + std::to_string(e.byte), "invalid JSON");
    }
    return certificate_from_json(j);
}

} // namespace cowaist
