#pragma once

// Splitting-principle oracle. A bundle is a multiset of formal Chern roots
// (integer linear forms in weight-1 generators); characteristic classes of
// any admissible functor image are read off the root multiset.

#include "functor_expr.hpp"
#include "graded_class.hpp"

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cowaist
{

using LinearForm = std::vector<long long>;

class FormalBundle
{
public:
    using RootMap = std::map<LinearForm, BigInt>;

    explicit FormalBundle(Universe universe) : universe_(std::move(universe))
    {
        for (const auto &g : universe_->generators()) {
            if (g.weight != 1) {
                throw usage_error("root generator '" + g.name + "' must have weight 1");
            }
        }
    }

    FormalBundle(Universe universe, const std::vector<LinearForm> &roots) : FormalBundle(std::move(universe))
    {
        for (const auto &r : roots) {
            add_root(r, 1);
        }
    }

    /// Rank-r bundle with independent roots x1..xr.
    static FormalBundle generic(int rank)
    {
        std::vector<Generator> gens;
        for (int i = 1; i <= rank; ++i) {
            gens.push_back({"x" + std::to_string(i), 1});
        }
        FormalBundle b(make_universe(gens));
        for (int i = 1; i <= rank; ++i) {
            LinearForm f(b.universe_->size(), 0);
            f[*b.universe_->index_of("x" + std::to_string(i))] = 1;
            b.add_root(f, 1);
        }
        return b;
    }

    /// Parses "x1, -x1+2*x2, 0" into a bundle over the named generators.
    static FormalBundle parse(std::string_view text);

    void add_root(const LinearForm &form, const BigInt &multiplicity)
    {
        if (form.size() != universe_->size()) {
            throw usage_error("root has wrong number of coordinates");
        }
        if (multiplicity == 0) {
            return;
        }
        roots_[form] += multiplicity;
        rank_ += multiplicity;
    }

    const Universe &universe() const { return universe_; }
    const BigInt &rank() const { return rank_; }
    const RootMap &roots() const { return roots_; }
    std::size_t distinct_roots() const { return roots_.size(); }

    /// Same roots over a superset universe.
    FormalBundle embedded(const Universe &target) const
    {
        if (same_universe(universe_, target)) {
            FormalBundle out = *this;
            out.universe_ = target;
            return out;
        }
        std::vector<std::size_t> map(universe_->size());
        for (std::size_t i = 0; i < universe_->size(); ++i) {
            const auto idx = target->index_of((*universe_)[i].name);
            if (!idx) {
                throw usage_error("target universe lacks generator '" + (*universe_)[i].name + "'");
            }
            map[i] = *idx;
        }
        FormalBundle out(target);
        for (const auto &[form, m] : roots_) {
            LinearForm t(target->size(), 0);
            for (std::size_t i = 0; i < form.size(); ++i) {
                t[map[i]] = form[i];
            }
            out.add_root(t, m);
        }
        return out;
    }

    std::string render_root(const LinearForm &form) const
    {
        std::string out;
        for (std::size_t i = 0; i < form.size(); ++i) {
            const long long c = form[i];
            if (c == 0) {
                continue;
            }
            if (c < 0) {
                out += "-";
            } else if (!out.empty()) {
                out += "+";
            }
            if (c != 1 && c != -1) {
                out += std::to_string(c < 0 ? -c : c) + "*";
            }
            out += (*universe_)[i].name;
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const FormalBundle &a, const FormalBundle &b)
    {
        return same_universe(a.universe_, b.universe_) && a.roots_ == b.roots_;
    }

private:
    Universe universe_;
    RootMap roots_;
    BigInt rank_ = 0;
};

inline FormalBundle FormalBundle::parse(std::string_view text)
{
    // Pass 1: split into root strings and collect generator names.
    std::vector<std::string> pieces;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            pieces.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    pieces.push_back(cur);

    using Parsed = std::vector<std::pair<std::string, long long>>;
    std::vector<Parsed> parsed;
    std::vector<Generator> gens;
    for (const auto &piece : pieces) {
        if (piece.empty()) {
            throw usage_error("empty root in bundle spec '" + std::string(text) + "'");
        }
        Parsed terms;
        std::size_t i = 0;
        if (piece == "0") {
            parsed.push_back(terms);
            continue;
        }
        while (i < piece.size()) {
            long long sign = 1;
            if (piece[i] == '+' || piece[i] == '-') {
                sign = piece[i] == '-' ? -1 : 1;
                ++i;
            } else if (i != 0) {
                throw usage_error("expected sign at position " + std::to_string(i) + " of root '" + piece + "'");
            }
            long long coef = 1;
            if (i < piece.size() && std::isdigit(static_cast<unsigned char>(piece[i]))) {
                std::size_t j = i;
                while (j < piece.size() && std::isdigit(static_cast<unsigned char>(piece[j]))) {
                    ++j;
                }
                coef = std::stoll(piece.substr(i, j - i));
                i = j;
                if (i >= piece.size() || piece[i] != '*') {
                    throw usage_error("expected '*' at position " + std::to_string(i) + " of root '" + piece + "'");
                }
                ++i;
            }
            std::size_t j = i;
            while (j < piece.size() && (std::isalnum(static_cast<unsigned char>(piece[j])) || piece[j] == '_')) {
                ++j;
            }
            if (j == i || !std::isalpha(static_cast<unsigned char>(piece[i]))) {
                throw usage_error("expected generator name at position " + std::to_string(i) + " of root '" +
                                  piece + "'");
            }
            std::string name = piece.substr(i, j - i);
            gens.push_back({name, 1});
            terms.emplace_back(std::move(name), sign * coef);
            i = j;
        }
        parsed.push_back(std::move(terms));
    }

    FormalBundle b(make_universe(gens));
    for (const auto &terms : parsed) {
        LinearForm f(b.universe_->size(), 0);
        for (const auto &[name, c] : terms) {
            f[*b.universe_->index_of(name)] += c;
        }
        b.add_root(f, 1);
    }
    return b;
}

/// Bundle with every root multiplied by k: the split-bundle picture of psi_k.
inline FormalBundle scale_roots(const FormalBundle &b, long long k)
{
    FormalBundle out(b.universe());
    for (const auto &[root, m] : b.roots()) {
        LinearForm form = root;
        for (auto &c : form) {
            c *= k;
        }
        out.add_root(form, m);
    }
    return out;
}

// --- functor evaluation ----------------------------------------------------

namespace detail
{

inline LinearForm add_forms(const LinearForm &a, const LinearForm &b, long long scale_b = 1)
{
    LinearForm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + scale_b * b[i];
    }
    return r;
}

inline FormalBundle exterior_power(const FormalBundle &b, int k)
{
    const std::size_t n = b.universe()->size();
    FormalBundle out(b.universe());
    if (k == 0) {
        out.add_root(LinearForm(n, 0), 1);
        return out;
    }
    if (b.rank() < k) {
        return out;
    }
    // layer[j] holds the multiset of j-element sub-multiset sums seen so far.
    std::vector<std::map<LinearForm, BigInt>> layer(k + 1);
    layer[0][LinearForm(n, 0)] = 1;
    for (const auto &[form, m] : b.roots()) {
        auto next = layer;
        for (int j = 0; j < k; ++j) {
            for (const auto &[sum, count] : layer[j]) {
                for (int t = 1; j + t <= k && m >= t; ++t) {
                    next[j + t][add_forms(sum, form, t)] += count * binomial(m, static_cast<unsigned>(t));
                }
            }
        }
        layer = std::move(next);
    }
    for (const auto &[sum, count] : layer[k]) {
        out.add_root(sum, count);
    }
    return out;
}

class FunctorEvaluator
{
public:
    explicit FunctorEvaluator(const std::vector<FormalBundle> &args) : args_(args) {}

    const FormalBundle &eval(const FunctorExpr &f)
    {
        if (auto it = memo_.find(f.key()); it != memo_.end()) {
            return it->second;
        }
        return memo_.emplace(f.key(), compute(f)).first->second;
    }

private:
    FormalBundle compute(const FunctorExpr &f)
    {
        const Universe &u = args_.front().universe();
        switch (f.op()) {
        case FunctorOp::Identity:
            return args_.at(static_cast<std::size_t>(f.slot()));
        case FunctorOp::Trivial: {
            FormalBundle out(u);
            out.add_root(LinearForm(u->size(), 0), f.k());
            return out;
        }
        case FunctorOp::Dual: {
            FormalBundle out(u);
            for (const auto &[root, m] : eval(f.child()).roots()) {
                LinearForm form = root;
                for (auto &c : form) {
                    c = -c;
                }
                out.add_root(form, m);
            }
            return out;
        }
        case FunctorOp::Wedge:
            return exterior_power(eval(f.child()), f.k());
        case FunctorOp::DirectSum: {
            FormalBundle out = eval(f.left());
            for (const auto &[form, m] : eval(f.right()).roots()) {
                out.add_root(form, m);
            }
            return out;
        }
        case FunctorOp::Tensor: {
            const FormalBundle &l = eval(f.left());
            const FormalBundle &r = eval(f.right());
            FormalBundle out(u);
            for (const auto &[fl, ml] : l.roots()) {
                for (const auto &[fr, mr] : r.roots()) {
                    out.add_root(add_forms(fl, fr), ml * mr);
                }
            }
            return out;
        }
        }
        throw usage_error("unknown functor node");
    }

    const std::vector<FormalBundle> &args_;
    std::unordered_map<std::string, FormalBundle> memo_;
};

} // namespace detail

/// Bundles brought over one common universe.
inline std::vector<FormalBundle> unify_bundles(const std::vector<FormalBundle> &args)
{
    if (args.empty()) {
        return args;
    }
    Universe u = args.front().universe();
    for (const auto &b : args) {
        u = merge_universes(u, b.universe());
    }
    std::vector<FormalBundle> out;
    out.reserve(args.size());
    for (const auto &b : args) {
        out.push_back(b.embedded(u));
    }
    return out;
}

/// Root multiset of J(args). Arguments beyond J's arity are allowed and unused.
inline FormalBundle evaluate_functor(const FunctorExpr &J, const std::vector<FormalBundle> &args)
{
    if (static_cast<int>(args.size()) < J.arity() || args.empty()) {
        throw usage_error("functor of arity " + std::to_string(J.arity()) + " applied to " +
                          std::to_string(args.size()) + " bundles");
    }
    const auto unified = unify_bundles(args);
    detail::FunctorEvaluator ev(unified);
    return ev.eval(J);
}

/// Evaluates many functors on the same arguments, sharing common subtrees.
class BatchEvaluator
{
public:
    explicit BatchEvaluator(const std::vector<FormalBundle> &args) : args_(unify_bundles(args)), ev_(args_) {}

    const FormalBundle &operator()(const FunctorExpr &J)
    {
        if (static_cast<int>(args_.size()) < J.arity()) {
            throw usage_error("functor of arity " + std::to_string(J.arity()) + " applied to " +
                              std::to_string(args_.size()) + " bundles");
        }
        return ev_.eval(J);
    }

private:
    std::vector<FormalBundle> args_;
    detail::FunctorEvaluator ev_;
};

// --- characteristic classes ------------------------------------------------

namespace detail
{

// Adds sum over roots of m * form^alpha / alpha! for every |alpha| in [lo, hi].
inline void accumulate_exponential(const FormalBundle &b, int lo, int hi, GradedClass &out)
{
    const GeneratorSet &gens = *b.universe();
    const std::size_t n = gens.size();
    std::map<std::vector<unsigned>, BigInt> sums;
    std::vector<unsigned> alpha(n, 0);
    for (const auto &[form, m] : b.roots()) {
        auto rec = [&](auto &&self, std::size_t i, int used, const BigInt &prod) -> void {
            if (i == n) {
                if (used >= lo) {
                    sums[alpha] += prod;
                }
                return;
            }
            BigInt p = prod;
            for (int e = 0; used + e <= hi; ++e) {
                alpha[i] = static_cast<unsigned>(e);
                self(self, i + 1, used + e, p);
                if (form[i] == 0) {
                    break;
                }
                p *= form[i];
            }
            alpha[i] = 0;
        };
        rec(rec, 0, 0, m);
    }
    for (const auto &[a, s] : sums) {
        if (s == 0) {
            continue;
        }
        BigInt denom = 1;
        int w = 0;
        for (unsigned e : a) {
            denom *= factorial(e);
            w += static_cast<int>(e);
        }
        out.add_term(Monomial{w, a}, Rational(s, denom));
    }
}

} // namespace detail

/// ch(b) = sum over roots of exp(root), truncated at weight N.
inline GradedClass chern_character(const FormalBundle &b, int N)
{
    GradedClass out(b.universe(), N);
    detail::accumulate_exponential(b, 0, N, out);
    return out;
}

/// Weight-w part ch_w(b) only, as a class truncated at w.
inline GradedClass chern_character_component(const FormalBundle &b, int w)
{
    GradedClass out(b.universe(), w);
    detail::accumulate_exponential(b, w, w, out);
    return out;
}

/// Weight-i part of prod (1 + root)^m, i.e. e_i of the roots; zero for i > rank.
inline GradedClass chern_class(const FormalBundle &b, int i)
{
    if (i < 0) {
        throw usage_error("Chern class index must be non-negative");
    }
    const Universe &u = b.universe();
    GradedClass total = GradedClass::constant(u, i, 1);
    if (b.rank() < i) {
        return GradedClass(u, i);
    }
    for (const auto &[form, m] : b.roots()) {
        GradedClass root(u, i);
        Monomial mono = root.unit_monomial();
        for (std::size_t g = 0; g < form.size(); ++g) {
            if (form[g] != 0) {
                Monomial x = root.unit_monomial();
                x.exps[g] = 1;
                x.weight = 1;
                root.add_term(x, Rational(form[g]));
            }
        }
        // (1 + root)^m truncated at weight i.
        GradedClass factor = GradedClass::constant(u, i, 1);
        GradedClass power = factor;
        for (int j = 1; j <= i && m >= j; ++j) {
            power *= root;
            factor += power * Rational(binomial(m, static_cast<unsigned>(j)));
        }
        total *= factor;
    }
    return total.component(i);
}

/// Total Chern class prod (1 + root), truncated at N.
inline GradedClass total_chern_class(const FormalBundle &b, int N)
{
    GradedClass out(b.universe(), N);
    for (int i = 0; i <= N; ++i) {
        const GradedClass ci = chern_class(b, i);
        for (const auto &[m, c] : ci.terms()) {
            out.add_term(m, c);
        }
    }
    return out;
}

// --- Newton conversions ----------------------------------------------------

/// Chern classes c_0..c_N from ch_0..ch_N via e_k = (1/k) sum (-1)^{i-1} e_{k-i} p_i, p_i = i! ch_i.
/// The rank only fixes c_0 = 1 and is checked against ch_0 when ch_0 is constant.
inline std::vector<GradedClass> chern_from_ch(const std::vector<GradedClass> &ch_parts, int rank)
{
    if (ch_parts.empty()) {
        throw usage_error("chern_from_ch needs at least ch_0");
    }
    const Universe &u = ch_parts.front().universe();
    const int N = static_cast<int>(ch_parts.size()) - 1;
    const int trunc = ch_parts.front().truncation();
    if (!ch_parts[0].is_zero() && ch_parts[0] != GradedClass::constant(u, trunc, rank)) {
        throw usage_error("ch_0 does not match the rank");
    }
    std::vector<GradedClass> p;
    p.reserve(ch_parts.size());
    for (int i = 0; i <= N; ++i) {
        p.push_back(ch_parts[i] * Rational(factorial(static_cast<unsigned>(i))));
    }
    std::vector<GradedClass> e{GradedClass::constant(u, trunc, 1)};
    for (int k = 1; k <= N; ++k) {
        GradedClass acc(u, trunc);
        for (int i = 1; i <= k; ++i) {
            const GradedClass t = e[k - i] * p[i];
            if (i % 2 == 1) {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push_back(acc * Rational(1, k));
    }
    return e;
}

/// ch_0..ch_N from c_0..c_N via p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k; ch_0 = rank.
inline std::vector<GradedClass> ch_from_chern(const std::vector<GradedClass> &chern_parts, int rank)
{
    if (chern_parts.empty()) {
        throw usage_error("ch_from_chern needs at least c_0");
    }
    const Universe &u = chern_parts.front().universe();
    const int N = static_cast<int>(chern_parts.size()) - 1;
    const int trunc = chern_parts.front().truncation();
    std::vector<GradedClass> p{GradedClass::constant(u, trunc, rank)};
    for (int k = 1; k <= N; ++k) {
        GradedClass acc = chern_parts[k] * Rational(k % 2 == 1 ? k : -k);
        for (int i = 1; i < k; ++i) {
            const GradedClass t = chern_parts[i] * p[k - i];
            if (i % 2 == 1) {
                acc += t;
            } else {
                acc -= t;
            }
        }
        p.push_back(acc);
    }
    std::vector<GradedClass> ch;
    for (int k = 0; k <= N; ++k) {
        ch.push_back(p[k] * Rational(1, factorial(static_cast<unsigned>(k))));
    }
    return ch;
}

// --- A-hat ------------------------------------------------------------------

namespace detail
{

using Series = std::vector<Rational>;

inline Series series_mul(const Series &a, const Series &b, std::size_t len)
{
    Series r(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// Coefficients s_m of log f(z), f(z) = (sqrt(z)/2) / sinh(sqrt(z)/2), m < len.
inline Series ahat_log_series(std::size_t len)
{
    // g(z) = sinh(u)/u with u^2 = z/4, so g = sum (z/4)^m / (2m+1)!; log f = -log g.
    Series h(len, 0); // g - 1
    for (std::size_t m = 1; m < len; ++m) {
        h[m] = Rational(1, factorial(static_cast<unsigned>(2 * m + 1)) * ipow(4, static_cast<unsigned>(m)));
    }
    Series log_g(len, 0);
    Series power(len, 0);
    power[0] = 1;
    for (std::size_t i = 1; i < len; ++i) {
        power = series_mul(power, h, len);
        const Rational sign(i % 2 == 1 ? 1 : -1);
        for (std::size_t m = 0; m < len; ++m) {
            log_g[m] += sign * power[m] / Rational(static_cast<long long>(i));
        }
    }
    for (auto &c : log_g) {
        c = -c;
    }
    return log_g;
}

} // namespace detail

/// Name of the i-th Pontryagin generator (weight 2i).
inline std::string pontryagin_name(int i) { return "p" + std::to_string(i); }

inline Universe pontryagin_universe(int count)
{
    std::vector<Generator> gens;
    for (int i = 1; i <= count; ++i) {
        gens.push_back({pontryagin_name(i), 2 * i});
    }
    return make_universe(gens);
}

/// prod_j (y_j/2)/sinh(y_j/2) over the given Pontryagin roots, truncated at N and
/// written in p_i = e_i(y_1^2, y_2^2, ...).
inline GradedClass ahat_series(const std::vector<std::string> &pontryagin_roots, int N)
{
    const int count = std::min(static_cast<int>(pontryagin_roots.size()), N / 2);
    const Universe u = pontryagin_universe(count);
    const std::size_t terms = static_cast<std::size_t>(N / 2) + 1;
    const detail::Series s = detail::ahat_log_series(terms);

    // Power sums P_m of the y_j^2 in terms of the p_i (Girard-Newton).
    std::vector<GradedClass> e{GradedClass::constant(u, N, 1)};
    for (int i = 1; i < static_cast<int>(terms); ++i) {
        e.push_back(i <= count ? GradedClass::generator(u, N, pontryagin_name(i)) : GradedClass(u, N));
    }
    std::vector<GradedClass> power_sums{GradedClass::constant(u, N, static_cast<long long>(pontryagin_roots.size()))};
    for (int k = 1; k < static_cast<int>(terms); ++k) {
        GradedClass acc = e[k] * Rational(k % 2 == 1 ? k : -k);
        for (int i = 1; i < k; ++i) {
            const GradedClass t = e[i] * power_sums[k - i];
            if (i % 2 == 1) {
                acc += t;
            } else {
                acc -= t;
            }
        }
        power_sums.push_back(acc);
    }

    GradedClass log_ahat(u, N);
    for (int m = 1; m < static_cast<int>(terms); ++m) {
        log_ahat += power_sums[m] * s[m];
    }
    return exp_nilpotent(log_ahat);
}

// --- integration --------------------------------------------------------------

/// Formal stand-in for integration over a closed 2n-manifold.
struct PairingData {
    int half_dimension = 0;
    GradedClass ahat_class;
    std::map<std::string, Rational> pairing; // weight-n monomial text -> value

    PairingData(int n, GradedClass ahat, std::map<std::string, Rational> table)
        : half_dimension(n), ahat_class(std::move(ahat)), pairing(std::move(table))
    {
        if (n < 1) {
            throw usage_error("half dimension must be positive");
        }
        if (ahat_class.truncation() < n) {
            throw usage_error("A-hat class must be truncated at weight >= n");
        }
        if (ahat_class.component(0) != GradedClass::constant(ahat_class.universe(), ahat_class.truncation(), 1)) {
            throw usage_error("A-hat class must have constant term 1");
        }
        for (const auto &[m, c] : ahat_class.terms()) {
            if (m.weight % 2 != 0) {
                throw usage_error("A-hat class has an odd-weight component");
            }
        }
    }
};

/// Applies the pairing table to the weight-n component; missing monomials pair to 0.
inline Rational integrate(const GradedClass &x, const PairingData &data)
{
    if (x.truncation() < data.half_dimension) {
        throw usage_error("class truncated below the top weight");
    }
    Rational total = 0;
    for (const auto &[m, c] : x.terms()) {
        if (m.weight != data.half_dimension) {
            continue;
        }
        if (auto it = data.pairing.find(x.render_monomial(m)); it != data.pairing.end()) {
            total += c * it->second;
        }
    }
    return total;
}

/// A-hat(M) ch(b) over the merged universe, truncated at n.
inline GradedClass ahat_times_ch(const FormalBundle &b, const PairingData &data)
{
    const int n = data.half_dimension;
    const Universe u = merge_universes(data.ahat_class.universe(), b.universe());
    const GradedClass ch = chern_character(b, n).embedded(u);
    return data.ahat_class.truncated(n).embedded(u) * ch;
}

inline Rational ahat_pairing(const FormalBundle &b, const PairingData &data)
{
    return integrate(ahat_times_ch(b, data), data);
}

} // namespace cowaist
