#pragma once

// Truncated graded-commutative polynomial algebra over Q.
//
// Weights are half topological degrees: ch_i sits at weight i, a Pontryagin
// class p_i at weight 2i. Every stored term has weight <= truncation().

#include "rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cowaist
{

struct Generator {
    std::string name;
    int weight = 1;

    friend bool operator==(const Generator &, const Generator &) = default;
};

/// Ordered set of named generators; index order is name order.
class GeneratorSet
{
public:
    GeneratorSet() = default;

    explicit GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens))
    {
        std::sort(gens_.begin(), gens_.end(),
                  [](const Generator &a, const Generator &b) { return a.name < b.name; });
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name.empty()) {
                throw usage_error("generator names must be non-empty");
            }
            if (gens_[i].weight <= 0) {
                throw usage_error("generator '" + gens_[i].name + "' needs a positive weight");
            }
            if (i > 0 && gens_[i].name == gens_[i - 1].name) {
                if (gens_[i].weight != gens_[i - 1].weight) {
                    throw usage_error("generator '" + gens_[i].name + "' declared with two weights");
                }
            }
        }
        gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    }

    std::size_t size() const { return gens_.size(); }
    const Generator &operator[](std::size_t i) const { return gens_[i]; }
    const std::vector<Generator> &generators() const { return gens_; }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        auto it = std::lower_bound(gens_.begin(), gens_.end(), name,
                                   [](const Generator &g, std::string_view n) { return g.name < n; });
        if (it == gens_.end() || it->name != name) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - gens_.begin());
    }

    friend bool operator==(const GeneratorSet &, const GeneratorSet &) = default;

private:
    std::vector<Generator> gens_;
};

using Universe = std::shared_ptr<const GeneratorSet>;

inline Universe make_universe(std::vector<Generator> gens)
{
    return std::make_shared<const GeneratorSet>(std::move(gens));
}

inline Universe merge_universes(const Universe &a, const Universe &b)
{
    if (a == b || *a == *b) {
        return a;
    }
    std::vector<Generator> all = a->generators();
    all.insert(all.end(), b->generators().begin(), b->generators().end());
    return make_universe(std::move(all));
}

inline bool same_universe(const Universe &a, const Universe &b) { return a == b || *a == *b; }

/// Exponent vector over a universe, tagged with its total weight.
struct Monomial {
    int weight = 0;
    std::vector<unsigned> exps;

    // Graded order: lighter first, then lexicographically larger exponents first.
    friend bool operator<(const Monomial &a, const Monomial &b)
    {
        if (a.weight != b.weight) {
            return a.weight < b.weight;
        }
        return a.exps > b.exps;
    }
    friend bool operator==(const Monomial &, const Monomial &) = default;
};

inline std::string render_monomial(const Monomial &m, const GeneratorSet &gens)
{
    std::string out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += gens[i].name;
        if (m.exps[i] > 1) {
            out += '^' + std::to_string(m.exps[i]);
        }
    }
    return out.empty() ? "1" : out;
}

/// Splits "p1*x1^2" into {(p1,1),(x1,2)}; "1" is the empty monomial.
inline std::vector<std::pair<std::string, unsigned>> parse_monomial_factors(std::string_view text)
{
    std::vector<std::pair<std::string, unsigned>> out;
    if (text == "1") {
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto star = text.find('*', pos);
        const auto piece = text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
        const auto caret = piece.find('^');
        std::string name(piece.substr(0, caret));
        unsigned e = 1;
        if (caret != std::string_view::npos) {
            const auto digits = piece.substr(caret + 1);
            if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw usage_error("malformed exponent in monomial '" + std::string(text) + "'");
            }
            e = static_cast<unsigned>(std::stoul(std::string(digits)));
        }
        if (name.empty() || e == 0) {
            throw usage_error("malformed monomial '" + std::string(text) + "' at position " + std::to_string(pos));
        }
        out.emplace_back(std::move(name), e);
        if (star == std::string_view::npos) {
            break;
        }
        pos = star + 1;
    }
    return out;
}

class GradedClass
{
public:
    using TermMap = std::map<Monomial, Rational>;

    GradedClass(Universe universe, int truncation) : universe_(std::move(universe)), truncation_(truncation)
    {
        if (truncation_ < 0) {
            throw usage_error("truncation weight must be non-negative");
        }
    }

    static GradedClass constant(Universe universe, int truncation, const Rational &value)
    {
        GradedClass out(std::move(universe), truncation);
        out.add_term(out.unit_monomial(), value);
        return out;
    }

    static GradedClass generator(Universe universe, int truncation, std::string_view name)
    {
        GradedClass out(std::move(universe), truncation);
        const auto idx = out.universe_->index_of(name);
        if (!idx) {
            throw usage_error("unknown generator '" + std::string(name) + "'");
        }
        Monomial m = out.unit_monomial();
        m.exps[*idx] = 1;
        m.weight = (*out.universe_)[*idx].weight;
        out.add_term(m, 1);
        return out;
    }

    /// Builds a class from "monomial" -> coefficient text pairs.
    static GradedClass from_terms(Universe universe, int truncation,
                                  const std::vector<std::pair<std::string, Rational>> &terms)
    {
        GradedClass out(std::move(universe), truncation);
        for (const auto &[text, coef] : terms) {
            out.add_term(out.parse_monomial(text), coef);
        }
        return out;
    }

    const Universe &universe() const { return universe_; }
    int truncation() const { return truncation_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Monomial unit_monomial() const { return Monomial{0, std::vector<unsigned>(universe_->size(), 0)}; }

    Monomial parse_monomial(std::string_view text) const
    {
        Monomial m = unit_monomial();
        for (const auto &[name, e] : parse_monomial_factors(text)) {
            const auto idx = universe_->index_of(name);
            if (!idx) {
                throw usage_error("unknown generator '" + name + "' in monomial '" + std::string(text) + "'");
            }
            m.exps[*idx] += e;
            m.weight += static_cast<int>(e) * (*universe_)[*idx].weight;
        }
        return m;
    }

    Rational coefficient(const Monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(std::string_view monomial_text) const { return coefficient(parse_monomial(monomial_text)); }

    /// Adds c*m in place; terms above the truncation weight are dropped.
    void add_term(const Monomial &m, const Rational &c)
    {
        if (m.weight > truncation_ || c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    GradedClass &operator+=(const GradedClass &y)
    {
        check_compatible(y);
        for (const auto &[m, c] : y.terms_) {
            add_term(m, c);
        }
        return *this;
    }

    GradedClass &operator-=(const GradedClass &y)
    {
        check_compatible(y);
        for (const auto &[m, c] : y.terms_) {
            add_term(m, -c);
        }
        return *this;
    }

    GradedClass &operator*=(const Rational &s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend GradedClass operator+(GradedClass x, const GradedClass &y) { return x += y; }
    friend GradedClass operator-(GradedClass x, const GradedClass &y) { return x -= y; }
    friend GradedClass operator*(GradedClass x, const Rational &s) { return x *= s; }
    friend GradedClass operator*(const Rational &s, GradedClass x) { return x *= s; }
    GradedClass operator-() const { return *this * Rational(-1); }

    friend GradedClass operator*(const GradedClass &x, const GradedClass &y)
    {
        x.check_compatible(y);
        GradedClass out(x.universe_, x.truncation_);
        const std::size_t n = x.universe_->size();
        for (const auto &[mx, cx] : x.terms_) {
            for (const auto &[my, cy] : y.terms_) {
                if (mx.weight + my.weight > x.truncation_) {
                    // y is sorted by weight, nothing heavier can survive.
                    break;
                }
                Monomial m{mx.weight + my.weight, std::vector<unsigned>(n)};
                for (std::size_t i = 0; i < n; ++i) {
                    m.exps[i] = mx.exps[i] + my.exps[i];
                }
                out.add_term(m, cx * cy);
            }
        }
        return out;
    }

    GradedClass &operator*=(const GradedClass &y) { return *this = *this * y; }

    friend bool operator==(const GradedClass &x, const GradedClass &y)
    {
        return x.truncation_ == y.truncation_ && same_universe(x.universe_, y.universe_) && x.terms_ == y.terms_;
    }

    /// Weight-w homogeneous part.
    GradedClass component(int w) const
    {
        if (w < 0 || w > truncation_) {
            throw usage_error("component weight " + std::to_string(w) + " outside [0, " +
                              std::to_string(truncation_) + "]");
        }
        GradedClass out(universe_, truncation_);
        for (const auto &[m, c] : terms_) {
            if (m.weight == w) {
                out.terms_.emplace_hint(out.terms_.end(), m, c);
            }
        }
        return out;
    }

    /// Same class with a lower (or equal) truncation weight.
    GradedClass truncated(int n) const
    {
        if (n > truncation_) {
            throw usage_error("cannot raise truncation weight from " + std::to_string(truncation_) + " to " +
                              std::to_string(n));
        }
        GradedClass out(universe_, n);
        for (const auto &[m, c] : terms_) {
            out.add_term(m, c);
        }
        return out;
    }

    /// Same terms under a different truncation weight (raising is allowed).
    GradedClass retruncated(int n) const
    {
        if (n < 0) {
            throw usage_error("truncation weight must be non-negative");
        }
        GradedClass out(universe_, n);
        for (const auto &[m, c] : terms_) {
            out.add_term(m, c);
        }
        return out;
    }

    /// Re-expresses the class over a superset universe.
    GradedClass embedded(const Universe &target) const
    {
        if (same_universe(universe_, target)) {
            GradedClass out = *this;
            out.universe_ = target;
            return out;
        }
        std::vector<std::size_t> map(universe_->size());
        for (std::size_t i = 0; i < universe_->size(); ++i) {
            const auto idx = target->index_of((*universe_)[i].name);
            if (!idx || (*target)[*idx].weight != (*universe_)[i].weight) {
                throw usage_error("target universe lacks generator '" + (*universe_)[i].name + "'");
            }
            map[i] = *idx;
        }
        GradedClass out(target, truncation_);
        for (const auto &[m, c] : terms_) {
            Monomial t{m.weight, std::vector<unsigned>(target->size(), 0)};
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                t.exps[map[i]] = m.exps[i];
            }
            out.terms_.emplace(std::move(t), c);
        }
        return out;
    }

    std::string render_monomial(const Monomial &m) const { return cowaist::render_monomial(m, *universe_); }

    /// Canonical text, e.g. "2 + 1/2*x^2 - 1/24*p1".
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[m, c] : terms_) {
            Rational mag = c;
            if (!first) {
                out += c < 0 ? " - " : " + ";
                if (c < 0) {
                    mag = -c;
                }
            }
            out += cowaist::to_string(mag);
            if (m.weight > 0 || std::any_of(m.exps.begin(), m.exps.end(), [](unsigned e) { return e != 0; })) {
                out += '*' + render_monomial(m);
            }
            first = false;
        }
        return out;
    }

private:
    void check_compatible(const GradedClass &y) const
    {
        if (truncation_ != y.truncation_) {
            throw usage_error("mismatched truncation weights " + std::to_string(truncation_) + " and " +
                              std::to_string(y.truncation_));
        }
        if (!same_universe(universe_, y.universe_)) {
            throw usage_error("mismatched generator universes");
        }
    }

    Universe universe_;
    int truncation_;
    TermMap terms_;
};

inline GradedClass gc_add(const GradedClass &x, const GradedClass &y) { return x + y; }
inline GradedClass gc_mul(const GradedClass &x, const GradedClass &y) { return x * y; }
inline GradedClass gc_component(const GradedClass &x, int w) { return x.component(w); }

inline GradedClass pow(const GradedClass &x, unsigned k)
{
    GradedClass out = GradedClass::constant(x.universe(), x.truncation(), 1);
    for (unsigned i = 0; i < k; ++i) {
        out *= x;
    }
    return out;
}

/// exp(x) for x without constant term; the series stops by nilpotency.
inline GradedClass exp_nilpotent(const GradedClass &x)
{
    if (!x.component(0).is_zero()) {
        throw usage_error("exp_nilpotent needs a class without constant term");
    }
    GradedClass out = GradedClass::constant(x.universe(), x.truncation(), 1);
    GradedClass power = out;
    for (int i = 1; i <= x.truncation(); ++i) {
        power = power * x * Rational(1, i);
        if (power.is_zero()) {
            break;
        }
        out += power;
    }
    return out;
}

/// log(1 + x) for x without constant term.
inline GradedClass log_one_plus(const GradedClass &x)
{
    if (!x.component(0).is_zero()) {
        throw usage_error("log_one_plus needs a class without constant term");
    }
    GradedClass out(x.universe(), x.truncation());
    GradedClass power = GradedClass::constant(x.universe(), x.truncation(), 1);
    for (int i = 1; i <= x.truncation(); ++i) {
        power *= x;
        if (power.is_zero()) {
            break;
        }
        out += power * Rational(i % 2 == 1 ? 1 : -1, i);
    }
    return out;
}

/// A length-n partition of K into positive parts.
class Partition
{
public:
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        if (parts_.empty()) {
            throw usage_error("partition needs at least one part");
        }
        for (int a : parts_) {
            if (a < 1) {
                throw usage_error("partition parts must be positive");
            }
            sum_ += a;
        }
    }

    const std::vector<int> &parts() const { return parts_; }
    int sum() const { return sum_; }
    std::size_t length() const { return parts_.size(); }

    friend bool operator==(const Partition &, const Partition &) = default;

private:
    std::vector<int> parts_;
    int sum_ = 0;
};

/// All partitions of K, parts in non-increasing order.
inline std::vector<Partition> partitions_of(int K)
{
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto &&self, int rest, int max_part) -> void {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int a = std::min(rest, max_part); a >= 1; --a) {
            cur.push_back(a);
            self(self, rest - a, a);
            cur.pop_back();
        }
    };
    if (K >= 1) {
        rec(rec, K, K);
    }
    return out;
}

} // namespace cowaist
