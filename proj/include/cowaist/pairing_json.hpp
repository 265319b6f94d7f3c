#pragma once

// Pairing files for the comparison pipeline.
//
//   {"n": 2,
//    "ahat": {"pontryagin_roots": 2}            -- or {"terms": {"1": "1", "p1": "-1/24"}}
//    "table": {"x1^2": "1", "p1": "3", ...}}    -- weight-n monomial -> "p/q"
//
// Generators named p<i> carry weight 2i, everything else weight 1.

#include "functor_expr.hpp"
#include "splitting.hpp"

#include <fstream>
#include <sstream>

namespace cowaist
{

inline int generator_weight(const std::string &name)
{
    if (name.size() > 1 && name[0] == 'p' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return 2 * std::stoi(name.substr(1));
    }
    return 1;
}

/// Rewrites "x2*p1^1*x2" as "p1*x2^2" (factors merged and sorted by name).
inline std::string canonical_monomial(std::string_view text)
{
    std::map<std::string, unsigned> merged;
    for (const auto &[name, e] : parse_monomial_factors(text)) {
        merged[name] += e;
    }
    std::string out;
    for (const auto &[name, e] : merged) {
        if (!out.empty()) {
            out += '*';
        }
        out += name;
        if (e > 1) {
            out += '^' + std::to_string(e);
        }
    }
    return out.empty() ? "1" : out;
}

inline int monomial_weight(std::string_view text)
{
    int w = 0;
    for (const auto &[name, e] : parse_monomial_factors(text)) {
        w += static_cast<int>(e) * generator_weight(name);
    }
    return w;
}

inline Rational rational_field(const ojson &v, const std::string &path)
{
    if (!v.is_string()) {
        throw parse_error(path, "expected a rational string \"p/q\"");
    }
    try {
        return parse_rational(v.get<std::string>());
    } catch (const usage_error &e) {
        throw parse_error(path, e.what());
    }
}

inline PairingData pairing_from_json(const ojson &j)
{
    if (!j.is_object()) {
        throw parse_error("/", "expected a pairing object");
    }
    detail::expect_keys(j, {"n", "ahat", "table"}, "/");
    const int n = detail::int_field(j, "n", "/");
    if (n < 1 || n > 64) {
        throw parse_error("/n", "half dimension must lie in [1, 64]");
    }

    GradedClass ahat = GradedClass::constant(pontryagin_universe(0), n, 1);
    if (j.contains("ahat")) {
        const ojson &a = detail::object_field(j, "ahat", "/");
        detail::expect_keys(a, {"pontryagin_roots", "terms"}, "/ahat");
        if (a.contains("pontryagin_roots") == a.contains("terms")) {
            throw parse_error("/ahat", "give exactly one of \"pontryagin_roots\" and \"terms\"");
        }
        if (a.contains("pontryagin_roots")) {
            const int count = detail::int_field(a, "pontryagin_roots", "/ahat");
            std::vector<std::string> roots;
            for (int i = 1; i <= count; ++i) {
                roots.push_back("y" + std::to_string(i));
            }
            ahat = ahat_series(roots, n);
        } else {
            const ojson &terms = detail::object_field(a, "terms", "/ahat");
            std::vector<Generator> gens;
            for (auto it = terms.begin(); it != terms.end(); ++it) {
                for (const auto &[name, e] : parse_monomial_factors(it.key())) {
                    gens.push_back({name, generator_weight(name)});
                }
            }
            ahat = GradedClass(make_universe(gens), n);
            bool has_constant = false;
            for (auto it = terms.begin(); it != terms.end(); ++it) {
                const std::string path = "/ahat/terms/" + it.key();
                const Monomial m = ahat.parse_monomial(it.key());
                if (m.weight > n) {
                    throw parse_error(path, "monomial above the top weight");
                }
                has_constant = has_constant || m.weight == 0;
                ahat.add_term(m, rational_field(it.value(), path));
            }
            if (!has_constant) {
                ahat.add_term(ahat.unit_monomial(), 1);
            }
        }
    }

    std::map<std::string, Rational> table;
    if (!j.contains("table") || !j["table"].is_object()) {
        throw parse_error("/table", "expected an object of monomial -> \"p/q\"");
    }
    for (auto it = j["table"].begin(); it != j["table"].end(); ++it) {
        const std::string path = "/table/" + it.key();
        std::string key;
        try {
            key = canonical_monomial(it.key());
        } catch (const usage_error &e) {
            throw parse_error(path, e.what());
        }
        if (monomial_weight(key) != n) {
            throw parse_error(path, "monomial does not have weight " + std::to_string(n));
        }
        if (table.count(key)) {
            throw parse_error(path, "duplicate monomial");
        }
        table.emplace(key, rational_field(it.value(), path));
    }
    try {
        return PairingData(n, std::move(ahat), std::move(table));
    } catch (const parse_error &) {
        throw;
    } catch (const usage_error &e) {
        throw parse_error("/ahat", e.what());
    }
}

inline PairingData parse_pairing(const std::string &text)
{
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw parse_error("byte " + std::to_string(e.byte), "invalid JSON");
    }
    return pairing_from_json(j);
}

inline std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw usage_error("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace cowaist
