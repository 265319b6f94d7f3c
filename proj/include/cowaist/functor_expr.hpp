#pragma once

// Admissible functor expressions: identity, trivial bundle, dual, exterior
// power, direct sum and tensor product, plus curvature bound propagation and
// the cc-functor-v1 JSON form.

#include "rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cowaist
{

enum class FunctorOp { Identity, Trivial, Dual, Wedge, DirectSum, Tensor };

inline constexpr const char *functor_version = "cc-functor-v1";

class FunctorExpr
{
    struct Node {
        FunctorOp op;
        int param = 0; // slot for Identity, k for Trivial/Wedge
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
        std::string key;
        int arity = 0;
        int depth = 1;
        std::size_t size = 1;
    };

public:
    static FunctorExpr identity(int slot = 0)
    {
        if (slot < 0) {
            throw usage_error("slot index must be non-negative");
        }
        return make(FunctorOp::Identity, slot, nullptr, nullptr);
    }
    static FunctorExpr trivial(int k)
    {
        if (k < 0) {
            throw usage_error("trivial bundle rank must be non-negative");
        }
        return make(FunctorOp::Trivial, k, nullptr, nullptr);
    }
    static FunctorExpr dual(const FunctorExpr &x) { return make(FunctorOp::Dual, 0, x.node_, nullptr); }
    static FunctorExpr wedge(int k, const FunctorExpr &x)
    {
        if (k < 0) {
            throw usage_error("exterior power order must be non-negative");
        }
        return make(FunctorOp::Wedge, k, x.node_, nullptr);
    }
    static FunctorExpr direct_sum(const FunctorExpr &a, const FunctorExpr &b)
    {
        return make(FunctorOp::DirectSum, 0, a.node_, b.node_);
    }
    static FunctorExpr tensor(const FunctorExpr &a, const FunctorExpr &b)
    {
        return make(FunctorOp::Tensor, 0, a.node_, b.node_);
    }

    FunctorOp op() const { return node_->op; }
    int slot() const { return node_->param; }
    int k() const { return node_->param; }
    FunctorExpr child() const { return FunctorExpr(node_->left); }
    FunctorExpr left() const { return FunctorExpr(node_->left); }
    FunctorExpr right() const { return FunctorExpr(node_->right); }
    bool is_leaf() const { return !node_->left; }

    /// One more than the largest slot index used; 0 for constant functors.
    int arity() const { return node_->arity; }
    int depth() const { return node_->depth; }
    std::size_t size() const { return node_->size; }

    /// Compact canonical key, e.g. "T(I0,W2(I0))"; equal keys mean equal trees.
    const std::string &key() const { return node_->key; }

    friend bool operator==(const FunctorExpr &a, const FunctorExpr &b)
    {
        return a.node_ == b.node_ || a.node_->key == b.node_->key;
    }
    friend bool operator<(const FunctorExpr &a, const FunctorExpr &b) { return a.node_->key < b.node_->key; }

private:
    explicit FunctorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static FunctorExpr make(FunctorOp op, int param, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r)
    {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->param = param;
        n->left = std::move(l);
        n->right = std::move(r);
        switch (op) {
        case FunctorOp::Identity:
            n->key = "I" + std::to_string(param);
            n->arity = param + 1;
            break;
        case FunctorOp::Trivial:
            n->key = "C" + std::to_string(param);
            break;
        case FunctorOp::Dual:
            n->key = "D(" + n->left->key + ")";
            break;
        case FunctorOp::Wedge:
            n->key = "W" + std::to_string(param) + "(" + n->left->key + ")";
            break;
        case FunctorOp::DirectSum:
            n->key = "S(" + n->left->key + "," + n->right->key + ")";
            break;
        case FunctorOp::Tensor:
            n->key = "T(" + n->left->key + "," + n->right->key + ")";
            break;
        }
        if (n->left) {
            n->arity = std::max(n->arity, n->left->arity);
            n->depth = n->left->depth + 1;
            n->size += n->left->size;
        }
        if (n->right) {
            n->arity = std::max(n->arity, n->right->arity);
            n->depth = std::max(n->depth, n->right->depth + 1);
            n->size += n->right->size;
        }
        return FunctorExpr(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

/// Replaces each Identity(slot) leaf by replacements[slot].
inline FunctorExpr substitute(const FunctorExpr &f, const std::vector<FunctorExpr> &replacements)
{
    switch (f.op()) {
    case FunctorOp::Identity:
        if (f.slot() >= static_cast<int>(replacements.size())) {
            throw usage_error("substitution lacks slot " + std::to_string(f.slot()));
        }
        return replacements[f.slot()];
    case FunctorOp::Trivial:
        return f;
    case FunctorOp::Dual:
        return FunctorExpr::dual(substitute(f.child(), replacements));
    case FunctorOp::Wedge:
        return FunctorExpr::wedge(f.k(), substitute(f.child(), replacements));
    case FunctorOp::DirectSum:
        return FunctorExpr::direct_sum(substitute(f.left(), replacements), substitute(f.right(), replacements));
    case FunctorOp::Tensor:
        return FunctorExpr::tensor(substitute(f.left(), replacements), substitute(f.right(), replacements));
    }
    return f;
}

/// Integer multiple c*F realized honestly as C^c (x) F.
inline FunctorExpr scaled(const BigInt &c, const FunctorExpr &f)
{
    if (c < 1) {
        throw usage_error("honest multiples need a positive integer");
    }
    if (c == 1) {
        return f;
    }
    return FunctorExpr::tensor(FunctorExpr::trivial(c.convert_to<int>()), f);
}

/// A formal Z- or Q-linear combination of honest functors.
struct VirtualCombination {
    struct Term {
        Rational coefficient;
        FunctorExpr functor;
    };
    std::vector<Term> terms;

    bool empty() const { return terms.empty(); }
};

// Curvature bound propagation: ||R^{J(E)}|| <= C_J * max_slot ||R^{E_slot}||.
//   Identity 1, Trivial 0, Dual child, DirectSum max, Tensor sum, Wedge(k) k*child.
struct CurvatureBound {
    Rational constant;
};

inline CurvatureBound bound_constant(const FunctorExpr &f)
{
    switch (f.op()) {
    case FunctorOp::Identity:
        return {1};
    case FunctorOp::Trivial:
        return {0};
    case FunctorOp::Dual:
        return bound_constant(f.child());
    case FunctorOp::Wedge:
        return {f.k() * bound_constant(f.child()).constant};
    case FunctorOp::DirectSum:
        return {std::max(bound_constant(f.left()).constant, bound_constant(f.right()).constant)};
    case FunctorOp::Tensor:
        return {bound_constant(f.left()).constant + bound_constant(f.right()).constant};
    }
    return {0};
}

// --- JSON ------------------------------------------------------------------

using ojson = nlohmann::ordered_json;

/// Canonical object with "op" first, e.g. {"op":"wedge","k":2,"arg":{"op":"id","slot":0}}.
inline ojson functor_to_ojson(const FunctorExpr &f)
{
    ojson j;
    switch (f.op()) {
    case FunctorOp::Identity:
        j["op"] = "id";
        j["slot"] = f.slot();
        break;
    case FunctorOp::Trivial:
        j["op"] = "trivial";
        j["k"] = f.k();
        break;
    case FunctorOp::Dual:
        j["op"] = "dual";
        j["arg"] = functor_to_ojson(f.child());
        break;
    case FunctorOp::Wedge:
        j["op"] = "wedge";
        j["k"] = f.k();
        j["arg"] = functor_to_ojson(f.child());
        break;
    case FunctorOp::DirectSum:
        j["op"] = "sum";
        j["left"] = functor_to_ojson(f.left());
        j["right"] = functor_to_ojson(f.right());
        break;
    case FunctorOp::Tensor:
        j["op"] = "tensor";
        j["left"] = functor_to_ojson(f.left());
        j["right"] = functor_to_ojson(f.right());
        break;
    }
    return j;
}

inline std::string functor_to_json(const FunctorExpr &f) { return functor_to_ojson(f).dump(); }

/// Thrown for malformed functor or certificate documents.
class parse_error : public usage_error
{
public:
    parse_error(const std::string &where, const std::string &what)
        : usage_error("parse error at " + where + ": " + what), where_(where)
    {
    }
    const std::string &where() const { return where_; }

private:
    std::string where_;
};

namespace detail
{

template <typename Json>
int int_field(const Json &j, const char *name, const std::string &path)
{
    if (!j.contains(name) || !j[name].is_number_integer()) {
        throw parse_error(path, std::string("expected integer field \"") + name + "\"");
    }
    const auto v = j[name].template get<long long>();
    if (v < 0 || v > 1'000'000) {
        throw parse_error(path + "/" + name, "value out of range");
    }
    return static_cast<int>(v);
}

template <typename Json>
const Json &object_field(const Json &j, const char *name, const std::string &path)
{
    if (!j.contains(name) || !j[name].is_object()) {
        throw parse_error(path, std::string("expected object field \"") + name + "\"");
    }
    return j[name];
}

template <typename Json>
void expect_keys(const Json &j, std::initializer_list<const char *> keys, const std::string &path)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char *k) { return it.key() == k; })) {
            throw parse_error(path, "unexpected field \"" + it.key() + "\"");
        }
    }
}

} // namespace detail

/// Structural parse; `path` is a JSON pointer used in error messages.
template <typename Json>
FunctorExpr functor_from_json(const Json &j, const std::string &path = "")
{
    const std::string here = path.empty() ? "/" : path;
    if (!j.is_object()) {
        throw parse_error(here, "expected a functor object");
    }
    if (!j.contains("op") || !j["op"].is_string()) {
        throw parse_error(here, "missing \"op\"");
    }
    const auto op = j["op"].template get<std::string>();
    if (op == "id") {
        detail::expect_keys(j, {"op", "slot"}, here);
        return FunctorExpr::identity(detail::int_field(j, "slot", here));
    }
    if (op == "trivial") {
        detail::expect_keys(j, {"op", "k"}, here);
        return FunctorExpr::trivial(detail::int_field(j, "k", here));
    }
    if (op == "dual") {
        detail::expect_keys(j, {"op", "arg"}, here);
        return FunctorExpr::dual(functor_from_json(detail::object_field(j, "arg", here), path + "/arg"));
    }
    if (op == "wedge") {
        detail::expect_keys(j, {"op", "k", "arg"}, here);
        const int k = detail::int_field(j, "k", here);
        return FunctorExpr::wedge(k, functor_from_json(detail::object_field(j, "arg", here), path + "/arg"));
    }
    if (op == "sum" || op == "tensor") {
        detail::expect_keys(j, {"op", "left", "right"}, here);
        auto l = functor_from_json(detail::object_field(j, "left", here), path + "/left");
        auto r = functor_from_json(detail::object_field(j, "right", here), path + "/right");
        return op == "sum" ? FunctorExpr::direct_sum(l, r) : FunctorExpr::tensor(l, r);
    }
    throw parse_error(path + "/op", "unknown op \"" + op + "\"");
}

/// Parses either a bare functor tree or {"version":"cc-functor-v1","functor":{...}}.
inline FunctorExpr parse_functor(const std::string &text)
{
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw parse_error("byte " + std::to_string(e.byte), "invalid JSON");
    }
    if (j.is_object() && j.contains("version")) {
        if (j["version"] != functor_version) {
            throw parse_error("/version", "expected \"" + std::string(functor_version) + "\"");
        }
        detail::expect_keys(j, {"version", "functor"}, "/");
        return functor_from_json(detail::object_field(j, "functor", "/"), "/functor");
    }
    return functor_from_json(j);
}

inline std::string functor_document(const FunctorExpr &f)
{
    ojson j;
    j["version"] = functor_version;
    j["functor"] = functor_to_ojson(f);
    return j.dump();
}

} // namespace cowaist
