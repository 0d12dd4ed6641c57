#pragma once

// Propositional formulas over unordered pair atoms p(i,j), read as
// "i and j are in the same coalition".

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hedonic/error.hpp"
#include "hedonic/partition.hpp"

namespace hedonic {

/// The variable p{i,j}; p(i,j) and p(j,i) are the same variable.
class PairVar {
public:
    PairVar(Player i, Player j) : lo_(i < j ? i : j), hi_(i < j ? j : i) {
        if (i == j) throw domain_error("reflexive atom p(" + std::to_string(i) + "," + std::to_string(i) + ")");
        if (lo_ < 1) throw domain_error("player index must be positive");
    }

    Player lo() const noexcept { return lo_; }
    Player hi() const noexcept { return hi_; }
    bool involves(Player i) const noexcept { return lo_ == i || hi_ == i; }
    /// The endpoint that is not `i`; `i` must be an endpoint.
    Player other(Player i) const noexcept { return lo_ == i ? hi_ : lo_; }

    friend bool operator==(const PairVar&, const PairVar&) = default;
    friend auto operator<=>(const PairVar&, const PairVar&) = default;

private:
    Player lo_;
    Player hi_;
};

enum class Connective : unsigned char { top, bot, atom, negation, conjunction, disjunction, implication, equivalence };

/// Immutable formula handle with value semantics; subterms are shared.
/// Conjunction and disjunction are n-ary (at least two operands).
class Formula {
public:
    /// Defaults to ⊤.
    Formula();

    static Formula top();
    static Formula bot();
    static Formula atom(PairVar v);
    static Formula atom(Player i, Player j) { return atom(PairVar(i, j)); }
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> operands);
    static Formula disjunction(std::vector<Formula> operands);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula equivalence(Formula lhs, Formula rhs);

    Connective kind() const noexcept { return node_->kind; }
    /// Only meaningful for atoms.
    const PairVar& var() const noexcept { return node_->var; }
    std::span<const Formula> operands() const noexcept { return node_->operands; }
    /// Node count |φ|.
    std::size_t size() const noexcept { return node_->size; }
    /// Identity of the shared node, stable for the lifetime of this handle.
    const void* identity() const noexcept { return node_.get(); }

    bool is_constant() const noexcept { return kind() == Connective::top || kind() == Connective::bot; }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        Connective kind;
        PairVar var;
        std::vector<Formula> operands;
        std::size_t size;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Connective kind, PairVar var, std::vector<Formula> operands);

    std::shared_ptr<const Node> node_;
};

inline Formula Formula::make(Connective kind, PairVar var, std::vector<Formula> operands) {
    std::size_t size = 1;
    for (const auto& f : operands) size += f.size();
    return Formula(std::make_shared<const Node>(Node{kind, var, std::move(operands), size}));
}

inline Formula Formula::top() {
    static const Formula t = make(Connective::top, PairVar(1, 2), {});
    return t;
}
inline Formula Formula::bot() {
    static const Formula b = make(Connective::bot, PairVar(1, 2), {});
    return b;
}
inline Formula::Formula() : Formula(top()) {}
inline Formula Formula::atom(PairVar v) { return make(Connective::atom, v, {}); }
inline Formula Formula::negation(Formula f) { return make(Connective::negation, PairVar(1, 2), {std::move(f)}); }
inline Formula Formula::conjunction(std::vector<Formula> operands) {
    if (operands.size() < 2) throw precondition_error("conjunction needs at least two operands");
    return make(Connective::conjunction, PairVar(1, 2), std::move(operands));
}
inline Formula Formula::disjunction(std::vector<Formula> operands) {
    if (operands.size() < 2) throw precondition_error("disjunction needs at least two operands");
    return make(Connective::disjunction, PairVar(1, 2), std::move(operands));
}
inline Formula Formula::implication(Formula lhs, Formula rhs) {
    return make(Connective::implication, PairVar(1, 2), {std::move(lhs), std::move(rhs)});
}
inline Formula Formula::equivalence(Formula lhs, Formula rhs) {
    return make(Connective::equivalence, PairVar(1, 2), {std::move(lhs), std::move(rhs)});
}

inline bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    if (a.kind() == Connective::atom) return a.var() == b.var();
    auto x = a.operands();
    auto y = b.operands();
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!(x[k] == y[k])) return false;
    return true;
}

/// ⋀ of `operands`: ⊤ when empty, the operand itself when single.
inline Formula conjoin(std::vector<Formula> operands) {
    if (operands.empty()) return Formula::top();
    if (operands.size() == 1) return std::move(operands.front());
    return Formula::conjunction(std::move(operands));
}

/// ⋁ of `operands`: ⊥ when empty, the operand itself when single.
inline Formula disjoin(std::vector<Formula> operands) {
    if (operands.empty()) return Formula::bot();
    if (operands.size() == 1) return std::move(operands.front());
    return Formula::disjunction(std::move(operands));
}

inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&&(Formula a, Formula b) { return Formula::conjunction({std::move(a), std::move(b)}); }
inline Formula operator||(Formula a, Formula b) { return Formula::disjunction({std::move(a), std::move(b)}); }
inline Formula implies(Formula a, Formula b) { return Formula::implication(std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) { return Formula::equivalence(std::move(a), std::move(b)); }
inline Formula p(Player i, Player j) { return Formula::atom(i, j); }

/// Number of top-level conjuncts: 0 for ⊤, operand count for a conjunction, else 1.
inline std::size_t conjunct_count(const Formula& f) {
    if (f.kind() == Connective::top) return 0;
    if (f.kind() == Connective::conjunction) return f.operands().size();
    return 1;
}

/// Number of top-level disjuncts: 0 for ⊥, operand count for a disjunction, else 1.
inline std::size_t disjunct_count(const Formula& f) {
    if (f.kind() == Connective::bot) return 0;
    if (f.kind() == Connective::disjunction) return f.operands().size();
    return 1;
}

namespace detail {

inline void format_into(const Formula& f, std::string& out) {
    auto join = [&](const char* sep) {
        out += '(';
        bool first = true;
        for (const auto& g : f.operands()) {
            if (!first) out += sep;
            first = false;
            format_into(g, out);
        }
        out += ')';
    };
    switch (f.kind()) {
        case Connective::top: out += "true"; break;
        case Connective::bot: out += "false"; break;
        case Connective::atom:
            out += "p(" + std::to_string(f.var().lo()) + "," + std::to_string(f.var().hi()) + ")";
            break;
        case Connective::negation:
            out += '~';
            format_into(f.operands()[0], out);
            break;
        case Connective::conjunction: join(" & "); break;
        case Connective::disjunction: join(" | "); break;
        case Connective::implication: join(" -> "); break;
        case Connective::equivalence: join(" <-> "); break;
    }
}

}  // namespace detail

/// Fully parenthesised text that parses back to an identical AST.
inline std::string format_formula(const Formula& f) {
    std::string out;
    detail::format_into(f, out);
    return out;
}

}  // namespace hedonic
