#pragma once

// Partition semantics, simultaneous substitution and the transitivity
// constraint whose models are exactly the partitions.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hedonic/error.hpp"
#include "hedonic/formula.hpp"
#include "hedonic/partition.hpp"

namespace hedonic {

/// Simultaneous substitution: every key is replaced by its image in one pass.
using Substitution = std::map<PairVar, Formula>;

/// pi ⊨ phi. Atoms must range over pi's players.
inline bool evaluate(const Partition& pi, const Formula& phi) {
    switch (phi.kind()) {
        case Connective::top: return true;
        case Connective::bot: return false;
        case Connective::atom: {
            const auto& v = phi.var();
            if (v.hi() > pi.players())
                throw domain_error("atom p(" + std::to_string(v.lo()) + "," + std::to_string(v.hi()) +
                                   ") outside a partition of " + std::to_string(pi.players()) + " players");
            return pi.together(v.lo(), v.hi());
        }
        case Connective::negation: return !evaluate(pi, phi.operands()[0]);
        case Connective::conjunction:
            return std::all_of(phi.operands().begin(), phi.operands().end(),
                               [&](const Formula& f) { return evaluate(pi, f); });
        case Connective::disjunction:
            return std::any_of(phi.operands().begin(), phi.operands().end(),
                               [&](const Formula& f) { return evaluate(pi, f); });
        case Connective::implication: return !evaluate(pi, phi.operands()[0]) || evaluate(pi, phi.operands()[1]);
        case Connective::equivalence: return evaluate(pi, phi.operands()[0]) == evaluate(pi, phi.operands()[1]);
    }
    return false;
}

namespace detail {

template <typename AtomMap>
Formula rewrite_atoms(const Formula& phi, const AtomMap& map_atom,
                      std::unordered_map<const void*, Formula>& memo) {
    switch (phi.kind()) {
        case Connective::top:
        case Connective::bot: return phi;
        case Connective::atom: return map_atom(phi);
        default: break;
    }
    if (auto hit = memo.find(phi.identity()); hit != memo.end()) return hit->second;
    std::vector<Formula> operands;
    operands.reserve(phi.operands().size());
    bool changed = false;
    for (const auto& f : phi.operands()) {
        operands.push_back(rewrite_atoms(f, map_atom, memo));
        changed = changed || operands.back().identity() != f.identity();
    }
    Formula out = phi;
    if (changed) {
        switch (phi.kind()) {
            case Connective::negation: out = Formula::negation(std::move(operands[0])); break;
            case Connective::conjunction: out = Formula::conjunction(std::move(operands)); break;
            case Connective::disjunction: out = Formula::disjunction(std::move(operands)); break;
            case Connective::implication: out = Formula::implication(std::move(operands[0]), std::move(operands[1])); break;
            case Connective::equivalence: out = Formula::equivalence(std::move(operands[0]), std::move(operands[1])); break;
            default: break;
        }
    }
    memo.emplace(phi.identity(), out);
    return out;
}

}  // namespace detail

/// Replaces each atom by `map_atom(atom)`; unchanged subterms stay shared.
template <typename AtomMap>
Formula rewrite_atoms(const Formula& phi, const AtomMap& map_atom) {
    std::unordered_map<const void*, Formula> memo;
    return detail::rewrite_atoms(phi, map_atom, memo);
}

inline Formula substitute(const Formula& phi, const Substitution& sigma) {
    if (sigma.empty()) return phi;
    return rewrite_atoms(phi, [&](const Formula& a) {
        auto it = sigma.find(a.var());
        return it == sigma.end() ? a : it->second;
    });
}

/// For each triple i<j<k the three implications
/// p(i,j)&p(j,k) -> p(i,k), p(i,j)&p(i,k) -> p(j,k), p(i,k)&p(j,k) -> p(i,j).
inline Formula trans_formula(int n) {
    if (n < 1) throw domain_error("player count must be positive");
    std::vector<Formula> conjuncts;
    for (Player i = 1; i <= n; ++i)
        for (Player j = i + 1; j <= n; ++j)
            for (Player k = j + 1; k <= n; ++k) {
                conjuncts.push_back(implies(p(i, j) && p(j, k), p(i, k)));
                conjuncts.push_back(implies(p(i, j) && p(i, k), p(j, k)));
                conjuncts.push_back(implies(p(i, k) && p(j, k), p(i, j)));
            }
    return conjoin(std::move(conjuncts));
}

inline std::set<PairVar> free_pairs(const Formula& phi) {
    std::set<PairVar> out;
    std::vector<const Formula*> stack{&phi};
    while (!stack.empty()) {
        const Formula* f = stack.back();
        stack.pop_back();
        if (f->kind() == Connective::atom) out.insert(f->var());
        for (const auto& g : f->operands()) stack.push_back(&g);
    }
    return out;
}

/// Largest player index mentioned by an atom of phi; 0 when there are none.
inline Player max_player(const Formula& phi) {
    Player m = 0;
    for (const auto& v : free_pairs(phi)) m = std::max(m, v.hi());
    return m;
}

/// Every atom of phi is some p(i,j).
inline bool is_syntactically_local(const Formula& phi, Player i) {
    auto vars = free_pairs(phi);
    return std::all_of(vars.begin(), vars.end(), [&](const PairVar& v) { return v.involves(i); });
}

/// Largest n for which `is_i_local` enumerates partitions.
inline constexpr int max_locality_players = 8;

/// phi depends only on the coalition of i: any two partitions of {1..n} that
/// give i the same coalition agree on phi.
inline bool is_i_local(const Formula& phi, Player i, int n) {
    if (n > max_locality_players)
        throw limit_error("semantic locality check supports at most " + std::to_string(max_locality_players) +
                          " players; check syntactic locality instead");
    if (i < 1 || i > n) throw domain_error("unknown player " + std::to_string(i));
    if (max_player(phi) > n) throw domain_error("formula mentions players beyond " + std::to_string(n));
    std::map<Coalition, bool> seen;
    bool local = true;
    for_each_partition(n, [&](const Partition& pi) {
        if (!local) return;
        bool value = evaluate(pi, phi);
        auto [it, inserted] = seen.emplace(pi.coalition_of(i), value);
        if (!inserted && it->second != value) local = false;
    });
    return local;
}

}  // namespace hedonic
