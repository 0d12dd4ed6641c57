#pragma once

// Substitutions that simulate deviations: evaluating the substituted formula
// at pi is the same as evaluating the original at the deviated partition.
//
//   deviation_subst(phi, i, B)   phi at pi[i -> B]   (when B is a legal target)
//   forget_exists(i, phi, n)     phi at pi[i -> S] for some legal S
//   group_subst(phi, T)          phi at pi[T -> {}]
//   swap_subst(phi, i, j)        phi at pi[i <-> j]
//   move_subst(phi, i, j)        phi at pi[i -> pi(j) \ {i}]   (phi local to i)

#include <cstdint>
#include <string>
#include <vector>

#include "hedonic/error.hpp"
#include "hedonic/formula.hpp"
#include "hedonic/logic.hpp"
#include "hedonic/partition.hpp"

namespace hedonic {

/// Largest n for which `forget_exists` materialises its 2^(n-1) disjuncts.
inline constexpr int max_forget_players = 10;

/// A total assignment of ⊤/⊥ to player i's variables p(i,j), j ≠ i,
/// enumerated by ascending partner. `with` holds the partners mapped to ⊤.
struct BooleanVector {
    Player player;
    Coalition with;

    Substitution substitution(int n) const {
        Substitution sigma;
        for (Player j = 1; j <= n; ++j)
            if (j != player) sigma.emplace(PairVar(player, j), with.contains(j) ? Formula::top() : Formula::bot());
        return sigma;
    }
};

/// p(i,j) := ⊤ for j in B, ⊥ otherwise. B = {} is the "stay alone" vector.
inline Formula deviation_subst(const Formula& phi, Player i, const Coalition& b) {
    if (b.contains(i)) throw precondition_error("deviation target contains the deviating player " + std::to_string(i));
    return rewrite_atoms(phi, [&](const Formula& a) {
        if (!a.var().involves(i)) return a;
        return b.contains(a.var().other(i)) ? Formula::top() : Formula::bot();
    });
}

/// ⋁ over all 2^(n-1) Boolean vectors b on V_i of (phi & trans)[b].
inline Formula forget_exists(Player i, const Formula& phi, int n) {
    if (n > max_forget_players)
        throw limit_error("forgetting over " + std::to_string(n) + " players exceeds the limit of " +
                          std::to_string(max_forget_players) + "; use the compact move encoding");
    if (i < 1 || i > n) throw domain_error("unknown player " + std::to_string(i));
    std::vector<Player> partners;
    for (Player j = 1; j <= n; ++j)
        if (j != i) partners.push_back(j);
    const Formula body = Formula::conjunction({phi, trans_formula(n)});
    std::vector<Formula> disjuncts;
    const std::uint64_t vectors = std::uint64_t{1} << partners.size();
    disjuncts.reserve(vectors);
    for (std::uint64_t mask = 0; mask < vectors; ++mask) {
        std::vector<Player> with;
        for (std::size_t k = 0; k < partners.size(); ++k)
            if (mask >> k & 1u) with.push_back(partners[k]);
        disjuncts.push_back(deviation_subst(body, i, Coalition(std::move(with))));
    }
    return disjoin(std::move(disjuncts));
}

/// Applies the T-separating vector: for i in T, p(i,j) := ⊤ iff j in T.
/// Atoms with both ends outside T are untouched.
inline Formula group_subst(const Formula& phi, const Coalition& t) {
    if (t.empty()) throw precondition_error("deviating group is empty");
    return rewrite_atoms(phi, [&](const Formula& a) {
        bool lo = t.contains(a.var().lo());
        bool hi = t.contains(a.var().hi());
        if (!lo && !hi) return a;
        return lo && hi ? Formula::top() : Formula::bot();
    });
}

/// Exchanges p(i,k) and p(j,k) for every k outside {i,j}; p(i,j) is fixed.
inline Formula swap_subst(const Formula& phi, Player i, Player j) {
    if (i == j) throw precondition_error("cannot swap a player with itself");
    return rewrite_atoms(phi, [&](const Formula& a) {
        const PairVar& v = a.var();
        if (v == PairVar(i, j)) return a;
        if (v.involves(i)) return p(j, v.other(i));
        if (v.involves(j)) return p(i, v.other(j));
        return a;
    });
}

/// p(i,j) := ⊤ and p(i,k) := p(j,k): player i joins j's coalition.
/// phi must only mention variables of player i.
inline Formula move_subst(const Formula& phi, Player i, Player j) {
    if (i == j) throw precondition_error("a player cannot move to its own position");
    if (!is_syntactically_local(phi, i))
        throw precondition_error("move substitution needs a formula over player " + std::to_string(i) + "'s variables");
    return rewrite_atoms(phi, [&](const Formula& a) {
        Player k = a.var().other(i);
        return k == j ? Formula::top() : p(j, k);
    });
}

}  // namespace hedonic
