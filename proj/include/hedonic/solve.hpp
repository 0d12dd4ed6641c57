#pragma once

// SAT back end: solving and decoding, model enumeration, welfare
// maximisation, Pareto and core constructions, and membership encodings
// that search for blocking groups.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hedonic/cnf.hpp"
#include "hedonic/dpll.hpp"
#include "hedonic/error.hpp"
#include "hedonic/formula.hpp"
#include "hedonic/game.hpp"
#include "hedonic/logic.hpp"
#include "hedonic/partition.hpp"

namespace hedonic {

struct SolveResult {
    bool sat = false;
    std::optional<Partition> partition;
    std::vector<bool> assignment;  // index 0 unused
};

/// Groups players whose pair variable is true; every class must be a clique.
inline Partition decode_model(const std::vector<bool>& assignment, const VarMap& vars) {
    const int n = vars.players();
    if (static_cast<int>(assignment.size()) <= vars.pair_count())
        throw domain_error("assignment is shorter than the pair variables");
    std::vector<int> parent(static_cast<std::size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Player i = 1; i <= n; ++i)
        for (Player j = i + 1; j <= n; ++j)
            if (assignment[vars.index(i, j)]) parent[find(j)] = find(i);
    for (Player i = 1; i <= n; ++i)
        for (Player j = i + 1; j <= n; ++j)
            if (find(i) == find(j) && !assignment[vars.index(i, j)])
                throw integrity_error("assignment violates transitivity: " + std::to_string(i) + " and " +
                                      std::to_string(j) + " are linked but p(" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is false");
    std::vector<int> labels(n);
    for (Player i = 1; i <= n; ++i) labels[i - 1] = find(i);
    return Partition::from_labels(labels);
}

/// The pair-variable assignment of pi (index 0 unused).
inline std::vector<bool> encode_partition(const Partition& pi) {
    VarMap vars(pi.players());
    std::vector<bool> out(static_cast<std::size_t>(vars.pair_count()) + 1, false);
    for (Player i = 1; i <= pi.players(); ++i)
        for (Player j = i + 1; j <= pi.players(); ++j) out[vars.index(i, j)] = pi.together(i, j);
    return out;
}

inline SolveResult sat(const CnfDoc& doc) {
    DpllSolver solver(doc);
    auto model = solver.solve();
    if (!model) return {};
    SolveResult r;
    r.sat = true;
    r.partition = decode_model(*model, doc.vars);
    r.assignment = std::move(*model);
    return r;
}

/// A partition satisfying phi, if any.
inline std::optional<Partition> solve_formula(const Formula& phi, int n) {
    return sat(compile_cnf(phi, n)).partition;
}

/// Calls `visit(partition)` for every distinct pair-variable projection of a
/// model of doc; stops early when `visit` returns false. Returns the count.
template <typename Visit>
std::size_t for_each_model(const CnfDoc& doc, Visit&& visit) {
    DpllSolver solver(doc);
    const int pairs = doc.pair_variables();
    std::size_t count = 0;
    while (auto model = solver.solve()) {
        ++count;
        if (!visit(decode_model(*model, doc.vars))) break;
        Clause block;
        for (int v = 1; v <= pairs; ++v) block.push_back((*model)[v] ? -v : v);
        solver.add_clause(std::move(block));
    }
    return count;
}

/// Every partition that extends to a model of doc, sorted in enumeration order.
inline std::vector<Partition> enumerate_models(const CnfDoc& doc) {
    std::vector<Partition> out;
    for_each_model(doc, [&](Partition pi) {
        out.push_back(std::move(pi));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Partition> enumerate_formula(const Formula& phi, int n) { return enumerate_models(compile_cnf(phi, n)); }

/// phi entails psi in every partition.
inline bool p_entails(const Formula& phi, const Formula& psi, int n) {
    return !sat(compile_cnf(phi && !psi, n)).sat;
}

namespace detail {

/// trans plus one selector per player equivalent to that player's goal.
struct SelectorEncoding {
    CnfBuilder builder;
    std::vector<int> selectors;  // selectors[i-1] <-> goal of i

    explicit SelectorEncoding(const BooleanHedonicGame& g) : builder(g.players()) {
        builder.add_transitivity();
        for (const auto& goal : g.goals()) selectors.push_back(builder.encode(goal));
    }

    std::vector<int> of(const Coalition& players) const {
        std::vector<int> out;
        for (Player i : players) out.push_back(selectors[i - 1]);
        return out;
    }
};

inline void require_signal(CnfBuilder& b, int s) { b.add_clause({s}); }

}  // namespace detail

struct WelfareResult {
    int optimum = 0;
    Partition witness;
};

/// Largest number of simultaneously satisfiable goals, by descending search
/// over cardinality bounds.
inline WelfareResult max_welfare(const BooleanHedonicGame& g) {
    const int n = g.players();
    for (int k = n; k >= 0; --k) {
        detail::SelectorEncoding enc(g);
        enc.builder.at_least(enc.selectors, k);
        auto r = sat(enc.builder.doc());
        if (r.sat) return {k, *r.partition};
    }
    throw integrity_error("no partition found at welfare 0");
}

/// Every partition of maximum welfare.
inline std::vector<Partition> enumerate_welfare_optimal(const BooleanHedonicGame& g) {
    const int k = max_welfare(g).optimum;
    detail::SelectorEncoding enc(g);
    enc.builder.at_least(enc.selectors, k);
    return enumerate_models(enc.builder.doc());
}

namespace detail {

inline bool goals_consistent(const BooleanHedonicGame& g, const std::vector<Player>& chosen) {
    SelectorEncoding enc(g);
    for (Player i : chosen) require_signal(enc.builder, enc.selectors[i - 1]);
    return DpllSolver(enc.builder.doc()).solve().has_value();
}

/// Grows `seed` to a maximal jointly satisfiable goal set, adding players in
/// ascending order.
inline std::vector<Player> grow_maximal(const BooleanHedonicGame& g, std::vector<Player> chosen) {
    for (Player i = 1; i <= g.players(); ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        chosen.push_back(i);
        if (!goals_consistent(g, chosen)) chosen.pop_back();
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

inline Partition model_of_goals(const BooleanHedonicGame& g, const std::vector<Player>& chosen) {
    SelectorEncoding enc(g);
    for (Player i : chosen) require_signal(enc.builder, enc.selectors[i - 1]);
    auto r = sat(enc.builder.doc());
    if (!r.sat) throw integrity_error("maximal goal set became inconsistent");
    return *r.partition;
}

}  // namespace detail

/// A partition whose satisfied set is a maximal jointly satisfiable goal
/// set, grown greedily in ascending player order.
inline Partition find_pareto(const BooleanHedonicGame& g) {
    return detail::model_of_goals(g, detail::grow_maximal(g, {}));
}

/// Every maximal jointly satisfiable goal set, as sorted player lists.
inline std::vector<Coalition> maximal_satisfiable_sets(const BooleanHedonicGame& g) {
    const int n = g.players();
    std::vector<Coalition> found;
    while (true) {
        detail::SelectorEncoding enc(g);
        // Skip every subset of a set already found.
        for (const auto& m : found) {
            std::vector<int> outside;
            for (Player j = 1; j <= n; ++j)
                if (!m.contains(j)) outside.push_back(enc.selectors[j - 1]);
            enc.builder.add_clause(outside);
        }
        DpllSolver solver(enc.builder.doc());
        auto model = solver.solve();
        if (!model) break;
        Partition pi = decode_model(*model, enc.builder.vars());
        std::vector<Player> seed;
        for (Player i = 1; i <= n; ++i)
            if (is_satisfied(g, i, pi)) seed.push_back(i);
        found.emplace_back(detail::grow_maximal(g, std::move(seed)));
    }
    std::sort(found.begin(), found.end());
    return found;
}

/// Every Pareto optimal partition: the models of each maximal satisfiable set.
inline std::vector<Partition> enumerate_pareto(const BooleanHedonicGame& g) {
    std::vector<Partition> out;
    for (const auto& m : maximal_satisfiable_sets(g)) {
        detail::SelectorEncoding enc(g);
        for (Player j = 1; j <= g.players(); ++j)
            detail::require_signal(enc.builder, m.contains(j) ? enc.selectors[j - 1] : -enc.selectors[j - 1]);
        auto models = enumerate_models(enc.builder.doc());
        out.insert(out.end(), models.begin(), models.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Membership encodings. Variable m_i (numbered i) says player i is in the
// group; goal atoms p(i,j) become m_j, which is exact for the group standing
// alone when i is a member and the goal mentions only i's variables.

namespace detail {

/// Largest player count for subset-enumeration fallbacks.
inline constexpr int max_subset_players = 20;

class MembershipEncoding {
public:
    explicit MembershipEncoding(int n) : builder_(n, false) {
        for (Player i = 1; i <= n; ++i) builder_.new_var();
    }

    CnfBuilder& builder() { return builder_; }
    int member(Player i) const { return i; }

    /// Signal for goal of i evaluated with i's group standing alone, where
    /// only players in `allowed` may be members.
    int goal_signal(const Formula& goal, Player i, const Coalition& allowed) {
        keep_alive_.push_back(goal);
        memos_.emplace_back();
        return builder_.encode(
            goal,
            [&](const PairVar& v) {
                Player j = v.other(i);
                return allowed.contains(j) ? member(j) : false_signal;
            },
            memos_.back());
    }

    /// The lexicographically least model's member set, player 1 most significant.
    std::optional<Coalition> solve(int n) {
        auto model = DpllSolver(builder_.doc()).solve();
        if (!model) return std::nullopt;
        std::vector<Player> in;
        for (Player i = 1; i <= n; ++i)
            if ((*model)[member(i)]) in.push_back(i);
        return Coalition(std::move(in));
    }

private:
    CnfBuilder builder_;
    std::vector<Formula> keep_alive_;
    std::vector<std::unordered_map<const void*, int>> memos_;
};

/// Nonempty groups in lexicographic order of characteristic vectors, player 1
/// most significant and absence before presence.
template <typename Visit>
std::optional<Coalition> first_group(int n, Visit&& accept) {
    if (n > max_subset_players)
        throw limit_error("subset enumeration supports at most " + std::to_string(max_subset_players) + " players");
    for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); ++v) {
        std::vector<Player> members;
        for (Player i = 1; i <= n; ++i)
            if (v >> (n - i) & 1u) members.push_back(i);
        Coalition t(std::move(members));
        if (accept(t)) return t;
    }
    return std::nullopt;
}

}  // namespace detail

/// Definitional group deviation tests: every member of T strictly improves
/// (blocks), or none is worse off and one strictly improves (weakly blocks),
/// by leaving together.
inline bool blocks(const BooleanHedonicGame& g, const Coalition& t, const Partition& pi) {
    require_players(g, pi);
    if (t.empty()) throw precondition_error("blocking group is empty");
    const Partition deviated = move(pi, t, Coalition{});
    for (Player i : t)
        if (is_satisfied(g, i, pi) || !is_satisfied(g, i, deviated)) return false;
    return true;
}

inline bool weakly_blocks(const BooleanHedonicGame& g, const Coalition& t, const Partition& pi) {
    require_players(g, pi);
    if (t.empty()) throw precondition_error("blocking group is empty");
    const Partition deviated = move(pi, t, Coalition{});
    bool gains = false;
    for (Player i : t) {
        bool before = is_satisfied(g, i, pi);
        bool after = is_satisfied(g, i, deviated);
        if (before && !after) return false;
        gains = gains || (!before && after);
    }
    return gains;
}

/// Lexicographically least blocking group (player 1 most significant).
inline std::optional<Coalition> exists_blocking_coalition(const BooleanHedonicGame& g, const Partition& pi) {
    require_players(g, pi);
    const int n = g.players();
    if (!g.syntactically_local())
        return detail::first_group(n, [&](const Coalition& t) { return blocks(g, t, pi); });
    detail::MembershipEncoding enc(n);
    const Coalition everyone = all_players(n);
    std::vector<int> any;
    for (Player i = 1; i <= n; ++i) {
        any.push_back(enc.member(i));
        if (is_satisfied(g, i, pi)) {
            enc.builder().add_clause({-enc.member(i)});
        } else {
            enc.builder().add_clause({-enc.member(i), enc.goal_signal(g.goal(i), i, everyone)});
        }
    }
    enc.builder().add_clause(any);
    auto found = enc.solve(n);
    if (found && !blocks(g, *found, pi)) throw integrity_error("membership encoding returned a non-blocking group");
    return found;
}

/// Lexicographically least weakly blocking group (player 1 most significant).
inline std::optional<Coalition> exists_weakly_blocking_coalition(const BooleanHedonicGame& g, const Partition& pi) {
    require_players(g, pi);
    const int n = g.players();
    if (!g.syntactically_local())
        return detail::first_group(n, [&](const Coalition& t) { return weakly_blocks(g, t, pi); });
    detail::MembershipEncoding enc(n);
    const Coalition everyone = all_players(n);
    std::vector<int> gains;
    for (Player i = 1; i <= n; ++i) {
        int goal = enc.goal_signal(g.goal(i), i, everyone);
        if (is_satisfied(g, i, pi)) {
            enc.builder().add_clause({-enc.member(i), goal});
        } else {
            // m_i & goal, as a fresh literal defined one way.
            int both = enc.builder().new_var();
            enc.builder().add_clause({-both, enc.member(i)});
            enc.builder().add_clause({-both, goal});
            gains.push_back(both);
        }
    }
    enc.builder().add_clause(gains);
    auto found = enc.solve(n);
    if (found && !weakly_blocks(g, *found, pi))
        throw integrity_error("membership encoding returned a non-weakly-blocking group");
    return found;
}

/// Seats groups whose members are all satisfied standing alone, largest
/// first, until none remains; leftovers become singletons. The result is core
/// stable: seated players never strictly improve and leftovers cannot form a
/// self-satisfying group.
inline Partition greedy_core(const BooleanHedonicGame& g) {
    const int n = g.players();
    std::vector<Coalition> blocks_out;
    std::vector<Player> remaining_list(static_cast<std::size_t>(n));
    std::iota(remaining_list.begin(), remaining_list.end(), 1);
    Coalition remaining(remaining_list);

    auto self_satisfying = [&](const Coalition& s) {
        const Partition alone = isolate(s, n);
        for (Player i : s)
            if (!is_satisfied(g, i, alone)) return false;
        return true;
    };

    while (!remaining.empty()) {
        std::optional<Coalition> seat;
        if (g.syntactically_local()) {
            for (int k = static_cast<int>(remaining.size()); k >= 1 && !seat; --k) {
                detail::MembershipEncoding enc(n);
                std::vector<int> members;
                for (Player i = 1; i <= n; ++i) {
                    if (!remaining.contains(i)) {
                        enc.builder().add_clause({-enc.member(i)});
                        continue;
                    }
                    members.push_back(enc.member(i));
                    enc.builder().add_clause({-enc.member(i), enc.goal_signal(g.goal(i), i, remaining)});
                }
                enc.builder().at_least(members, k);
                seat = enc.solve(n);
            }
        } else {
            if (static_cast<int>(remaining.size()) > detail::max_subset_players)
                throw limit_error("core construction for relaxed games supports at most " +
                                  std::to_string(detail::max_subset_players) + " players");
            std::vector<Player> pool(remaining.begin(), remaining.end());
            const std::uint64_t full = std::uint64_t{1} << pool.size();
            int best = 0;
            for (std::uint64_t mask = 1; mask < full; ++mask) {
                std::vector<Player> members;
                for (std::size_t k = 0; k < pool.size(); ++k)
                    if (mask >> k & 1u) members.push_back(pool[k]);
                if (static_cast<int>(members.size()) <= best) continue;
                Coalition s(std::move(members));
                if (self_satisfying(s)) {
                    best = static_cast<int>(s.size());
                    seat = std::move(s);
                }
            }
        }
        if (!seat) break;
        if (!self_satisfying(*seat)) throw integrity_error("seated group is not self-satisfying");
        blocks_out.push_back(*seat);
        remaining = remaining.without(*seat);
    }
    for (Player i : remaining) blocks_out.push_back(Coalition{i});
    return Partition(n, std::move(blocks_out));
}

}  // namespace hedonic
