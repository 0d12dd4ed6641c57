#pragma once

// Solution concepts. Each concept has a checker that follows the definition
// directly and, where one exists, a formula whose models are exactly the
// partitions satisfying the concept.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hedonic/deviation.hpp"
#include "hedonic/error.hpp"
#include "hedonic/formula.hpp"
#include "hedonic/game.hpp"
#include "hedonic/logic.hpp"
#include "hedonic/partition.hpp"
#include "hedonic/solve.hpp"

namespace hedonic {

enum class Concept { ir, perfect, nash, core, strict_core, envy_free, pareto, welfare_optimal };

inline constexpr std::array<Concept, 8> all_concepts{Concept::ir,          Concept::perfect,   Concept::nash,
                                                     Concept::core,        Concept::strict_core, Concept::envy_free,
                                                     Concept::pareto,      Concept::welfare_optimal};

inline std::string_view concept_name(Concept c) {
    switch (c) {
        case Concept::ir: return "ir";
        case Concept::perfect: return "perfect";
        case Concept::nash: return "nash";
        case Concept::core: return "core";
        case Concept::strict_core: return "strict-core";
        case Concept::envy_free: return "envy-free";
        case Concept::pareto: return "pareto";
        case Concept::welfare_optimal: return "welfare-optimal";
    }
    return "?";
}

inline std::optional<Concept> parse_concept(std::string_view name) {
    for (Concept c : all_concepts)
        if (concept_name(c) == name) return c;
    return std::nullopt;
}

/// Player moves to `target` (empty: goes alone).
struct DeviationWitness {
    Player player;
    Coalition target;
};
struct GroupWitness {
    Coalition group;
    bool weak;
};
struct EnvyWitness {
    Player envious;
    Player envied;
};
struct UnsatisfiedWitness {
    Coalition players;
};
struct DominationWitness {
    Partition better;
};
struct WelfareWitness {
    int achieved;
    int optimum;
    Partition best;
};

using Witness = std::variant<std::monostate, DeviationWitness, GroupWitness, EnvyWitness, UnsatisfiedWitness,
                             DominationWitness, WelfareWitness>;

struct ConceptReport {
    Concept concept_id;
    bool holds;
    Witness witness;
};

inline std::string format_witness(const Witness& w) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const DeviationWitness& d) const {
            return std::to_string(d.player) + " -> " + format_coalition(d.target);
        }
        std::string operator()(const GroupWitness& g) const {
            return (g.weak ? "weakly blocked by " : "blocked by ") + format_coalition(g.group);
        }
        std::string operator()(const EnvyWitness& e) const {
            return std::to_string(e.envious) + " envies " + std::to_string(e.envied);
        }
        std::string operator()(const UnsatisfiedWitness& u) const { return "unsatisfied " + format_coalition(u.players); }
        std::string operator()(const DominationWitness& d) const { return "dominated by " + format_partition(d.better); }
        std::string operator()(const WelfareWitness& w) const {
            return "welfare " + std::to_string(w.achieved) + " < " + std::to_string(w.optimum) + " at " +
                   format_partition(w.best);
        }
    } visitor;
    return std::visit(visitor, w);
}

/// `<concept> <holds|fails> [witness]`
inline std::string format_report(const ConceptReport& r) {
    std::string line = std::string(concept_name(r.concept_id)) + (r.holds ? " holds" : " fails");
    std::string w = format_witness(r.witness);
    if (!w.empty()) line += " " + w;
    return line;
}

namespace detail {

inline void require_hedonic(const BooleanHedonicGame& g, std::string_view what) {
    if (!g.hedonic())
        throw unsupported_error(std::string(what) + " needs goals that depend only on the player's own coalition");
}

inline void require_syntactic(const BooleanHedonicGame& g, std::string_view what) {
    if (!g.syntactically_local())
        throw unsupported_error(std::string(what) + " needs every goal to mention only its own player's variables");
}

/// Largest n for the formulas that conjoin over every group.
inline constexpr int max_group_formula_players = 6;

inline void require_group_formula_size(const BooleanHedonicGame& g) {
    if (g.players() > max_group_formula_players)
        throw limit_error("core formulas conjoin over all 2^n groups and support at most " +
                          std::to_string(max_group_formula_players) + " players; use the enumeration checker");
}

/// Nonempty groups in ascending mask order.
inline std::vector<Coalition> all_groups(int n) {
    std::vector<Coalition> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) out.push_back(Coalition::from_mask(mask));
    return out;
}

}  // namespace detail

// --- individual rationality ------------------------------------------------

/// i weakly prefers its coalition in pi to being alone.
inline bool is_acceptable(const BooleanHedonicGame& g, Player i, const Partition& pi) {
    require_players(g, pi);
    return prefers(g, i, pi, move(pi, Coalition{i}, Coalition{})) != Preference::strictly_dispreferred;
}

inline ConceptReport check_ir(const BooleanHedonicGame& g, const Partition& pi) {
    for (Player i = 1; i <= g.players(); ++i)
        if (!is_acceptable(g, i, pi)) return {Concept::ir, false, DeviationWitness{i, Coalition{}}};
    return {Concept::ir, true, {}};
}

inline Formula ir_formula(const BooleanHedonicGame& g) {
    std::vector<Formula> parts;
    for (Player i = 1; i <= g.players(); ++i)
        parts.push_back(implies(deviation_subst(g.goal(i), i, Coalition{}), g.goal(i)));
    return conjoin(std::move(parts));
}

// --- perfection --------------------------------------------------------------

inline bool is_perfect(const BooleanHedonicGame& g, const Partition& pi) {
    require_players(g, pi);
    for (Player i = 1; i <= g.players(); ++i)
        if (!is_satisfied(g, i, pi)) return false;
    return true;
}

inline ConceptReport check_perfect(const BooleanHedonicGame& g, const Partition& pi) {
    auto profile = satisfaction_profile(g, pi);
    auto unsatisfied = all_players(g.players()).without(profile.satisfied);
    if (unsatisfied.empty()) return {Concept::perfect, true, {}};
    return {Concept::perfect, false, UnsatisfiedWitness{unsatisfied}};
}

inline Formula perfect_formula(const BooleanHedonicGame& g) {
    // Built directly so the conjunct count is always n, even for n = 1.
    if (g.players() == 1) return g.goal(1);
    return Formula::conjunction(g.goals());
}

// --- Nash stability ------------------------------------------------------------

/// First (player, target) improving deviation: least player, targets ordered
/// empty first then blocks by least member.
inline ConceptReport check_nash(const BooleanHedonicGame& g, const Partition& pi) {
    detail::require_hedonic(g, "Nash stability");
    require_players(g, pi);
    for (Player i = 1; i <= g.players(); ++i) {
        if (is_satisfied(g, i, pi)) continue;
        for (const auto& target : join_targets(pi, i))
            if (is_satisfied(g, i, move(pi, Coalition{i}, target)))
                return {Concept::nash, false, DeviationWitness{i, target}};
    }
    return {Concept::nash, true, {}};
}

inline bool is_nash_stable(const BooleanHedonicGame& g, const Partition& pi) { return check_nash(g, pi).holds; }

/// Exponential form: one forgetting per player.
inline Formula nash_formula(const BooleanHedonicGame& g) {
    detail::require_hedonic(g, "the Nash formula");
    const int n = g.players();
    std::vector<Formula> parts;
    for (Player i = 1; i <= n; ++i) parts.push_back(implies(forget_exists(i, g.goal(i), n), g.goal(i)));
    return conjoin(std::move(parts));
}

/// Polynomial form: i may join the coalition of any j or go alone.
inline Formula nash_formula_compact(const BooleanHedonicGame& g) {
    detail::require_syntactic(g, "the compact Nash formula");
    const int n = g.players();
    std::vector<Formula> parts;
    for (Player i = 1; i <= n; ++i) {
        const Formula& goal = g.goal(i);
        for (Player j = 1; j <= n; ++j)
            if (j != i) parts.push_back(implies(move_subst(goal, i, j), goal));
        parts.push_back(implies(deviation_subst(goal, i, Coalition{}), goal));
    }
    return conjoin(std::move(parts));
}

// --- group deviations --------------------------------------------------------

inline Formula blocking_formula(const BooleanHedonicGame& g, const Coalition& t) {
    if (t.empty()) throw precondition_error("blocking group is empty");
    std::vector<Formula> parts;
    for (Player i : t) {
        parts.push_back(!g.goal(i));
        parts.push_back(group_subst(g.goal(i), t));
    }
    return conjoin(std::move(parts));
}

inline Formula weak_blocking_formula(const BooleanHedonicGame& g, const Coalition& t) {
    if (t.empty()) throw precondition_error("blocking group is empty");
    std::vector<Formula> keep;
    std::vector<Formula> gain;
    for (Player i : t) {
        Formula after = group_subst(g.goal(i), t);
        keep.push_back(implies(g.goal(i), after));
        gain.push_back(!g.goal(i) && after);
    }
    keep.push_back(disjoin(std::move(gain)));
    return conjoin(std::move(keep));
}

namespace detail {

/// Players above this count are searched by the membership encoding.
inline constexpr int max_exhaustive_group_players = 12;

template <typename Test>
std::optional<Coalition> least_group(const BooleanHedonicGame& g, const Partition& pi, Test test,
                                     std::optional<Coalition> (*search)(const BooleanHedonicGame&, const Partition&)) {
    require_players(g, pi);
    if (g.players() <= max_exhaustive_group_players)
        return first_group(g.players(), [&](const Coalition& t) { return test(g, t, pi); });
    return search(g, pi);
}

}  // namespace detail

inline ConceptReport check_core(const BooleanHedonicGame& g, const Partition& pi) {
    auto t = detail::least_group(g, pi, blocks, exists_blocking_coalition);
    if (t) return {Concept::core, false, GroupWitness{*t, false}};
    return {Concept::core, true, {}};
}

inline ConceptReport check_strict_core(const BooleanHedonicGame& g, const Partition& pi) {
    auto t = detail::least_group(g, pi, weakly_blocks, exists_weakly_blocking_coalition);
    if (t) return {Concept::strict_core, false, GroupWitness{*t, true}};
    return {Concept::strict_core, true, {}};
}

inline bool is_core_stable(const BooleanHedonicGame& g, const Partition& pi) { return check_core(g, pi).holds; }
inline bool is_strict_core_stable(const BooleanHedonicGame& g, const Partition& pi) {
    return check_strict_core(g, pi).holds;
}

/// For every group, some member does not gain by leaving with it.
inline Formula core_formula(const BooleanHedonicGame& g) {
    detail::require_group_formula_size(g);
    std::vector<Formula> parts;
    for (const auto& t : detail::all_groups(g.players())) {
        std::vector<Formula> someone;
        for (Player i : t) someone.push_back(implies(group_subst(g.goal(i), t), g.goal(i)));
        parts.push_back(disjoin(std::move(someone)));
    }
    return conjoin(std::move(parts));
}

/// For every group, some member loses by leaving or nobody gains.
inline Formula strict_core_formula(const BooleanHedonicGame& g) {
    detail::require_group_formula_size(g);
    std::vector<Formula> parts;
    for (const auto& t : detail::all_groups(g.players())) {
        std::vector<Formula> loses;
        std::vector<Formula> nobody_gains;
        for (Player i : t) {
            Formula after = group_subst(g.goal(i), t);
            loses.push_back(g.goal(i) && !after);
            nobody_gains.push_back(implies(after, g.goal(i)));
        }
        parts.push_back(disjoin(std::move(loses)) || conjoin(std::move(nobody_gains)));
    }
    return conjoin(std::move(parts));
}

// --- envy ----------------------------------------------------------------------

inline bool envies(const BooleanHedonicGame& g, Player i, Player j, const Partition& pi) {
    return prefers(g, i, swap(pi, i, j), pi) == Preference::strictly_prefers;
}

inline ConceptReport check_envy_free(const BooleanHedonicGame& g, const Partition& pi) {
    detail::require_hedonic(g, "envy-freeness");
    require_players(g, pi);
    for (Player i = 1; i <= g.players(); ++i)
        for (Player j = 1; j <= g.players(); ++j)
            if (i != j && envies(g, i, j, pi)) return {Concept::envy_free, false, EnvyWitness{i, j}};
    return {Concept::envy_free, true, {}};
}

inline bool is_envy_free(const BooleanHedonicGame& g, const Partition& pi) { return check_envy_free(g, pi).holds; }

inline Formula envy_free_formula(const BooleanHedonicGame& g) {
    detail::require_hedonic(g, "the envy-freeness formula");
    std::vector<Formula> parts;
    for (Player i = 1; i <= g.players(); ++i)
        for (Player j = 1; j <= g.players(); ++j)
            if (i != j) parts.push_back(implies(swap_subst(g.goal(i), i, j), g.goal(i)));
    return conjoin(std::move(parts));
}

// --- Pareto optimality and welfare ---------------------------------------------

/// Satisfied goals plus at least one unsatisfied goal, together with trans,
/// is unsatisfiable. A model is a partition satisfying a strict superset.
inline ConceptReport check_pareto(const BooleanHedonicGame& g, const Partition& pi) {
    auto profile = satisfaction_profile(g, pi);
    std::vector<Formula> parts;
    std::vector<Formula> more;
    for (Player i = 1; i <= g.players(); ++i) {
        if (profile.satisfied.contains(i)) parts.push_back(g.goal(i));
        else more.push_back(g.goal(i));
    }
    parts.push_back(disjoin(std::move(more)));
    auto better = solve_formula(conjoin(std::move(parts)), g.players());
    if (better) return {Concept::pareto, false, DominationWitness{*better}};
    return {Concept::pareto, true, {}};
}

inline bool is_pareto_optimal(const BooleanHedonicGame& g, const Partition& pi) { return check_pareto(g, pi).holds; }

inline ConceptReport check_welfare_optimal(const BooleanHedonicGame& g, const Partition& pi) {
    const int achieved = welfare(g, pi);
    auto best = max_welfare(g);
    if (achieved >= best.optimum) return {Concept::welfare_optimal, true, {}};
    return {Concept::welfare_optimal, false, WelfareWitness{achieved, best.optimum, best.witness}};
}

inline bool is_welfare_optimal(const BooleanHedonicGame& g, const Partition& pi) {
    return check_welfare_optimal(g, pi).holds;
}

// --- dispatch --------------------------------------------------------------------

inline ConceptReport check(const BooleanHedonicGame& g, Concept c, const Partition& pi) {
    switch (c) {
        case Concept::ir: return check_ir(g, pi);
        case Concept::perfect: return check_perfect(g, pi);
        case Concept::nash: return check_nash(g, pi);
        case Concept::core: return check_core(g, pi);
        case Concept::strict_core: return check_strict_core(g, pi);
        case Concept::envy_free: return check_envy_free(g, pi);
        case Concept::pareto: return check_pareto(g, pi);
        case Concept::welfare_optimal: return check_welfare_optimal(g, pi);
    }
    throw domain_error("unknown concept");
}

inline bool has_formula(Concept c) { return c != Concept::pareto && c != Concept::welfare_optimal; }

/// The characterization formula; Nash uses the compact form when goals are
/// syntactically local.
inline Formula concept_formula(const BooleanHedonicGame& g, Concept c) {
    switch (c) {
        case Concept::ir: return ir_formula(g);
        case Concept::perfect: return perfect_formula(g);
        case Concept::nash: return g.syntactically_local() ? nash_formula_compact(g) : nash_formula(g);
        case Concept::core: return core_formula(g);
        case Concept::strict_core: return strict_core_formula(g);
        case Concept::envy_free: return envy_free_formula(g);
        case Concept::pareto:
        case Concept::welfare_optimal: break;
    }
    throw unsupported_error(std::string(concept_name(c)) + " has no characterization formula");
}

enum class Backend { sat, enumeration };

/// Enumeration for up to 6 players, SAT above.
inline Backend default_backend(const BooleanHedonicGame& g) {
    return g.players() <= 6 ? Backend::enumeration : Backend::sat;
}

/// Partitions satisfying the concept in enumeration order; only the first
/// when `all` is false.
inline std::vector<Partition> find_solutions(const BooleanHedonicGame& g, Concept c, Backend via, bool all) {
    std::vector<Partition> out;
    if (via == Backend::enumeration) {
        if (g.players() > max_enumeration_players)
            throw limit_error("partition enumeration supports at most " + std::to_string(max_enumeration_players) +
                              " players; use the SAT backend");
        PartitionEnumerator it(g.players());
        while (auto pi = it.next()) {
            if (!check(g, c, *pi).holds) continue;
            out.push_back(std::move(*pi));
            if (!all) break;
        }
        return out;
    }
    if (c == Concept::pareto) out = all ? enumerate_pareto(g) : std::vector<Partition>{find_pareto(g)};
    else if (c == Concept::welfare_optimal)
        out = all ? enumerate_welfare_optimal(g) : std::vector<Partition>{max_welfare(g).witness};
    else if (all) out = enumerate_formula(concept_formula(g, c), g.players());
    else if (auto pi = solve_formula(concept_formula(g, c), g.players())) out.push_back(*pi);
    return out;
}

}  // namespace hedonic
