#pragma once

// Boolean hedonic games: one goal formula per player. A player is satisfied
// by a partition iff the partition satisfies the goal; preferences are
// therefore dichotomous.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hedonic/error.hpp"
#include "hedonic/formula.hpp"
#include "hedonic/logic.hpp"
#include "hedonic/parse.hpp"
#include "hedonic/partition.hpp"

namespace hedonic {

enum class Preference { strictly_prefers, indifferent, strictly_dispreferred };

class BooleanHedonicGame {
public:
    /// `goals[i-1]` is player i's goal. Unless `relaxed`, every goal must
    /// mention only its own player's variables.
    BooleanHedonicGame(std::vector<Formula> goals, bool relaxed = false)
        : goals_(std::move(goals)), relaxed_(relaxed) {
        std::vector<std::string> problems;
        const int n = players();
        if (n < 1) problems.push_back("a game needs at least one player");
        for (Player i = 1; i <= n; ++i) {
            const Formula& g = goals_[i - 1];
            if (max_player(g) > n) {
                problems.push_back("goal of player " + std::to_string(i) + " mentions players beyond " + std::to_string(n));
                continue;
            }
            if (!is_syntactically_local(g, i)) {
                syntactic_ = false;
                if (!relaxed_)
                    problems.push_back("goal of player " + std::to_string(i) + " mentions variables of other players: " +
                                       format_formula(g));
            }
        }
        if (!problems.empty()) throw validation_error(std::move(problems));
        hedonic_ = syntactic_;
        if (!syntactic_ && n <= max_locality_players) {
            hedonic_ = true;
            for (Player i = 1; i <= n && hedonic_; ++i) hedonic_ = is_i_local(goals_[i - 1], i, n);
        }
    }

    int players() const noexcept { return static_cast<int>(goals_.size()); }
    const Formula& goal(Player i) const {
        if (i < 1 || i > players()) throw domain_error("unknown player " + std::to_string(i));
        return goals_[i - 1];
    }
    const std::vector<Formula>& goals() const noexcept { return goals_; }
    bool relaxed() const noexcept { return relaxed_; }
    /// Every goal mentions only its own player's variables.
    bool syntactically_local() const noexcept { return syntactic_; }
    /// Every goal depends only on its player's coalition (certified by
    /// enumeration for relaxed games with at most 8 players).
    bool hedonic() const noexcept { return hedonic_; }

private:
    std::vector<Formula> goals_;
    bool relaxed_;
    bool syntactic_ = true;
    bool hedonic_ = true;
};

inline void require_players(const BooleanHedonicGame& g, const Partition& pi) {
    if (pi.players() != g.players())
        throw domain_error("partition has " + std::to_string(pi.players()) + " players, game has " +
                           std::to_string(g.players()));
}

inline bool is_satisfied(const BooleanHedonicGame& g, Player i, const Partition& pi) {
    return evaluate(pi, g.goal(i));
}

/// How player i ranks pi against pi2.
inline Preference prefers(const BooleanHedonicGame& g, Player i, const Partition& pi, const Partition& pi2) {
    bool a = is_satisfied(g, i, pi);
    bool b = is_satisfied(g, i, pi2);
    if (a && !b) return Preference::strictly_prefers;
    if (!a && b) return Preference::strictly_dispreferred;
    return Preference::indifferent;
}

struct SatisfactionProfile {
    Partition partition;
    Coalition satisfied;
};

inline SatisfactionProfile satisfaction_profile(const BooleanHedonicGame& g, const Partition& pi) {
    require_players(g, pi);
    std::vector<Player> sat;
    for (Player i = 1; i <= g.players(); ++i)
        if (is_satisfied(g, i, pi)) sat.push_back(i);
    return {pi, Coalition(std::move(sat))};
}

inline int welfare(const BooleanHedonicGame& g, const Partition& pi) {
    return static_cast<int>(satisfaction_profile(g, pi).satisfied.size());
}

/// The DNF goal whose satisfactory coalitions are exactly `satisfactory`:
/// one term per coalition S, p(i,j) for j in S and ~p(i,k) for k outside.
inline Formula goal_from_coalition_list(Player i, const std::vector<Coalition>& satisfactory, int n) {
    std::vector<Formula> terms;
    for (const auto& s : satisfactory) {
        if (!s.contains(i))
            throw precondition_error("coalition {" + format_coalition(s) + "} does not contain player " + std::to_string(i));
        if (s.max() > n) throw domain_error("coalition {" + format_coalition(s) + "} outside 1.." + std::to_string(n));
        std::vector<Formula> literals;
        for (Player j = 1; j <= n; ++j) {
            if (j == i) continue;
            literals.push_back(s.contains(j) ? p(i, j) : !p(i, j));
        }
        terms.push_back(conjoin(std::move(literals)));
    }
    return disjoin(std::move(terms));
}

/// The partition in which `s` is a block and everybody else is alone.
inline Partition isolate(const Coalition& s, int n) {
    std::vector<Coalition> blocks{s};
    for (Player j = 1; j <= n; ++j)
        if (!s.contains(j)) blocks.push_back(Coalition{j});
    return Partition(n, std::move(blocks));
}

/// Coalitions containing i that satisfy i's (hedonic) goal, in mask order.
inline std::vector<Coalition> satisfactory_coalitions(const BooleanHedonicGame& g, Player i) {
    const int n = g.players();
    if (n > 20) throw limit_error("coalition listing supports at most 20 players");
    std::vector<Coalition> out;
    const std::uint64_t own = std::uint64_t{1} << (i - 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (!(mask & own)) continue;
        Coalition s = Coalition::from_mask(mask);
        if (evaluate(isolate(s, n), g.goal(i))) out.push_back(std::move(s));
    }
    return out;
}

/// Reads the game document
///   {"players": [1, ..., n], "goals": {"1": "<formula>", ...}, "relaxed": false}
/// collecting every problem before failing.
inline BooleanHedonicGame load_game(const nlohmann::json& doc) {
    std::vector<std::string> problems;
    if (!doc.is_object()) throw validation_error({"game document must be a JSON object"});
    if (!doc.contains("players") || !doc["players"].is_array())
        throw validation_error({"\"players\" must be an array of player ids"});
    if (!doc.contains("goals") || !doc["goals"].is_object())
        throw validation_error({"\"goals\" must be an object keyed by player id"});
    const auto& players = doc["players"];
    const int n = static_cast<int>(players.size());
    for (std::size_t k = 0; k < players.size(); ++k) {
        if (!players[k].is_number_integer() || players[k].get<long long>() != static_cast<long long>(k) + 1) {
            problems.push_back("players must be exactly 1.." + std::to_string(n) + " in order");
            break;
        }
    }
    bool relaxed = false;
    if (doc.contains("relaxed")) {
        if (!doc["relaxed"].is_boolean()) problems.push_back("\"relaxed\" must be a boolean");
        else relaxed = doc["relaxed"].get<bool>();
    }
    for (const auto& [key, value] : doc["goals"].items()) {
        bool known = false;
        for (Player i = 1; i <= n; ++i) known = known || key == std::to_string(i);
        if (!known) problems.push_back("goal for unknown player \"" + key + "\"");
    }
    std::vector<Formula> goals;
    for (Player i = 1; i <= n; ++i) {
        const std::string key = std::to_string(i);
        if (!doc["goals"].contains(key)) {
            problems.push_back("missing goal for player " + key);
            continue;
        }
        const auto& text = doc["goals"][key];
        if (!text.is_string()) {
            problems.push_back("goal of player " + key + " must be a string");
            continue;
        }
        try {
            goals.push_back(parse_formula(text.get<std::string>(), n));
        } catch (const parse_error& e) {
            problems.push_back("goal of player " + key + ": " + e.what());
        }
    }
    if (!problems.empty()) throw validation_error(std::move(problems));
    return BooleanHedonicGame(std::move(goals), relaxed);
}

inline BooleanHedonicGame load_game_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error({std::string("malformed JSON: ") + e.what()});
    }
    return load_game(doc);
}

inline BooleanHedonicGame load_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error({"cannot open game file " + path});
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_game_text(buffer.str());
}

inline nlohmann::json game_document(const BooleanHedonicGame& g) {
    nlohmann::json doc;
    doc["players"] = nlohmann::json::array();
    for (Player i = 1; i <= g.players(); ++i) {
        doc["players"].push_back(i);
        doc["goals"][std::to_string(i)] = format_formula(g.goal(i));
    }
    if (g.relaxed()) doc["relaxed"] = true;
    return doc;
}

}  // namespace hedonic
