#pragma once

// Coalition structures over the players {1..n} and the deviation operators
// that every solution concept is defined through.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hedonic/error.hpp"

namespace hedonic {

/// Players are numbered from 1.
using Player = int;

/// Largest player count accepted by the brute-force partition enumerator.
inline constexpr int max_enumeration_players = 12;

/// A set of players, kept sorted and duplicate free.
class Coalition {
public:
    Coalition() = default;
    Coalition(std::initializer_list<Player> members) : members_(members) { normalize(); }
    explicit Coalition(std::vector<Player> members) : members_(std::move(members)) { normalize(); }

    /// Members 1..n where bit (i-1) of `mask` is set.
    static Coalition from_mask(std::uint64_t mask) {
        std::vector<Player> m;
        for (Player i = 1; mask != 0; ++i, mask >>= 1)
            if (mask & 1u) m.push_back(i);
        return Coalition(std::move(m));
    }

    const std::vector<Player>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    Player min() const { return members_.front(); }
    Player max() const { return members_.back(); }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(Player i) const { return std::binary_search(members_.begin(), members_.end(), i); }

    Coalition without(const Coalition& other) const {
        std::vector<Player> out;
        std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                            std::back_inserter(out));
        return Coalition(std::move(out));
    }
    Coalition intersect(const Coalition& other) const {
        std::vector<Player> out;
        std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                              std::back_inserter(out));
        return Coalition(std::move(out));
    }
    Coalition unite(const Coalition& other) const {
        std::vector<Player> out;
        std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                       std::back_inserter(out));
        return Coalition(std::move(out));
    }

    friend bool operator==(const Coalition&, const Coalition&) = default;
    friend auto operator<=>(const Coalition&, const Coalition&) = default;

private:
    void normalize() {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<Player> members_;
};

/// "1,2,3"; the empty coalition prints as "{}".
inline std::string format_coalition(const Coalition& c) {
    if (c.empty()) return "{}";
    std::string out;
    for (Player i : c) {
        if (!out.empty()) out += ',';
        out += std::to_string(i);
    }
    return out;
}

/// Coalition structure over {1..n}. Always canonical: members ascending,
/// blocks ordered by their minimum member. The empty coalition is never
/// stored; it is accepted as a join target by `move`.
class Partition {
public:
    Partition(int n, std::vector<Coalition> blocks) : n_(n), blocks_(std::move(blocks)) {
        if (n < 1) throw domain_error("partition needs at least one player");
        block_of_.assign(static_cast<std::size_t>(n) + 1, -1);
        for (const auto& b : blocks_) {
            if (b.empty()) throw precondition_error("partition block is empty");
            for (Player i : b) {
                if (i < 1 || i > n) throw domain_error("player " + std::to_string(i) + " outside 1.." + std::to_string(n));
                if (block_of_[i] != -1) throw precondition_error("player " + std::to_string(i) + " repeated");
                block_of_[i] = 0;
            }
        }
        for (Player i = 1; i <= n; ++i)
            if (block_of_[i] == -1) throw precondition_error("player " + std::to_string(i) + " missing");
        std::sort(blocks_.begin(), blocks_.end(), [](const Coalition& a, const Coalition& b) { return a.min() < b.min(); });
        for (std::size_t k = 0; k < blocks_.size(); ++k)
            for (Player i : blocks_[k]) block_of_[i] = static_cast<int>(k);
    }

    /// Builds the partition whose blocks are the classes of equal labels.
    /// `labels[i-1]` is the label of player i.
    static Partition from_labels(const std::vector<int>& labels) {
        std::vector<std::pair<int, std::vector<Player>>> groups;
        for (std::size_t k = 0; k < labels.size(); ++k) {
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == labels[k]; });
            if (it == groups.end()) {
                groups.push_back({labels[k], {}});
                it = std::prev(groups.end());
            }
            it->second.push_back(static_cast<Player>(k + 1));
        }
        std::vector<Coalition> blocks;
        blocks.reserve(groups.size());
        for (auto& g : groups) blocks.emplace_back(std::move(g.second));
        return Partition(static_cast<int>(labels.size()), std::move(blocks));
    }

    static Partition singletons(int n) {
        std::vector<Coalition> blocks;
        for (Player i = 1; i <= n; ++i) blocks.push_back(Coalition{i});
        return Partition(n, std::move(blocks));
    }

    static Partition grand(int n) {
        std::vector<Player> all;
        for (Player i = 1; i <= n; ++i) all.push_back(i);
        return Partition(n, {Coalition(std::move(all))});
    }

    int players() const noexcept { return n_; }
    const std::vector<Coalition>& blocks() const noexcept { return blocks_; }

    bool has_player(Player i) const noexcept { return i >= 1 && i <= n_; }

    std::size_t block_index(Player i) const {
        require(i);
        return static_cast<std::size_t>(block_of_[i]);
    }

    const Coalition& coalition_of(Player i) const { return blocks_[block_index(i)]; }

    bool together(Player i, Player j) const {
        require(i);
        require(j);
        return block_of_[i] == block_of_[j];
    }

    /// Restricted growth string: block index of players 1..n in order.
    std::vector<int> growth_string() const { return {block_of_.begin() + 1, block_of_.end()}; }

    friend bool operator==(const Partition& a, const Partition& b) { return a.block_of_ == b.block_of_; }
    /// Orders partitions of the same n as the enumerator yields them.
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.block_of_ < b.block_of_;
    }

private:
    void require(Player i) const {
        if (!has_player(i)) throw domain_error("unknown player " + std::to_string(i));
    }

    int n_;
    std::vector<Coalition> blocks_;
    std::vector<int> block_of_;  // indexed by player, slot 0 unused
};

inline Coalition all_players(int n) {
    std::vector<Player> all;
    for (Player i = 1; i <= n; ++i) all.push_back(i);
    return Coalition(std::move(all));
}

inline const Coalition& coalition_of(const Partition& pi, Player i) { return pi.coalition_of(i); }

/// {B ∩ T : B ∈ pi}, empty intersections dropped.
inline std::vector<Coalition> restrict(const Partition& pi, const Coalition& t) {
    std::vector<Coalition> out;
    for (const auto& b : pi.blocks()) {
        auto c = b.intersect(t);
        if (!c.empty()) out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<Coalition> restrict_minus(const Partition& pi, const Coalition& t) {
    return restrict(pi, all_players(pi.players()).without(t));
}

/// Every coalition player i may join unilaterally: the empty coalition first,
/// then the blocks of pi restricted to N \ {i}.
inline std::vector<Coalition> join_targets(const Partition& pi, Player i) {
    std::vector<Coalition> out{Coalition{}};
    for (auto& c : restrict_minus(pi, Coalition{i})) out.push_back(std::move(c));
    return out;
}

/// pi[T -> S]: the players in T leave their coalitions and join S, which must
/// be a block of pi restricted to N \ T, or empty.
inline Partition move(const Partition& pi, const Coalition& t, const Coalition& s) {
    if (t.empty()) throw precondition_error("moving group is empty");
    for (Player i : t)
        if (!pi.has_player(i)) throw domain_error("unknown player " + std::to_string(i));
    auto rest = restrict_minus(pi, t);
    if (!s.empty() && std::find(rest.begin(), rest.end(), s) == rest.end())
        throw precondition_error("{" + format_coalition(s) + "} is not a coalition of the partition without {" +
                                 format_coalition(t) + "}");
    std::vector<Coalition> blocks;
    for (auto& b : rest)
        if (b != s) blocks.push_back(std::move(b));
    blocks.push_back(s.unite(t));
    return Partition(pi.players(), std::move(blocks));
}

/// pi[i <-> j]: i and j exchange places.
inline Partition swap(const Partition& pi, Player i, Player j) {
    if (i == j) throw precondition_error("cannot swap a player with itself");
    if (pi.together(i, j)) return pi;
    auto labels = pi.growth_string();
    std::swap(labels[i - 1], labels[j - 1]);
    return Partition::from_labels(labels);
}

/// Streams every partition of {1..n} once, in restricted-growth-string order.
class PartitionEnumerator {
public:
    explicit PartitionEnumerator(int n) : n_(n) {
        if (n < 1 || n > max_enumeration_players)
            throw limit_error("partition enumeration supports 1.." + std::to_string(max_enumeration_players) +
                              " players, got " + std::to_string(n) + "; use the SAT route");
        labels_.assign(n, 0);
        prefix_max_.assign(n, 0);
    }

    std::optional<Partition> next() {
        if (done_) return std::nullopt;
        Partition current = Partition::from_labels(labels_);
        advance();
        return current;
    }

private:
    void advance() {
        // prefix_max_[k] = max(labels_[0..k-1]); position 0 is always 0.
        for (int k = n_ - 1; k >= 1; --k) {
            if (labels_[k] <= prefix_max_[k]) {
                ++labels_[k];
                for (int m = k + 1; m < n_; ++m) {
                    labels_[m] = 0;
                    prefix_max_[m] = std::max(prefix_max_[m - 1], labels_[m - 1]);
                }
                return;
            }
        }
        done_ = true;
    }

    int n_;
    bool done_ = false;
    std::vector<int> labels_;
    std::vector<int> prefix_max_;
};

template <typename F>
void for_each_partition(int n, F&& visit) {
    PartitionEnumerator e(n);
    while (auto pi = e.next()) visit(*pi);
}

inline std::vector<Partition> enumerate_partitions(int n) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& pi) { out.push_back(pi); });
    return out;
}

/// Canonical text: "1,2,3|4".
inline std::string format_partition(const Partition& pi) {
    std::string out;
    for (const auto& b : pi.blocks()) {
        if (!out.empty()) out += '|';
        out += format_coalition(b);
    }
    return out;
}

/// Parses "4|3,1,2" style text. With `n` absent the player set is 1..max.
inline Partition parse_partition(std::string_view text, std::optional<int> n = std::nullopt) {
    std::vector<std::vector<Player>> blocks(1);
    std::size_t pos = 0;
    bool expect_number = true;
    int largest = 0;
    auto skip_spaces = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    std::vector<std::pair<Player, std::size_t>> seen;
    while (true) {
        skip_spaces();
        if (expect_number) {
            std::size_t start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (start == pos) {
                std::string token = pos < text.size() ? std::string(1, text[pos]) : std::string("end of input");
                throw parse_error("expected player number, found '" + token + "'", pos);
            }
            Player v = 0;
            auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, v);
            (void)ptr;
            if (ec != std::errc{} || v < 1)
                throw parse_error("invalid player '" + std::string(text.substr(start, pos - start)) + "'", start);
            for (const auto& [p, at] : seen)
                if (p == v) throw parse_error("player " + std::to_string(v) + " repeated", start);
            seen.emplace_back(v, start);
            blocks.back().push_back(v);
            largest = std::max(largest, v);
            expect_number = false;
            continue;
        }
        if (pos == text.size()) break;
        char c = text[pos];
        if (c == ',') {
            ++pos;
        } else if (c == '|') {
            ++pos;
            blocks.emplace_back();
        } else {
            throw parse_error("unexpected character '" + std::string(1, c) + "'", pos);
        }
        expect_number = true;
    }
    int players = n.value_or(largest);
    for (const auto& [p, at] : seen)
        if (p > players) throw parse_error("player " + std::to_string(p) + " outside 1.." + std::to_string(players), at);
    if (static_cast<int>(seen.size()) != players) {
        std::vector<bool> present(players + 1, false);
        for (const auto& [p, at] : seen) present[p] = true;
        for (Player i = 1; i <= players; ++i)
            if (!present[i]) throw parse_error("player " + std::to_string(i) + " missing", text.size());
    }
    std::vector<Coalition> coalitions;
    for (auto& b : blocks) coalitions.emplace_back(std::move(b));
    return Partition(players, std::move(coalitions));
}

}  // namespace hedonic
