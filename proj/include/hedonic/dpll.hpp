#pragma once

// Complete DPLL search with two-watched-literal unit propagation and
// chronological backtracking. No clause learning.
//
// Decisions take the lowest-numbered unassigned variable and try false
// first, so the first model found is the lexicographically least one over
// the variables that are ever decided. Encodings exploit this by giving the
// variables they care about the smallest numbers.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include "hedonic/cnf.hpp"

namespace hedonic {

class DpllSolver {
public:
    explicit DpllSolver(int variable_count) : n_(variable_count), watches_(2 * (static_cast<std::size_t>(variable_count) + 1)) {}

    DpllSolver(int variable_count, const std::vector<Clause>& clauses) : DpllSolver(variable_count) {
        for (const auto& c : clauses) add_clause(c);
    }

    explicit DpllSolver(const CnfDoc& doc) : DpllSolver(doc.variable_count, doc.clauses) {}

    int variable_count() const noexcept { return n_; }

    /// Adds a clause; allowed between calls to `solve`.
    void add_clause(Clause c) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::size_t k = 0; k + 1 < c.size(); ++k)
            for (std::size_t m = k + 1; m < c.size(); ++m)
                if (c[k] == -c[m]) return;  // tautology
        for (int l : c)
            if (l == 0 || std::abs(l) > n_) throw domain_error("literal out of range in clause");
        if (c.empty()) {
            has_empty_ = true;
            return;
        }
        if (c.size() == 1) {
            units_.push_back(c[0]);
            return;
        }
        const int id = static_cast<int>(clauses_.size());
        watches_[slot(c[0])].push_back(id);
        watches_[slot(c[1])].push_back(id);
        clauses_.push_back(std::move(c));
    }

    /// A satisfying total assignment (index 0 unused), or nullopt if unsatisfiable.
    std::optional<std::vector<bool>> solve() {
        reset();
        if (has_empty_) return std::nullopt;
        for (int u : units_) {
            if (value(u) == 0) return std::nullopt;
            if (value(u) < 0) assign(u);
        }
        if (!propagate()) return std::nullopt;

        struct Decision {
            std::size_t trail_size;
            int literal;
            bool flipped;
        };
        std::vector<Decision> decisions;
        while (true) {
            int v = next_unassigned();
            if (v == 0) {
                std::vector<bool> model(static_cast<std::size_t>(n_) + 1, false);
                for (int x = 1; x <= n_; ++x) model[x] = assignment_[x] == 1;
                return model;
            }
            decisions.push_back({trail_.size(), -v, false});
            ++decision_count_;
            assign(-v);
            while (!propagate()) {
                while (!decisions.empty() && decisions.back().flipped) {
                    undo(decisions.back().trail_size);
                    decisions.pop_back();
                }
                if (decisions.empty()) return std::nullopt;
                Decision& d = decisions.back();
                undo(d.trail_size);
                d.flipped = true;
                assign(-d.literal);
            }
        }
    }

    long decisions() const noexcept { return decision_count_; }

private:
    static std::size_t slot(int lit) { return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0); }

    /// 1 true, 0 false, -1 unassigned.
    int value(int lit) const {
        int a = assignment_[std::abs(lit)];
        if (a < 0) return -1;
        return lit > 0 ? a : 1 - a;
    }

    void assign(int lit) {
        assignment_[std::abs(lit)] = lit > 0 ? 1 : 0;
        trail_.push_back(lit);
    }

    void reset() {
        assignment_.assign(static_cast<std::size_t>(n_) + 1, -1);
        trail_.clear();
        head_ = 0;
        next_ = 1;
    }

    void undo(std::size_t size) {
        while (trail_.size() > size) {
            int v = std::abs(trail_.back());
            assignment_[v] = -1;
            next_ = std::min(next_, v);
            trail_.pop_back();
        }
        head_ = std::min(head_, size);
    }

    int next_unassigned() {
        while (next_ <= n_ && assignment_[next_] >= 0) ++next_;
        return next_ <= n_ ? next_ : 0;
    }

    bool propagate() {
        while (head_ < trail_.size()) {
            const int falsified = -trail_[head_++];
            auto& list = watches_[slot(falsified)];
            std::size_t keep = 0;
            for (std::size_t k = 0; k < list.size(); ++k) {
                const int id = list[k];
                Clause& c = clauses_[id];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (value(c[0]) == 1) {
                    list[keep++] = id;
                    continue;
                }
                bool moved = false;
                for (std::size_t m = 2; m < c.size(); ++m) {
                    if (value(c[m]) != 0) {
                        std::swap(c[1], c[m]);
                        watches_[slot(c[1])].push_back(id);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                list[keep++] = id;
                if (value(c[0]) == 0) {
                    for (++k; k < list.size(); ++k) list[keep++] = list[k];
                    list.resize(keep);
                    return false;
                }
                assign(c[0]);
            }
            list.resize(keep);
        }
        return true;
    }

    int n_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> units_;
    bool has_empty_ = false;

    std::vector<signed char> assignment_;
    std::vector<int> trail_;
    std::size_t head_ = 0;
    int next_ = 1;
    long decision_count_ = 0;
};

}  // namespace hedonic
