#pragma once

// Clause sets over pair variables. Pair variable p(i,j), i<j, is numbered
//   idx(i,j) = (i-1)*n - i*(i-1)/2 + (j-i)
// so idx(1,2) = 1, idx(1,3) = 2, ..., idx(n-1,n) = C(n,2). Tseitin and
// counter auxiliaries are numbered from C(n,2)+1.

#include <climits>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hedonic/error.hpp"
#include "hedonic/formula.hpp"
#include "hedonic/logic.hpp"
#include "hedonic/partition.hpp"

namespace hedonic {

using Clause = std::vector<int>;

class VarMap {
public:
    explicit VarMap(int n) : n_(n) {
        if (n < 1) throw domain_error("player count must be positive");
    }

    int players() const noexcept { return n_; }
    int pair_count() const noexcept { return n_ * (n_ - 1) / 2; }

    int index(Player i, Player j) const { return index(PairVar(i, j)); }
    int index(const PairVar& v) const {
        if (v.hi() > n_) throw domain_error("pair variable beyond player " + std::to_string(n_));
        const int i = v.lo();
        const int j = v.hi();
        return (i - 1) * n_ - i * (i - 1) / 2 + (j - i);
    }

    PairVar pair(int index) const {
        for (Player i = 1; i < n_; ++i) {
            int first = (i - 1) * n_ - i * (i - 1) / 2 + 1;
            int last = first + (n_ - i) - 1;
            if (index >= first && index <= last) return PairVar(i, i + (index - first) + 1);
        }
        throw domain_error("variable " + std::to_string(index) + " is not a pair variable");
    }

private:
    int n_;
};

/// A CNF over `variable_count` variables whose first `vars.pair_count()`
/// variables are the pair variables.
struct CnfDoc {
    VarMap vars;
    int variable_count = 0;
    std::vector<Clause> clauses;

    int pair_variables() const noexcept { return vars.pair_count(); }
};

/// Literal-or-constant produced by the encoder. Constants are the sentinels
/// `true_signal` / `false_signal`, so negation is plain sign flip.
inline constexpr int true_signal = INT_MAX;
inline constexpr int false_signal = -INT_MAX;
inline bool is_constant_signal(int s) { return s == true_signal || s == false_signal; }

class CnfBuilder {
public:
    /// Without `reserve_pairs` numbering starts at 1 and `encode(phi)` over
    /// pair variables must not be used.
    explicit CnfBuilder(int n, bool reserve_pairs = true)
        : doc_{VarMap(n), reserve_pairs ? VarMap(n).pair_count() : 0, {}}, pairs_(reserve_pairs) {}

    const VarMap& vars() const noexcept { return doc_.vars; }
    int variable_count() const noexcept { return doc_.variable_count; }

    int new_var() { return ++doc_.variable_count; }

    /// Adds a clause of signals: constants are folded, a true constant drops it.
    void add_clause(const std::vector<int>& signals) {
        Clause c;
        for (int s : signals) {
            if (s == true_signal) return;
            if (s == false_signal) continue;
            c.push_back(s);
        }
        doc_.clauses.push_back(std::move(c));
    }

    /// Every transitivity implication as a 3-literal clause.
    void add_transitivity() {
        const int n = doc_.vars.players();
        const auto& v = doc_.vars;
        for (Player i = 1; i <= n; ++i)
            for (Player j = i + 1; j <= n; ++j)
                for (Player k = j + 1; k <= n; ++k) {
                    int ij = v.index(i, j), jk = v.index(j, k), ik = v.index(i, k);
                    doc_.clauses.push_back({-ij, -jk, ik});
                    doc_.clauses.push_back({-ij, -ik, jk});
                    doc_.clauses.push_back({-ik, -jk, ij});
                }
    }

    /// Tseitin encoding of phi with atoms mapped through `atom_signal`.
    /// Gates are full equivalences, so propagation over the inputs fixes every
    /// auxiliary. `memo` caches shared subterms for one atom mapping and is
    /// keyed by node address, so phi must outlive it.
    template <typename AtomSignal>
    int encode(const Formula& phi, const AtomSignal& atom_signal, std::unordered_map<const void*, int>& memo) {
        switch (phi.kind()) {
            case Connective::top: return true_signal;
            case Connective::bot: return false_signal;
            case Connective::atom: return atom_signal(phi.var());
            case Connective::negation: return -encode(phi.operands()[0], atom_signal, memo);
            default: break;
        }
        if (auto hit = memo.find(phi.identity()); hit != memo.end()) return hit->second;
        int out = 0;
        auto ops = phi.operands();
        switch (phi.kind()) {
            case Connective::conjunction:
            case Connective::disjunction: {
                std::vector<int> inputs;
                for (const auto& f : ops) inputs.push_back(encode(f, atom_signal, memo));
                out = phi.kind() == Connective::conjunction ? and_gate(inputs) : -and_gate(negate(inputs));
                break;
            }
            case Connective::implication: {
                int a = encode(ops[0], atom_signal, memo);
                int b = encode(ops[1], atom_signal, memo);
                out = -and_gate({a, -b});
                break;
            }
            case Connective::equivalence: {
                int a = encode(ops[0], atom_signal, memo);
                int b = encode(ops[1], atom_signal, memo);
                out = iff_gate(a, b);
                break;
            }
            default: break;
        }
        memo.emplace(phi.identity(), out);
        return out;
    }

    /// Encodes phi over the pair variables.
    int encode(const Formula& phi) {
        if (!pairs_) throw precondition_error("builder has no pair variables");
        keep_alive_.push_back(phi);  // memo keys are node addresses
        return encode(phi, [this](const PairVar& v) { return doc_.vars.index(v); }, pair_memo_);
    }

    /// Asserts phi over the pair variables, splitting top-level conjunctions
    /// and emitting top-level disjunctions as single clauses.
    void require(const Formula& phi) {
        if (phi.kind() == Connective::conjunction) {
            for (const auto& f : phi.operands()) require(f);
            return;
        }
        if (phi.kind() == Connective::disjunction) {
            std::vector<int> lits;
            for (const auto& f : phi.operands()) lits.push_back(encode(f));
            add_clause(lits);
            return;
        }
        add_clause({encode(phi)});
    }

    /// Sequential counter: at most k of `signals` are true.
    void at_most(const std::vector<int>& signals, int k) {
        std::vector<int> x;
        for (int s : signals) {
            if (s == true_signal) --k;
            else if (s != false_signal) x.push_back(s);
        }
        if (k < 0) {
            add_clause({});
            return;
        }
        const int m = static_cast<int>(x.size());
        if (k >= m) return;
        if (k == 0) {
            for (int l : x) add_clause({-l});
            return;
        }
        // r[i][j]: at least j+1 of x[0..i] are true.
        std::vector<std::vector<int>> r(m - 1, std::vector<int>(k));
        for (auto& row : r)
            for (auto& v : row) v = new_var();
        add_clause({-x[0], r[0][0]});
        for (int j = 1; j < k; ++j) add_clause({-r[0][j]});
        for (int i = 1; i < m - 1; ++i) {
            add_clause({-x[i], r[i][0]});
            add_clause({-r[i - 1][0], r[i][0]});
            for (int j = 1; j < k; ++j) {
                add_clause({-x[i], -r[i - 1][j - 1], r[i][j]});
                add_clause({-r[i - 1][j], r[i][j]});
            }
            add_clause({-x[i], -r[i - 1][k - 1]});
        }
        add_clause({-x[m - 1], -r[m - 2][k - 1]});
    }

    /// At least k of `signals` are true.
    void at_least(const std::vector<int>& signals, int k) {
        at_most(negate(signals), static_cast<int>(signals.size()) - k);
    }

    const CnfDoc& doc() const noexcept { return doc_; }
    CnfDoc finish() && { return std::move(doc_); }

private:
    static std::vector<int> negate(std::vector<int> s) {
        for (int& l : s) l = -l;
        return s;
    }

    int and_gate(const std::vector<int>& inputs) {
        std::vector<int> lits;
        for (int s : inputs) {
            if (s == false_signal) return false_signal;
            if (s == true_signal) continue;
            lits.push_back(s);
        }
        if (lits.empty()) return true_signal;
        if (lits.size() == 1) return lits.front();
        int x = new_var();
        Clause back{x};
        for (int l : lits) {
            doc_.clauses.push_back({-x, l});
            back.push_back(-l);
        }
        doc_.clauses.push_back(std::move(back));
        return x;
    }

    int iff_gate(int a, int b) {
        if (is_constant_signal(a)) return a == true_signal ? b : -b;
        if (is_constant_signal(b)) return b == true_signal ? a : -a;
        if (a == b) return true_signal;
        if (a == -b) return false_signal;
        int x = new_var();
        doc_.clauses.push_back({-x, -a, b});
        doc_.clauses.push_back({-x, a, -b});
        doc_.clauses.push_back({x, a, b});
        doc_.clauses.push_back({x, -a, -b});
        return x;
    }

    CnfDoc doc_;
    bool pairs_;
    std::unordered_map<const void*, int> pair_memo_;
    std::vector<Formula> keep_alive_;
};

/// Equisatisfiable CNF of phi & trans over n players.
inline CnfDoc compile_cnf(const Formula& phi, int n) {
    if (max_player(phi) > n) throw domain_error("formula mentions players beyond " + std::to_string(n));
    CnfBuilder b(n);
    b.add_transitivity();
    b.require(phi);
    return std::move(b).finish();
}

/// DIMACS text: one `c pair i j = idx` line per pair variable, the header,
/// then zero-terminated clauses.
inline void write_dimacs(const CnfDoc& doc, std::ostream& out) {
    const int n = doc.vars.players();
    for (Player i = 1; i <= n; ++i)
        for (Player j = i + 1; j <= n; ++j) out << "c pair " << i << ' ' << j << " = " << doc.vars.index(i, j) << '\n';
    out << "p cnf " << doc.variable_count << ' ' << doc.clauses.size() << '\n';
    for (const auto& c : doc.clauses) {
        for (int l : c) out << l << ' ';
        out << "0\n";
    }
}

inline std::string to_dimacs(const CnfDoc& doc) {
    std::ostringstream out;
    write_dimacs(doc, out);
    return out.str();
}

/// Reads DIMACS; the player count comes from the `c pair` comments unless
/// given explicitly.
inline CnfDoc read_dimacs(std::istream& in, std::optional<int> players = std::nullopt) {
    std::string line;
    int n = 1;
    int declared_vars = -1;
    long declared_clauses = -1;
    std::vector<Clause> clauses;
    Clause current;
    std::vector<std::pair<PairVar, int>> pairs;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "c") {
            std::string word;
            Player i = 0, j = 0;
            std::string eq;
            int index = 0;
            if (ls >> word && word == "pair" && ls >> i >> j >> eq >> index && eq == "=") {
                pairs.emplace_back(PairVar(i, j), index);
                n = std::max(n, std::max(i, j));
            }
            continue;
        }
        if (head == "p") {
            std::string fmt;
            if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf")
                throw parse_error("malformed DIMACS header on line " + std::to_string(line_no), 0);
            continue;
        }
        if (declared_vars < 0) throw parse_error("clause before DIMACS header on line " + std::to_string(line_no), 0);
        std::istringstream cs(line);
        long lit = 0;
        while (cs >> lit) {
            if (lit == 0) {
                clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::labs(lit) > declared_vars)
                    throw parse_error("literal " + std::to_string(lit) + " exceeds the declared variable count", 0);
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (declared_vars < 0) throw parse_error("missing DIMACS header", 0);
    if (!current.empty()) clauses.push_back(std::move(current));
    CnfDoc doc{VarMap(players.value_or(n)), declared_vars, std::move(clauses)};
    for (const auto& [v, index] : pairs)
        if (doc.vars.index(v) != index)
            throw integrity_error("pair comment numbers p(" + std::to_string(v.lo()) + "," + std::to_string(v.hi()) +
                                  ") as " + std::to_string(index));
    if (doc.vars.pair_count() > declared_vars) throw integrity_error("fewer variables than pair variables");
    return doc;
}

/// Parses a solver's answer: `s SATISFIABLE` / `s UNSATISFIABLE` with `v`
/// literal lines (competition format), or `SAT` / `UNSAT` followed by a
/// literal line (MiniSat result files). Returns nullopt for UNSAT.
inline std::optional<std::vector<bool>> read_solver_model(std::istream& in, int variable_count) {
    std::string line;
    std::optional<bool> sat;
    std::vector<bool> assignment(static_cast<std::size_t>(variable_count) + 1, false);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "c") continue;
        if (head == "s") {
            std::string verdict;
            ls >> verdict;
            sat = verdict == "SATISFIABLE";
            continue;
        }
        if (head == "SAT" || head == "UNSAT") {
            sat = head == "SAT";
            continue;
        }
        std::istringstream vs(line);
        if (head == "v") vs >> head;
        long lit = 0;
        while (vs >> lit) {
            if (lit == 0) continue;
            if (std::labs(lit) > variable_count) throw parse_error("model literal out of range", 0);
            assignment[std::labs(lit)] = lit > 0;
        }
    }
    if (!sat) throw parse_error("solver output has no verdict", 0);
    if (!*sat) return std::nullopt;
    return assignment;
}

}  // namespace hedonic
