#pragma once

// Text syntax for goal formulas.
//
//   iff     := implies ('<->' implies)*          left associative
//   implies := or ('->' implies)?                right associative
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | primary
//   primary := 'true' | 'false' | 'p(' i ',' j ')' | '(' iff ')'
//            | 'same(' i1, ..., im [';' j1, ..., jk] ')'
//            | 'apart(' i ';' j1, ..., jk ')'
//
// same(i1,...,im; j1,...,jk) expands to p(i1,i2) & ... & p(i1,im) &
// ~p(i1,j1) & ... & ~p(i1,jk); apart(i; j1,...,jk) to ~p(i,j1) & ... & ~p(i,jk).

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "hedonic/error.hpp"
#include "hedonic/formula.hpp"

namespace hedonic {

namespace detail {

class FormulaParser {
public:
    FormulaParser(std::string_view text, int n) : text_(text), n_(n) {}

    Formula parse() {
        Formula f = parse_iff();
        skip_spaces();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_); }

    void skip_spaces() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view token) {
        skip_spaces();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) {
            skip_spaces();
            fail("expected '" + std::string(token) + "'");
        }
    }

    bool accept_keyword(std::string_view word) {
        skip_spaces();
        if (text_.substr(pos_, word.size()) != word) return false;
        std::size_t end = pos_ + word.size();
        if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) return false;
        pos_ = end;
        return true;
    }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        while (accept("<->")) lhs = iff(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (accept("->")) return implies(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        std::vector<Formula> operands{parse_and()};
        while (accept("|")) operands.push_back(parse_and());
        return disjoin(std::move(operands));
    }

    Formula parse_and() {
        std::vector<Formula> operands{parse_unary()};
        while (accept("&")) operands.push_back(parse_unary());
        return conjoin(std::move(operands));
    }

    Formula parse_unary() {
        if (accept("~")) return !parse_unary();
        return parse_primary();
    }

    Formula parse_primary() {
        skip_spaces();
        if (accept("(")) {
            Formula f = parse_iff();
            expect(")");
            return f;
        }
        if (accept_keyword("true")) return Formula::top();
        if (accept_keyword("false")) return Formula::bot();
        if (accept_keyword("p")) {
            expect("(");
            std::size_t at = pos_;
            Player i = parse_player();
            expect(",");
            Player j = parse_player();
            expect(")");
            return atom_at(i, j, at);
        }
        if (accept_keyword("same")) return parse_same();
        if (accept_keyword("apart")) return parse_apart();
        if (pos_ == text_.size()) fail("unexpected end of formula");
        fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }

    Formula parse_same() {
        expect("(");
        std::size_t at = pos_;
        std::vector<Player> together = parse_player_list();
        std::vector<Player> apart;
        if (accept(";")) apart = parse_player_list();
        expect(")");
        std::vector<Formula> literals;
        for (std::size_t k = 1; k < together.size(); ++k) literals.push_back(atom_at(together[0], together[k], at));
        for (Player j : apart) literals.push_back(!atom_at(together[0], j, at));
        return conjoin(std::move(literals));
    }

    Formula parse_apart() {
        expect("(");
        std::size_t at = pos_;
        Player i = parse_player();
        expect(";");
        std::vector<Player> others = parse_player_list();
        expect(")");
        std::vector<Formula> literals;
        for (Player j : others) literals.push_back(!atom_at(i, j, at));
        return conjoin(std::move(literals));
    }

    std::vector<Player> parse_player_list() {
        std::vector<Player> out{parse_player()};
        while (accept(",")) out.push_back(parse_player());
        return out;
    }

    Player parse_player() {
        skip_spaces();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected player number");
        Player v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        (void)ptr;
        if (ec != std::errc{} || v < 1 || v > n_) {
            std::size_t end = pos_;
            pos_ = start;
            fail("player " + std::string(text_.substr(start, end - start)) + " outside 1.." + std::to_string(n_));
        }
        return v;
    }

    Formula atom_at(Player i, Player j, std::size_t at) {
        if (i == j) {
            pos_ = at;
            fail("reflexive atom p(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        return p(i, j);
    }

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a goal formula over players 1..n.
inline Formula parse_formula(std::string_view text, int n) { return detail::FormulaParser(text, n).parse(); }

}  // namespace hedonic
