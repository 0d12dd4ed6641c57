#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace hedonic;

namespace {

Partition P(const char* text) { return parse_partition(text); }

}  // namespace

TEST(Evaluate, PartitionSemantics) {
    EXPECT_TRUE(evaluate(P("1|2|3,4,5"), parse_formula("same(3,4,5)", 5)));
    EXPECT_TRUE(evaluate(P("1|2|3,4,5"), parse_formula("p(1,2) <-> p(2,3)", 5)));
    EXPECT_FALSE(evaluate(P("1,2|3"), parse_formula("~p(1,2)", 3)));
    EXPECT_THROW(evaluate(P("1,2|3"), p(1, 4)), domain_error);
}

TEST(Substitute, Simultaneous) {
    const Player i = 1, j = 2, k = 3;
    Formula phi = p(i, j) || !p(j, k);
    Substitution sigma{{PairVar(i, j), p(j, k)}, {PairVar(j, k), p(i, k)}};
    EXPECT_EQ(substitute(phi, sigma), p(j, k) || !p(i, k));
    EXPECT_EQ(substitute(phi, {}), phi);
    Formula t = implies(p(i, j) && p(j, k), p(i, k));
    EXPECT_EQ(substitute(t, {{PairVar(i, j), Formula::top()}, {PairVar(i, k), Formula::bot()}}),
              implies(Formula::top() && p(j, k), Formula::bot()));
}

TEST(Substitute, UnchangedSubtermsAreShared) {
    Formula left = p(1, 2) && p(1, 3);
    Formula phi = left || p(2, 3);
    Formula out = substitute(phi, {{PairVar(2, 3), Formula::top()}});
    EXPECT_EQ(out.operands()[0].identity(), left.identity());
}

TEST(Trans, ConjunctCounts) {
    EXPECT_EQ(conjunct_count(trans_formula(5)), 30u);
    EXPECT_EQ(conjunct_count(trans_formula(4)), 12u);
    EXPECT_EQ(trans_formula(2), Formula::top());
    EXPECT_EQ(trans_formula(1), Formula::top());
}

TEST(Trans, ValidOnEveryPartition) {
    for (int n = 1; n <= 6; ++n) {
        Formula t = trans_formula(n);
        for_each_partition(n, [&](const Partition& pi) { ASSERT_TRUE(evaluate(pi, t)); });
    }
}

TEST(Trans, ModelsAreExactlyPartitions) {
    // Every assignment to the pair variables: trans holds iff the relation is
    // an equivalence, and the number of such assignments is Bell(n).
    for (int n = 1; n <= 6; ++n) {
        Formula t = trans_formula(n);
        VarMap vars(n);
        const int m = vars.pair_count();
        std::uint64_t models = 0;
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
            auto val = [&](Player i, Player j) { return static_cast<bool>(a >> (vars.index(i, j) - 1) & 1u); };
            bool holds = oracle::eval_assignment(t, val);
            ASSERT_EQ(holds, oracle::transitive(n, val));
            models += holds;
        }
        EXPECT_EQ(models, oracle::bell(n)) << n;
    }
}

TEST(FreePairs, CollectsAtoms) {
    auto g = oracle::g1();
    EXPECT_EQ(free_pairs(g.goal(3)), (std::set<PairVar>{PairVar(1, 3), PairVar(2, 3), PairVar(3, 4)}));
    EXPECT_TRUE(free_pairs(Formula::top()).empty());
    EXPECT_TRUE(is_syntactically_local(g.goal(4), 4));
    EXPECT_FALSE(is_syntactically_local(p(2, 3), 1));
    EXPECT_EQ(max_player(g.goal(1)), 4);
}

TEST(Locality, Semantic) {
    EXPECT_TRUE(is_i_local(p(1, 2) && p(1, 3), 1, 4));
    EXPECT_FALSE(is_i_local(p(2, 3), 1, 3));
    EXPECT_TRUE(is_i_local(p(1, 2) || !p(1, 2), 1, 3));
    // Mentions another pair but is equivalent modulo trans to a local formula.
    EXPECT_TRUE(is_i_local((p(1, 2) && p(1, 3)) || (p(1, 2) && p(2, 3)), 1, 3));
    EXPECT_THROW(is_i_local(p(1, 2), 1, 9), limit_error);
}

TEST(Properties, SyntacticLocalityImpliesSemantic) {
    std::mt19937 rng(11);
    for (int k = 0; k < 100; ++k) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        Player i = std::uniform_int_distribution<int>(1, n)(rng);
        Formula f = oracle::random_formula(rng, n, 3, i);
        ASSERT_TRUE(is_syntactically_local(f, i));
        ASSERT_TRUE(is_i_local(f, i, n)) << format_formula(f);
    }
}

TEST(Properties, SequentialSubstitutionComposes) {
    // phi[s1][s2] evaluated at pi equals phi evaluated under the assignment
    // v -> value at pi of s1(v)[s2] (s1 image, or v itself, then s2).
    std::mt19937 rng(12);
    for (int k = 0; k < 100; ++k) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        Formula phi = oracle::random_formula(rng, n, 3);
        Substitution s1, s2;
        for (int m = 0; m < 3; ++m) {
            Formula a = oracle::random_formula(rng, n, 0);
            if (a.kind() != Connective::atom) continue;
            s1.insert_or_assign(a.var(), oracle::random_formula(rng, n, 2));
            Formula b = oracle::random_formula(rng, n, 0);
            if (b.kind() == Connective::atom) s2.insert_or_assign(b.var(), oracle::random_formula(rng, n, 2));
        }
        Formula twice = substitute(substitute(phi, s1), s2);
        for_each_partition(n, [&](const Partition& pi) {
            auto val = [&](Player i, Player j) {
                PairVar v(i, j);
                auto it = s1.find(v);
                Formula image = it == s1.end() ? Formula::atom(v) : it->second;
                return evaluate(pi, substitute(image, s2));
            };
            ASSERT_EQ(evaluate(pi, twice), oracle::eval_assignment(phi, val));
        });
    }
}
