#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace hedonic;

namespace {

Partition P(const char* text) { return parse_partition(text); }

BooleanHedonicGame constant_game(int n, bool value) {
    return BooleanHedonicGame(std::vector<Formula>(n, value ? Formula::top() : Formula::bot()));
}

}  // namespace

TEST(VarMap, Numbering) {
    VarMap v(4);
    EXPECT_EQ(v.index(1, 2), 1);
    EXPECT_EQ(v.index(1, 3), 2);
    EXPECT_EQ(v.index(1, 4), 3);
    EXPECT_EQ(v.index(2, 3), 4);
    EXPECT_EQ(v.index(3, 4), 6);
    EXPECT_EQ(v.index(4, 3), 6);
    for (int n = 2; n <= 9; ++n) {
        VarMap m(n);
        std::set<int> seen;
        for (Player i = 1; i <= n; ++i)
            for (Player j = i + 1; j <= n; ++j) {
                int x = m.index(i, j);
                seen.insert(x);
                EXPECT_EQ(m.pair(x), PairVar(i, j));
            }
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(m.pair_count()));
        EXPECT_EQ(*seen.begin(), 1);
        EXPECT_EQ(*seen.rbegin(), m.pair_count());
    }
}

TEST(CompileCnf, TransClausesNeedNoAuxiliaries) {
    auto doc = compile_cnf(Formula::top(), 5);
    EXPECT_EQ(doc.variable_count, 10);
    EXPECT_EQ(doc.clauses.size(), 30u);
    for (const auto& c : doc.clauses) EXPECT_EQ(c.size(), 3u);
}

TEST(CompileCnf, Examples) {
    EXPECT_EQ(enumerate_models(compile_cnf(Formula::top(), 4)).size(), 15u);
    EXPECT_FALSE(sat(compile_cnf(Formula::bot(), 3)).sat);
    auto g = oracle::g1();
    auto models = enumerate_models(compile_cnf(perfect_formula(g), 4));
    ASSERT_EQ(models.size(), 1u);
    EXPECT_EQ(models[0], P("1,2,3|4"));
}

TEST(Sat, Examples) {
    auto g = oracle::g1();
    auto r = sat(compile_cnf(conjoin(g.goals()), 4));
    ASSERT_TRUE(r.sat);
    EXPECT_EQ(*r.partition, P("1,2,3|4"));
    EXPECT_FALSE(sat(compile_cnf(p(1, 2) && !p(1, 2), 2)).sat);
    EXPECT_FALSE(sat(compile_cnf(conjoin({p(1, 2), p(2, 3), !p(1, 3)}), 3)).sat);
    EXPECT_FALSE(oracle::sat_by_truth_table(3, compile_cnf(conjoin({p(1, 2), p(2, 3), !p(1, 3)}), 3).clauses));
}

TEST(Dpll, EdgeCases) {
    EXPECT_FALSE(DpllSolver(1, {{}}).solve().has_value());
    EXPECT_FALSE(DpllSolver(1, {{1}, {-1}}).solve().has_value());
    auto m = DpllSolver(2, {{1, -1}, {2}}).solve();
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE((*m)[2]);
    EXPECT_TRUE(DpllSolver(0, {}).solve().has_value());
    EXPECT_THROW(DpllSolver(2, {{3}}), domain_error);
}

TEST(Dpll, FirstModelIsLexicographicallyLeast) {
    // x1 | x2 | x3 with x3 -> x1: least model is 0,1,0.
    DpllSolver s(3, {{1, 2, 3}, {-3, 1}});
    auto m = s.solve();
    ASSERT_TRUE(m);
    EXPECT_EQ(std::vector<bool>(m->begin() + 1, m->end()), (std::vector<bool>{false, true, false}));
}

TEST(Dpll, AgreesWithTruthTable) {
    std::mt19937 rng(301);
    int sat_count = 0;
    for (int k = 0; k < 500; ++k) {
        int vars = std::uniform_int_distribution<int>(1, 20)(rng);
        int clauses = std::uniform_int_distribution<int>(1, 5 * vars)(rng);
        auto cnf = oracle::random_cnf(rng, vars, clauses);
        auto model = DpllSolver(vars, cnf).solve();
        ASSERT_EQ(model.has_value(), oracle::sat_by_truth_table(vars, cnf)) << k;
        if (model) {
            ++sat_count;
            for (const auto& c : cnf) {
                bool any = false;
                for (int l : c) any = any || (*model)[std::abs(l)] == (l > 0);
                ASSERT_TRUE(any);
            }
        }
    }
    EXPECT_GT(sat_count, 50);
    EXPECT_LT(sat_count, 450);
}

TEST(Decode, Examples) {
    VarMap v(4);
    std::vector<bool> a(7, false);
    a[v.index(1, 2)] = a[v.index(1, 3)] = a[v.index(2, 3)] = true;
    EXPECT_EQ(decode_model(a, v), P("1,2,3|4"));
    EXPECT_EQ(decode_model(std::vector<bool>(7, false), v), P("1|2|3|4"));
    EXPECT_EQ(decode_model(encode_partition(P("1,4|2,3")), v), P("1,4|2,3"));
    std::vector<bool> broken(7, false);
    broken[v.index(1, 2)] = broken[v.index(2, 3)] = true;
    EXPECT_THROW(decode_model(broken, v), integrity_error);
}

TEST(Decode, RoundTripsEveryPartition) {
    for (int n = 1; n <= 6; ++n) {
        VarMap v(n);
        for_each_partition(n, [&](const Partition& pi) { ASSERT_EQ(decode_model(encode_partition(pi), v), pi); });
    }
}

TEST(Enumerate, ModelCountsAreBellNumbers) {
    for (int n = 1; n <= 6; ++n) {
        auto models = enumerate_models(compile_cnf(Formula::top(), n));
        EXPECT_EQ(models.size(), oracle::bell(n));
        EXPECT_EQ(models, enumerate_partitions(n));
    }
}

TEST(Enumerate, AuxiliariesDoNotDuplicate) {
    // Gate auxiliaries must not make a partition appear twice.
    auto phi = iff(p(1, 2) || p(3, 4), p(1, 3) && !p(2, 4));
    auto models = enumerate_formula(phi, 4);
    std::vector<Partition> expected;
    for_each_partition(4, [&](const Partition& pi) {
        if (evaluate(pi, phi)) expected.push_back(pi);
    });
    EXPECT_EQ(models, expected);
}

TEST(Dimacs, WriteAndRead) {
    auto doc = compile_cnf(p(1, 2) && !p(2, 3), 3);
    std::string text = to_dimacs(doc);
    EXPECT_EQ(text.substr(0, 15), "c pair 1 2 = 1\n");
    EXPECT_NE(text.find("c pair 2 3 = 3\np cnf "), std::string::npos);
    std::istringstream in(text);
    auto back = read_dimacs(in);
    EXPECT_EQ(back.vars.players(), 3);
    EXPECT_EQ(back.variable_count, doc.variable_count);
    EXPECT_EQ(back.clauses, doc.clauses);
    auto r = sat(back);
    ASSERT_TRUE(r.sat);
    EXPECT_EQ(*r.partition, P("1,2|3"));
}

TEST(Dimacs, RejectsInconsistentNumbering) {
    std::istringstream bad("c pair 1 3 = 1\np cnf 3 0\n");
    EXPECT_THROW(read_dimacs(bad), integrity_error);
    std::istringstream early("1 2 0\np cnf 3 1\n");
    EXPECT_THROW(read_dimacs(early), parse_error);
}

TEST(Dimacs, ReadsSolverOutput) {
    std::istringstream competition("c comment\ns SATISFIABLE\nv 1 -2 3 0\n");
    auto m = read_solver_model(competition, 3);
    ASSERT_TRUE(m);
    EXPECT_TRUE((*m)[1]);
    EXPECT_FALSE((*m)[2]);
    std::istringstream minisat("UNSAT\n");
    EXPECT_FALSE(read_solver_model(minisat, 3).has_value());
    std::istringstream none("v 1 0\n");
    EXPECT_THROW(read_solver_model(none, 1), parse_error);
}

TEST(Entails, Examples) {
    EXPECT_TRUE(p_entails(p(1, 2) && p(2, 3), p(1, 3), 3));
    EXPECT_FALSE(p_entails(p(1, 2), p(1, 3), 3));
    EXPECT_TRUE(p_entails(Formula::bot(), p(1, 3), 3));
}

TEST(Welfare, Examples) {
    auto r = max_welfare(oracle::g1());
    EXPECT_EQ(r.optimum, 4);
    EXPECT_EQ(r.witness, P("1,2,3|4"));
    auto g2 = max_welfare(oracle::g2());
    EXPECT_EQ(g2.optimum, 1);
    EXPECT_EQ(welfare(oracle::g2(), g2.witness), 1);
    EXPECT_EQ(max_welfare(constant_game(5, true)).optimum, 5);
    EXPECT_EQ(max_welfare(constant_game(3, false)).optimum, 0);
}

TEST(Pareto, Examples) {
    auto g1 = oracle::g1();
    EXPECT_EQ(find_pareto(g1), P("1,2,3|4"));
    EXPECT_EQ(welfare(oracle::g2(), find_pareto(oracle::g2())), 1);
    auto none = constant_game(3, false);
    EXPECT_TRUE(is_pareto_optimal(none, find_pareto(none)));
    EXPECT_EQ(maximal_satisfiable_sets(oracle::g2()), (std::vector<Coalition>{{1}, {2}}));
}

TEST(Core, Examples) {
    auto g1 = oracle::g1();
    auto pi = greedy_core(g1);
    EXPECT_EQ(pi, P("1,2,4|3"));  // first seated group is {1,2,4}
    EXPECT_TRUE(oracle::core_stable(g1, pi));
    auto g2 = oracle::g2();
    EXPECT_TRUE(oracle::core_stable(g2, greedy_core(g2)));
    EXPECT_EQ(greedy_core(constant_game(4, false)), Partition::singletons(4));
}

TEST(BlockingSearch, Examples) {
    auto g1 = oracle::g1();
    EXPECT_EQ(exists_weakly_blocking_coalition(g1, P("1,4|2,3")), (Coalition{1, 2, 4}));
    EXPECT_FALSE(exists_blocking_coalition(g1, P("1,4|2,3")).has_value());
    EXPECT_FALSE(exists_blocking_coalition(g1, P("1,2,3|4")).has_value());
    EXPECT_FALSE(exists_weakly_blocking_coalition(g1, P("1,2,3|4")).has_value());
    EXPECT_TRUE(weakly_blocks(g1, Coalition{1, 2, 4}, P("1,4|2,3")));
    EXPECT_TRUE(weakly_blocks(g1, Coalition{1, 2, 3}, P("1,4|2,3")));
    EXPECT_FALSE(blocks(g1, Coalition{1, 2}, P("1|2,3|4")));
    EXPECT_THROW(blocks(g1, Coalition{}, P("1|2,3|4")), precondition_error);
}

TEST(BlockingSearch, RelaxedGamesUseSubsetEnumeration) {
    auto g = load_game_text(
        R"js({"players":[1,2,3],"goals":{"1":"(p(1,2) & p(1,3)) | (p(1,2) & p(2,3))","2":"p(1,2)","3":"~p(1,3)"},"relaxed":true})js");
    for_each_partition(3, [&](const Partition& pi) {
        auto strict = exists_blocking_coalition(g, pi);
        auto weak = exists_weakly_blocking_coalition(g, pi);
        EXPECT_EQ(strict.has_value(), !oracle::core_stable(g, pi));
        EXPECT_EQ(weak.has_value(), !oracle::strict_core_stable(g, pi));
    });
}

// --- properties ---------------------------------------------------------------------

TEST(Properties, EntailmentMatchesPartitionSemantics) {
    std::mt19937 rng(302);
    int entailed = 0;
    for (int k = 0; k < 200; ++k) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        Formula phi = oracle::random_formula(rng, n, 3);
        Formula psi = oracle::random_formula(rng, n, 2);
        bool expected = true;
        for_each_partition(n, [&](const Partition& pi) { expected = expected && (!evaluate(pi, phi) || evaluate(pi, psi)); });
        ASSERT_EQ(p_entails(phi, psi, n), expected) << format_formula(phi) << " |= " << format_formula(psi);
        entailed += expected;
    }
    EXPECT_GT(entailed, 10);
}

TEST(Properties, EnumeratedModelsSatisfySource) {
    std::mt19937 rng(303);
    for (int k = 0; k < 100; ++k) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        Formula phi = oracle::random_formula(rng, n, 4);
        std::vector<Partition> expected;
        for_each_partition(n, [&](const Partition& pi) {
            if (evaluate(pi, phi)) expected.push_back(pi);
        });
        ASSERT_EQ(enumerate_formula(phi, n), expected) << format_formula(phi);
        auto r = sat(compile_cnf(phi, n));
        ASSERT_EQ(r.sat, !expected.empty());
        if (r.sat) { ASSERT_TRUE(evaluate(*r.partition, phi)); }
    }
}

TEST(Properties, MaxWelfareMatchesBruteForce) {
    std::mt19937 rng(304);
    for (int k = 0; k < 50; ++k) {
        auto g = oracle::random_game(rng);
        auto r = max_welfare(g);
        ASSERT_EQ(r.optimum, oracle::max_welfare(g));
        ASSERT_EQ(welfare(g, r.witness), r.optimum);
    }
}

TEST(Properties, ParetoAndCoreConstructions) {
    std::mt19937 rng(305);
    for (int k = 0; k < 100; ++k) {
        auto g = oracle::random_game(rng);
        ASSERT_TRUE(oracle::pareto(g, find_pareto(g)));
        ASSERT_TRUE(oracle::core_stable(g, greedy_core(g)));
    }
}

TEST(Properties, ParetoEnumerationMatchesBruteForce) {
    std::mt19937 rng(306);
    for (int k = 0; k < 50; ++k) {
        auto g = oracle::random_game(rng);
        std::vector<Partition> expected;
        for_each_partition(g.players(), [&](const Partition& pi) {
            if (oracle::pareto(g, pi)) expected.push_back(pi);
        });
        ASSERT_EQ(enumerate_pareto(g), expected);
    }
}

TEST(Properties, BlockingSearchMatchesExhaustive) {
    std::mt19937 rng(307);
    for (int k = 0; k < 50; ++k) {
        auto g = oracle::random_game(rng);
        const int n = g.players();
        for_each_partition(n, [&](const Partition& pi) {
            std::optional<Coalition> strict, weak;
            // Lexicographic order of characteristic vectors, player 1 first.
            for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); ++v) {
                std::vector<Player> members;
                for (Player i = 1; i <= n; ++i)
                    if (v >> (n - i) & 1u) members.push_back(i);
                Coalition t(members);
                if (!strict && oracle::blocks(g, t, pi)) strict = t;
                if (!weak && oracle::weakly_blocks(g, t, pi)) weak = t;
            }
            ASSERT_EQ(exists_blocking_coalition(g, pi), strict);
            ASSERT_EQ(exists_weakly_blocking_coalition(g, pi), weak);
        });
    }
}
