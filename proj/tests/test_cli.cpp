#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hedonic/cli.hpp"
#include "oracles.hpp"

using namespace hedonic;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "hedonic");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("hedonic_test_" + name)).string();
}

const std::string G1 = oracle::data("g1.json");
const std::string G2 = oracle::data("g2.json");
const std::string G3 = oracle::data("g3.json");

}  // namespace

TEST(Check, PerfectPartitionPassesAll) {
    auto r = run({"check", G1, "1,2,3|4"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(lines(r.out), (std::vector<std::string>{"ir holds", "perfect holds", "nash holds", "core holds",
                                                      "strict-core holds", "envy-free holds", "pareto holds",
                                                      "welfare-optimal holds"}));
}

TEST(Check, FailuresCarryWitnesses) {
    auto nash = run({"check", G1, "1|2,3|4", "--concept", "nash"});
    EXPECT_EQ(nash.status, 1);
    EXPECT_EQ(nash.out, "nash fails 1 -> 2,3\n");
    auto envy = run({"check", G1, "1|2,4|3", "--concept", "envy-free"});
    EXPECT_EQ(envy.status, 1);
    EXPECT_EQ(envy.out, "envy-free fails 3 envies 4\n");
    auto core = run({"check", G1, "1,4|2,3", "--concept", "core,strict-core"});
    EXPECT_EQ(core.status, 1);
    EXPECT_EQ(core.out, "core holds\nstrict-core fails weakly blocked by 1,2,4\n");
}

TEST(Check, InputErrorsExitTwo) {
    EXPECT_EQ(run({"check", G1, "1,2|2,3"}).status, 2);
    EXPECT_EQ(run({"check", G1, "1,2,3"}).status, 2);
    EXPECT_EQ(run({"check", G1, "1,2,3|4", "--concept", "bogus"}).status, 2);
    auto missing = run({"check", "/nonexistent.json", "1"});
    EXPECT_EQ(missing.status, 2);
    EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
    EXPECT_EQ(run({}).status, 2);
    EXPECT_EQ(run({"frobnicate"}).status, 2);
}

TEST(Find, Examples) {
    auto nash = run({"find", G2, "--concept", "nash", "--all"});
    EXPECT_EQ(nash.status, 1);
    EXPECT_EQ(nash.out, "");
    for (const char* via : {"sat", "enum"}) {
        auto perfect = run({"find", G1, "--concept", "perfect", "--all", "--via", via});
        EXPECT_EQ(perfect.status, 0);
        EXPECT_EQ(perfect.out, "1,2,3|4\n");
        auto strict = run({"find", G3, "--concept", "strict-core", "--all", "--via", via});
        EXPECT_EQ(strict.status, 1);
        EXPECT_EQ(strict.out, "");
    }
    EXPECT_EQ(run({"find", G1, "--concept", "nash", "--via", "magic"}).status, 2);
}

TEST(Find, BackendsAgreeOnFixtures) {
    for (const auto& game : {G1, G2, G3})
        for (Concept c : all_concepts) {
            std::string name(concept_name(c));
            auto a = run({"find", game, "--concept", name, "--all", "--via", "sat"});
            auto b = run({"find", game, "--concept", name, "--all", "--via", "enum"});
            EXPECT_EQ(a.out, b.out) << game << " " << name;
            EXPECT_EQ(a.status, b.status);
        }
}

TEST(Find, EveryPrintedPartitionRechecks) {
    for (const auto& game : {G1, G2, G3})
        for (Concept c : all_concepts) {
            std::string name(concept_name(c));
            for (const auto& line : lines(run({"find", game, "--concept", name, "--all"}).out))
                EXPECT_EQ(run({"check", game, line, "--concept", name}).status, 0) << name << " " << line;
        }
}

TEST(Find, GuardSuggestsOtherBackend) {
    std::string path = temp_path("big.json");
    {
        std::ofstream f(path);
        f << R"js({"players":[1,2,3,4,5,6,7],"goals":{"1":"true","2":"true","3":"true","4":"true","5":"true","6":"true","7":"true"}})js";
    }
    auto r = run({"find", path, "--concept", "core", "--via", "sat"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("enumeration"), std::string::npos);
    EXPECT_EQ(run({"find", path, "--concept", "core", "--via", "enum"}).status, 0);
    std::remove(path.c_str());
}

TEST(Optimisation, WelfareParetoCore) {
    EXPECT_EQ(run({"welfare", G1}).out, "4 1,2,3|4\n");
    auto w2 = run({"welfare", G2});
    EXPECT_EQ(w2.status, 0);
    EXPECT_EQ(w2.out.substr(0, 2), "1 ");
    auto core = run({"core", G2});
    EXPECT_EQ(core.status, 0);
    auto pi = lines(core.out).at(0);
    EXPECT_EQ(run({"check", G2, pi, "--concept", "core"}).status, 0);
    auto pareto = run({"pareto", G1});
    EXPECT_EQ(pareto.out, "1,2,3|4\n");
    EXPECT_EQ(run({"check", G1, lines(pareto.out).at(0), "--concept", "pareto"}).status, 0);
}

TEST(ExportDimacs, PerfectG1DecodesToUniquePartition) {
    std::string path = temp_path("g1_perfect.cnf");
    auto r = run({"export-dimacs", G1, "--concept", "perfect", "--out", path});
    ASSERT_EQ(r.status, 0);
    std::ifstream in(path);
    auto doc = read_dimacs(in);
    auto models = enumerate_models(doc);
    EXPECT_EQ(models, (std::vector<Partition>{parse_partition("1,2,3|4")}));
    std::remove(path.c_str());
}

TEST(ExportDimacs, NashCompactG2IsUnsat) {
    auto r = run({"export-dimacs", G2, "--concept", "nash-compact"});
    ASSERT_EQ(r.status, 0);
    std::istringstream in(r.out);
    EXPECT_FALSE(sat(read_dimacs(in)).sat);
}

TEST(ExportDimacs, TrivialGameHasBellModels) {
    std::string path = temp_path("trivial.json");
    {
        std::ofstream f(path);
        f << R"js({"players":[1,2,3,4,5],"goals":{"1":"true","2":"true","3":"true","4":"true","5":"true"}})js";
    }
    auto r = run({"export-dimacs", path, "--concept", "perfect"});
    ASSERT_EQ(r.status, 0);
    std::istringstream in(r.out);
    EXPECT_EQ(enumerate_models(read_dimacs(in)).size(), 52u);
    EXPECT_EQ(run({"export-dimacs", path, "--concept", "pareto"}).status, 2);
    std::remove(path.c_str());
}

TEST(ExportDimacs, EveryFormulaIdWorksOnG1) {
    for (const char* id : {"perfect", "ir", "nash", "nash-compact", "envy-free", "core", "strict-core"}) {
        auto r = run({"export-dimacs", G1, "--concept", id});
        EXPECT_EQ(r.status, 0) << id;
        EXPECT_EQ(r.out.substr(0, 15), "c pair 1 2 = 1\n");
    }
}

TEST(Entails, Verdicts) {
    auto yes = run({"entails", "3", "p(1,2) & p(2,3)", "p(1,3)"});
    EXPECT_EQ(yes.status, 0);
    EXPECT_EQ(yes.out, "entailed\n");
    auto no = run({"entails", "3", "p(1,2)", "p(1,3)"});
    EXPECT_EQ(no.status, 1);
    EXPECT_EQ(no.out, "not entailed\n");
    EXPECT_EQ(run({"entails", "3", "p(1,4)", "true"}).status, 2);
}

TEST(Stats, Summary) {
    auto r = run({"stats", G1});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("players 4\n"), std::string::npos);
    EXPECT_NE(r.out.find("trans conjuncts 12\n"), std::string::npos);
    EXPECT_NE(r.out.find("partitions 15\n"), std::string::npos);
}

TEST(Determinism, RepeatedRunsMatch) {
    auto a = run({"find", G1, "--concept", "core", "--all"});
    auto b = run({"find", G1, "--concept", "core", "--all"});
    EXPECT_EQ(a.out, b.out);
}
