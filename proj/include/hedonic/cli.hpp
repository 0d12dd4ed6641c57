#pragma once

// Command-line front end. Exit status: 0 when every verdict holds, 1 when
// one fails or nothing is found, 2 on input errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hedonic/cnf.hpp"
#include "hedonic/concepts.hpp"
#include "hedonic/error.hpp"
#include "hedonic/game.hpp"
#include "hedonic/parse.hpp"
#include "hedonic/partition.hpp"
#include "hedonic/solve.hpp"

namespace hedonic::cli {

inline constexpr int exit_holds = 0;
inline constexpr int exit_fails = 1;
inline constexpr int exit_input = 2;

/// Comma list of concept names, or `all` in the fixed order.
inline std::vector<Concept> parse_concept_list(const std::string& text) {
    if (text == "all") return {all_concepts.begin(), all_concepts.end()};
    std::vector<Concept> out;
    std::stringstream in(text);
    std::string name;
    while (std::getline(in, name, ',')) {
        auto c = parse_concept(name);
        if (!c) throw validation_error({"unknown concept \"" + name + "\""});
        out.push_back(*c);
    }
    if (out.empty()) throw validation_error({"no concept given"});
    return out;
}

/// Formula selected by `export-dimacs --concept`.
inline Formula export_formula(const BooleanHedonicGame& g, const std::string& id) {
    if (id == "nash-compact") return nash_formula_compact(g);
    if (id == "nash") return nash_formula(g);
    auto c = parse_concept(id);
    if (!c || !has_formula(*c))
        throw validation_error({"cannot export \"" + id +
                                "\"; choose perfect, ir, nash, nash-compact, envy-free, core or strict-core"});
    return concept_formula(g, *c);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solve Boolean hedonic games by reduction to satisfiability"};
    app.require_subcommand(1);

    std::string game_path;
    std::string partition_text;
    std::string concepts_text = "all";
    std::string concept_text;
    bool all = false;
    std::string via_text;
    std::string out_path;
    std::string export_id;
    int players = 0;
    std::string lhs_text;
    std::string rhs_text;

    auto* check_cmd = app.add_subcommand("check", "Report each concept's verdict on one partition");
    check_cmd->add_option("game", game_path, "Game file (JSON)")->required();
    check_cmd->add_option("partition", partition_text, "Partition such as 1,2|3")->required();
    check_cmd->add_option("--concept", concepts_text, "Comma-separated concepts or 'all'");

    auto* find_cmd = app.add_subcommand("find", "Print partitions satisfying a concept");
    find_cmd->add_option("game", game_path, "Game file (JSON)")->required();
    find_cmd->add_option("--concept", concept_text, "Concept to solve for")->required();
    find_cmd->add_flag("--all", all, "Print every solution, not just the first");
    find_cmd->add_option("--via", via_text, "Backend: sat or enum")->check(CLI::IsMember({"sat", "enum"}));

    auto* welfare_cmd = app.add_subcommand("welfare", "Maximum number of satisfied players and a witness");
    welfare_cmd->add_option("game", game_path, "Game file (JSON)")->required();

    auto* pareto_cmd = app.add_subcommand("pareto", "A Pareto optimal partition");
    pareto_cmd->add_option("game", game_path, "Game file (JSON)")->required();

    auto* core_cmd = app.add_subcommand("core", "A core stable partition");
    core_cmd->add_option("game", game_path, "Game file (JSON)")->required();

    auto* export_cmd = app.add_subcommand("export-dimacs", "Write a concept's CNF in DIMACS format");
    export_cmd->add_option("game", game_path, "Game file (JSON)")->required();
    export_cmd->add_option("--concept", export_id, "perfect, ir, nash, nash-compact, envy-free, core or strict-core")
        ->required();
    export_cmd->add_option("--out", out_path, "Output file (default: standard output)");

    auto* entails_cmd = app.add_subcommand("entails", "Does every partition satisfying LHS satisfy RHS");
    entails_cmd->add_option("players", players, "Player count")->required()->check(CLI::PositiveNumber);
    entails_cmd->add_option("lhs", lhs_text, "Premise formula")->required();
    entails_cmd->add_option("rhs", rhs_text, "Conclusion formula")->required();

    auto* stats_cmd = app.add_subcommand("stats", "Summarise a game and its encodings");
    stats_cmd->add_option("game", game_path, "Game file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_input;
    }

    try {
        if (entails_cmd->parsed()) {
            bool holds = p_entails(parse_formula(lhs_text, players), parse_formula(rhs_text, players), players);
            out << (holds ? "entailed" : "not entailed") << '\n';
            return holds ? exit_holds : exit_fails;
        }

        const BooleanHedonicGame g = load_game_file(game_path);

        if (check_cmd->parsed()) {
            const auto concepts = parse_concept_list(concepts_text);
            const Partition pi = parse_partition(partition_text, g.players());
            bool every = true;
            for (Concept c : concepts) {
                auto report = check(g, c, pi);
                every = every && report.holds;
                out << format_report(report) << '\n';
            }
            return every ? exit_holds : exit_fails;
        }

        if (find_cmd->parsed()) {
            auto c = parse_concept(concept_text);
            if (!c) throw validation_error({"unknown concept \"" + concept_text + "\""});
            Backend via = via_text.empty() ? default_backend(g) : via_text == "sat" ? Backend::sat : Backend::enumeration;
            auto found = find_solutions(g, *c, via, all);
            for (const auto& pi : found) out << format_partition(pi) << '\n';
            return found.empty() ? exit_fails : exit_holds;
        }

        if (welfare_cmd->parsed()) {
            auto best = max_welfare(g);
            out << best.optimum << ' ' << format_partition(best.witness) << '\n';
            return exit_holds;
        }

        if (pareto_cmd->parsed()) {
            out << format_partition(find_pareto(g)) << '\n';
            return exit_holds;
        }

        if (core_cmd->parsed()) {
            out << format_partition(greedy_core(g)) << '\n';
            return exit_holds;
        }

        if (export_cmd->parsed()) {
            const CnfDoc doc = compile_cnf(export_formula(g, export_id), g.players());
            if (out_path.empty()) {
                write_dimacs(doc, out);
            } else {
                std::ofstream file(out_path);
                if (!file) throw validation_error({"cannot write " + out_path});
                write_dimacs(doc, file);
            }
            return exit_holds;
        }

        if (stats_cmd->parsed()) {
            const int n = g.players();
            out << "players " << n << '\n';
            out << "locality " << (g.syntactically_local() ? "syntactic" : g.hedonic() ? "semantic" : "none") << '\n';
            for (Player i = 1; i <= n; ++i) out << "goal " << i << " size " << g.goal(i).size() << '\n';
            out << "trans conjuncts " << conjunct_count(trans_formula(n)) << '\n';
            const CnfDoc perfect = compile_cnf(perfect_formula(g), n);
            out << "perfect cnf " << perfect.variable_count << " variables " << perfect.clauses.size() << " clauses\n";
            if (n <= max_enumeration_players) {
                std::size_t count = 0;
                for_each_partition(n, [&](const Partition&) { ++count; });
                out << "partitions " << count << '\n';
            }
            return exit_holds;
        }
    } catch (const validation_error& e) {
        for (const auto& p : e.problems()) err << "error: " << p << '\n';
        return exit_input;
    } catch (const limit_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace hedonic::cli
