// Prints every partition of a game with the verdict of each concept.
//   example1 [game.json]      (defaults to the bundled four-player game)

#include <iomanip>
#include <iostream>

#include "hedonic/hedonic.hpp"

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : HEDONIC_SAMPLE_GAME;
    try {
        const auto g = hedonic::load_game_file(path);
        std::cout << std::left << std::setw(14) << "partition";
        for (auto c : hedonic::all_concepts) std::cout << ' ' << hedonic::concept_name(c);
        std::cout << '\n';
        hedonic::for_each_partition(g.players(), [&](const hedonic::Partition& pi) {
            std::cout << std::setw(14) << hedonic::format_partition(pi);
            for (auto c : hedonic::all_concepts) {
                const auto name = hedonic::concept_name(c);
                std::cout << ' ' << std::setw(static_cast<int>(name.size()))
                          << (hedonic::check(g, c, pi).holds ? "+" : ".");
            }
            std::cout << '\n';
        });
        auto best = hedonic::max_welfare(g);
        std::cout << "max welfare " << best.optimum << " at " << hedonic::format_partition(best.witness) << '\n';
    } catch (const hedonic::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
