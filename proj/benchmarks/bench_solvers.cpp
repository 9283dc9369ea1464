#include <benchmark/benchmark.h>

#include "rummy/mindist.hpp"
#include "rummy/tournament.hpp"

using namespace rummy;

namespace {

struct Deal {
  std::vector<Card> hand;
  WildcardSpec wcj;
};

// Player 1's opening 13 (or 14 with the pile card) from a run of deals.
std::vector<Deal> corpus(bool with_pile) {
  std::vector<Deal> out;
  for (std::uint64_t i = 0; i < 64; ++i) {
    const GameState g = new_game(GameConfig{}, game_seed(99, i));
    Deal d{g.hands[0], g.wcj};
    if (with_pile) d.hand.push_back(g.open_pile.back());
    out.push_back(std::move(d));
  }
  return out;
}

void BM_MinScore(benchmark::State& state) {
  const auto deals = corpus(false);
  std::size_t i = 0;
  for (auto _ : state) {
    const Deal& d = deals[i++ % deals.size()];
    benchmark::DoNotOptimize(min_score(d.hand, d.wcj).score);
  }
}
BENCHMARK(BM_MinScore)->Unit(benchmark::kMicrosecond);

void BM_MinScoreWithDeclaration(benchmark::State& state) {
  const auto deals = corpus(false);
  SolverConfig cfg;
  cfg.emit_declaration = true;
  std::size_t i = 0;
  for (auto _ : state) {
    const Deal& d = deals[i++ % deals.size()];
    benchmark::DoNotOptimize(min_score(d.hand, d.wcj, cfg).score);
  }
}
BENCHMARK(BM_MinScoreWithDeclaration)->Unit(benchmark::kMicrosecond);

void BM_MinDist(benchmark::State& state) {
  const auto deals = corpus(false);
  std::size_t i = 0;
  for (auto _ : state) {
    const Deal& d = deals[i++ % deals.size()];
    benchmark::DoNotOptimize(min_dist(d.hand, d.wcj).dist);
  }
}
BENCHMARK(BM_MinDist)->Unit(benchmark::kMillisecond);

void BM_BestDiscardMinScore(benchmark::State& state) {
  const auto deals = corpus(true);
  std::size_t i = 0;
  for (auto _ : state) {
    const Deal& d = deals[i++ % deals.size()];
    benchmark::DoNotOptimize(best_discard_minscore(d.hand, d.wcj).position);
  }
}
BENCHMARK(BM_BestDiscardMinScore)->Unit(benchmark::kMicrosecond);

void BM_BestDiscardMinDist(benchmark::State& state) {
  const auto deals = corpus(true);
  std::size_t i = 0;
  for (auto _ : state) {
    const Deal& d = deals[i++ % deals.size()];
    benchmark::DoNotOptimize(best_discard_mindist(d.hand, d.wcj).position);
  }
}
BENCHMARK(BM_BestDiscardMinDist)->Unit(benchmark::kMillisecond);

void BM_Game(benchmark::State& state) {
  AgentConfig a, b;
  a.profile = Profile::MinDistOpp;
  b.profile = Profile::MinScore;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(play_game(GameConfig{}, game_seed(7, seed++), a, b).outcome.rounds);
  }
}
BENCHMARK(BM_Game)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
