// Seeded series between agents, summaries, the first-mover decomposition and
// the normal-approximation significance test.

#ifndef RUMMY_TOURNAMENT_HPP
#define RUMMY_TOURNAMENT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rummy/agents.hpp"
#include "rummy/game.hpp"

namespace rummy {

inline constexpr int kRecordVersion = 1;
inline constexpr int kCsvSchemaVersion = 1;

// Game i of a series is dealt from mix_seed(base_seed + i); the seat-s agent
// of that game is seeded with its config seed xor mix_seed(game_seed + s + 1).
std::uint64_t game_seed(std::uint64_t base_seed, std::uint64_t index);

struct Entrant {
  std::string label;
  AgentConfig agent;
};

// "mindist_opp" or "mindist_opp+drop".
std::string default_label(const AgentConfig& cfg);

struct MatchRecord {
  std::string first;
  std::string second;
  std::uint64_t seed = 0;
  int winner = 0;
  int gain = 0;  // first seat's point of view
  int rounds = 1;
  Termination termination = Termination::RoundCap;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

std::string to_jsonl(const MatchRecord& r);
// Throws ParseError on malformed or wrong-version lines.
MatchRecord parse_record(std::string_view line);

using StepObserver = std::function<void(const GameState&)>;

struct GameResult {
  Outcome outcome;
  GameState final_state;
};

// Plays one game to the end; the observer sees the state after every action.
// Throws IllegalAction if an agent misbehaves.
GameResult play_game(const GameConfig& game, std::uint64_t seed, const AgentConfig& first,
                     const AgentConfig& second, const StepObserver& observer = {});

MatchRecord to_record(const Entrant& first, const Entrant& second, std::uint64_t seed,
                      const Outcome& o);

// n games with the seat order fixed. Games run on `threads` workers; records
// come back in game order regardless.
std::vector<MatchRecord> run_series(const Entrant& first, const Entrant& second, int n,
                                    std::uint64_t base_seed, int threads = 1,
                                    const GameConfig& game = {});

struct SeriesSummary {
  int n_games = 0;
  double win_rate_first = 0;
  double mean_gain = 0;
  double median_gain = 0;
  double mean_rounds = 0;

  friend bool operator==(const SeriesSummary&, const SeriesSummary&) = default;
};

// Throws std::invalid_argument on an empty list.
SeriesSummary summarize(const std::vector<MatchRecord>& records);

double first_mover_advantage(double self_play_rate);
double adjusted_skill(double p_hat, double advantage);
// Shared advantage of a pair played in both seat orders: (p_ij + p_ji - 1) / 2.
double pooled_advantage(double p_ij, double p_ji);

struct ProportionTest {
  double se = 0;
  double ci_low = 0;
  double ci_high = 0;
  bool significant = false;
};

// se = sqrt(p0(1-p0)/n); the interval half-width z*se is rounded to two
// decimals. Requires n >= 30.
ProportionTest proportion_test(double p_hat, int n, double p0 = 0.5, double alpha = 0.05);

struct MatrixCell {
  std::string first;
  std::string second;
  SeriesSummary summary;
  double a_first = 0;  // first-mover advantage of `first`, from its self-play cell
  double p_star = 0;
  ProportionTest test;
};

struct SkillMatrix {
  std::vector<std::string> labels;
  std::vector<MatrixCell> cells;  // ordered pairs, row-major over labels
  std::map<std::string, double> advantage;

  const MatrixCell& at(std::string_view first, std::string_view second) const;
  double p_hat(std::string_view first, std::string_view second) const {
    return at(first, second).summary.win_rate_first;
  }
  double p_star(std::string_view first, std::string_view second) const {
    return at(first, second).p_star;
  }
};

// Cells missing a self-play series for their first seat use advantage 0.
SkillMatrix build_matrix(const std::vector<std::string>& labels,
                         const std::vector<MatchRecord>& records);

std::string matrix_csv(const SkillMatrix& m);

struct TournamentConfig {
  std::vector<Entrant> entrants;
  int n_games = 1000;
  std::uint64_t base_seed = 1;
  int threads = 1;
  GameConfig game;
  // When false only the listed pairs are played.
  bool all_pairs = true;
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct TournamentResult {
  std::vector<MatchRecord> records;
  SkillMatrix matrix;
};

// Every cell of a tournament shares base_seed, so matchups see the same deals.
TournamentResult run_tournament(const TournamentConfig& cfg,
                                const std::function<void(const std::string&, const std::string&)>&
                                    on_cell = {});

}  // namespace rummy

#endif  // RUMMY_TOURNAMENT_HPP
