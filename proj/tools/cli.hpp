// Command-line front end. Every subcommand writes to the given streams so the
// tests can drive it without a terminal.

#ifndef RUMMY_TOOLS_CLI_HPP
#define RUMMY_TOOLS_CLI_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rummy/minscore.hpp"
#include "rummy/tournament.hpp"

namespace rummy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

inline constexpr int kSampleSchemaVersion = 1;

// Bad flags, bad card text, bad config values.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

// "pure,any" style list; "none" or "" is the empty chain.
std::vector<Requirement> parse_requirements(std::string_view text);

// --- sample-hands ---

struct SampleRow {
  int minscore_clipped = 0;
  int minscore_unclipped = 0;
  int mindist = 0;
};

struct SampleSummary {
  int n = 0;
  std::map<int, int> clipped_hist;    // bin start -> count
  std::map<int, int> unclipped_hist;  // bin start -> count
  std::map<int, int> mindist_hist;    // value -> count
  int clipped_mode = 0;               // most frequent exact clipped score
  double mindist_2_to_4 = 0;          // share of hands with mindist in {2,3,4}
  int mindist_max = 0;
};

inline constexpr int kClippedBin = 5;
inline constexpr int kUnclippedBin = 10;

// Hand i is player 1's hand from the deal of game_seed(seed, i).
std::vector<SampleRow> sample_hands(int n, std::uint64_t seed);
SampleSummary summarize_samples(const std::vector<SampleRow>& rows);
std::string samples_csv(const std::vector<SampleRow>& rows, std::uint64_t seed);
std::string histogram_csv(const SampleSummary& s);

// --- tournament ---

// Reads the JSON config format documented in the README.
TournamentConfig parse_tournament_config(std::string_view json_text,
                                         std::string* records_out = nullptr,
                                         std::string* matrix_out = nullptr);
std::string decomposition_table(const SkillMatrix& m);

// --- assist ---

struct AssistConfig {
  int drop_dist_threshold = 3;
  int drop_score_threshold = kDefaultCap;
  SolverConfig solver;
};

// Line-oriented helper for a live game. Feed it one line at a time; it
// answers with a readout. Bad input leaves the state untouched.
class AssistSession {
 public:
  explicit AssistSession(AssistConfig cfg = {});

  std::string prompt() const;
  std::string feed(std::string_view line);
  bool finished() const { return finished_; }

  const std::vector<Card>& hand() const { return hand_; }
  bool first_turn() const { return first_turn_; }

 private:
  std::string readout() const;
  std::string advise_pile(Card c) const;
  std::string help() const;

  AssistConfig cfg_;
  std::vector<Card> hand_;
  std::optional<WildcardSpec> wcj_;
  bool first_turn_ = true;
  bool finished_ = false;
};

}  // namespace rummy::cli

#endif  // RUMMY_TOOLS_CLI_HPP
