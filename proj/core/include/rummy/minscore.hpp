// Exact MinScore: the smallest deadwood total reachable by grouping a hand into
// disjoint melds while honouring the declaration requirement chain.
//
// The table holds dp[mask][level] for every sub-hand `mask` of the input, so a
// single solve over 14 cards answers all fourteen 13-card discards.

#ifndef RUMMY_MINSCORE_HPP
#define RUMMY_MINSCORE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rummy/cards.hpp"
#include "rummy/meld.hpp"

namespace rummy {

inline constexpr int kHandSize = 13;
inline constexpr int kDefaultCap = 80;

enum class Requirement : std::uint8_t { PureSequence, AnySequence };

bool satisfies(MeldType type, Requirement req);

struct SolverConfig {
  int cap = kDefaultCap;
  int min_meld_len = 3;
  std::vector<Requirement> requirements{Requirement::PureSequence, Requirement::AnySequence};
  bool emit_declaration = false;

  MeldLimits limits() const { return MeldLimits::for_min_length(min_meld_len); }
  void validate() const;
};

struct Meld {
  PositionMask mask = 0;
  int super_jokers = 0;
  MeldType type = MeldType::ImpureSet;

  friend bool operator==(const Meld&, const Meld&) = default;
};

struct Declaration {
  std::vector<Meld> melds;
  PositionMask deadwood_mask = 0;
  int score = 0;
};

class MinScoreTable {
 public:
  MinScoreTable(std::span<const Card> hand, const WildcardSpec& wcj, const SolverConfig& cfg);

  int size() const { return n_; }
  PositionMask full_mask() const { return full_; }

  // Optimal deadwood of the sub-hand `mask`, without the cap.
  int unclipped(PositionMask mask) const { return key(mask) >> kCountBits; }
  int clipped(PositionMask mask) const;
  // Deterministic witness grouping for the sub-hand `mask`.
  Declaration declaration(PositionMask mask) const;

 private:
  static constexpr int kCountBits = 5;

  int key(PositionMask mask) const { return levels_[0][mask]; }
  const std::vector<std::int32_t>& next_level(std::size_t level) const;

  int n_ = 0;
  PositionMask full_ = 0;
  int cap_ = kDefaultCap;
  std::vector<int> values_;
  std::vector<Requirement> reqs_;
  std::vector<std::int32_t> deadwood_key_;
  // levels_[l] for l < reqs_.size(); free_ once the chain is complete.
  std::vector<std::vector<std::int32_t>> levels_;
  std::vector<std::int32_t> free_;
  std::vector<std::vector<PositionMask>> level_melds_;
  std::vector<std::vector<MeldMask>> melds_by_low_;
};

struct MinScoreResult {
  int score = 0;
  int unclipped = 0;
  std::optional<Declaration> declaration;
};

// Hand must hold exactly 13 cards with no super jokers.
MinScoreResult min_score(std::span<const Card> hand, const WildcardSpec& wcj,
                         const SolverConfig& cfg = {});
int min_score_unclipped(std::span<const Card> hand, const WildcardSpec& wcj,
                        const SolverConfig& cfg = {});

struct MinScoreDiscard {
  std::size_t position = 0;
  Card discard;
  int score = 0;
  bool used_pile_card = false;
};

// Picks the best 13 of 14 cards. `drawn_position` marks the just-drawn card
// for the used_pile_card report.
MinScoreDiscard best_discard_minscore(std::span<const Card> hand, const WildcardSpec& wcj,
                                      const SolverConfig& cfg = {},
                                      std::size_t drawn_position = kHandSize);

// Throws std::invalid_argument on a size mismatch or a super joker.
void require_hand(std::span<const Card> hand, std::size_t expected, const char* what);

}  // namespace rummy

#endif  // RUMMY_MINSCORE_HPP
