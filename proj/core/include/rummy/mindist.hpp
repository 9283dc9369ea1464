// Exact MinDist: the fewest cards that must be swapped for arbitrary unseen
// cards before the hand declares.
//
// Replaced cards are modelled as super jokers, placeholders that complete any
// meld including pure ones. For k = 0, 1, 2, ... we ask whether 13 - k of the
// original cards plus k super jokers split completely into melds that meet
// the requirement chain; the first k that works is the distance.
//
// The feasibility table is keyed by (sub-hand mask, chain progress) and stores
// the set of super-joker counts that complete that sub-hand, so every k and
// every choice of wasted cards shares one memo.

#ifndef RUMMY_MINDIST_HPP
#define RUMMY_MINDIST_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rummy/cards.hpp"
#include "rummy/meld.hpp"
#include "rummy/minscore.hpp"

namespace rummy {

inline constexpr int kDefaultMaxDist = 9;

class CompletionSolver {
 public:
  CompletionSolver(std::span<const Card> hand, const WildcardSpec& wcj, const SolverConfig& cfg);

  int size() const { return n_; }
  PositionMask full_mask() const { return full_; }

  // Can every card of `originals` plus exactly `super_jokers` placeholders be
  // split into melds that satisfy the whole requirement chain?
  bool completes(PositionMask originals, int super_jokers);

  // Melds realizing completes(originals, super_jokers); must be feasible.
  std::vector<Meld> witness(PositionMask originals, int super_jokers);

 private:
  using JokerSet = std::uint16_t;
  static constexpr JokerSet kDone = 0x8000;
  static constexpr JokerSet kCountMask = 0x3FFF;

  JokerSet reachable(PositionMask mask, int state);
  JokerSet base(int state) const;
  int remaining_requirements(int state) const;
  std::vector<Meld> joker_only_melds(int state, int super_jokers) const;

  int n_ = 0;
  PositionMask full_ = 0;
  int pure_needed_ = 0;
  int any_needed_ = 0;
  int num_states_ = 1;
  int min_len_ = 3;
  int max_len_ = 5;
  std::vector<std::vector<int>> advance_;  // [state][MeldType]
  std::vector<std::vector<MeldPattern>> patterns_by_low_;
  std::vector<JokerSet> memo_;
};

// Every card melded and the requirement chain met. Unlike MinScore == 0 this
// rejects hands whose zero-point jokers cannot be placed.
bool is_declarable(std::span<const Card> hand, const WildcardSpec& wcj,
                   const SolverConfig& cfg = {});

// Positions whose removal leaves a declarable hand, ascending.
std::vector<std::size_t> declaring_discards(std::span<const Card> hand, const WildcardSpec& wcj,
                                            const SolverConfig& cfg = {});

struct MinDistResult {
  int dist = 0;
  bool exceeds_maxdist = false;
  // Melds over the hand's positions plus super-joker placeholders; the wasted
  // originals form the deadwood mask.
  Declaration declaration_modulo_unobserved;
  std::vector<Card> wasted_cards;
};

// Hand must hold exactly 13 cards with no super jokers.
MinDistResult min_dist(std::span<const Card> hand, const WildcardSpec& wcj,
                       const SolverConfig& cfg = {}, int maxdist = kDefaultMaxDist);

struct MinDistDiscard {
  std::size_t position = 0;
  Card discard;
  int dist = 0;
  bool exceeds_maxdist = false;
  // The kept hand's wasted cards, highest value first.
  std::vector<Card> wasted_ranked;
  // Every position whose discard reaches the optimal distance, ascending.
  std::vector<std::size_t> candidates;
};

// Picks the best 13 of 14 cards by distance. Among optimal discards the
// highest-value card goes, then the lowest position.
MinDistDiscard best_discard_mindist(std::span<const Card> hand, const WildcardSpec& wcj,
                                    const SolverConfig& cfg = {},
                                    int maxdist = kDefaultMaxDist);

}  // namespace rummy

#endif  // RUMMY_MINDIST_HPP
