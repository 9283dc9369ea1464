#include "rummy/minscore.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace rummy {

bool satisfies(MeldType type, Requirement req) {
  switch (req) {
    case Requirement::PureSequence:
      return type == MeldType::PureSequence;
    case Requirement::AnySequence:
      return is_sequence(type);
  }
  return false;
}

void SolverConfig::validate() const {
  if (cap < 0) throw std::invalid_argument("cap must be non-negative");
  if (min_meld_len < 3) throw std::invalid_argument("min_meld_len must be at least 3");
  if (limits().max_len > kMaxHandPositions) throw std::invalid_argument("min_meld_len too large");
}

void require_hand(std::span<const Card> hand, std::size_t expected, const char* what) {
  if (hand.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                                " cards, got " + std::to_string(hand.size()));
  }
  for (Card c : hand) {
    if (c.is_super_joker()) {
      throw std::invalid_argument(std::string(what) + ": super jokers are not allowed in a hand");
    }
  }
}

MinScoreTable::MinScoreTable(std::span<const Card> hand, const WildcardSpec& wcj,
                             const SolverConfig& cfg)
    : n_(static_cast<int>(hand.size())), cap_(cfg.cap), reqs_(cfg.requirements) {
  cfg.validate();
  if (n_ > kMaxHandPositions) throw std::invalid_argument("hand too wide for MinScoreTable");
  full_ = n_ == 0 ? 0 : static_cast<PositionMask>((std::uint64_t{1} << n_) - 1);
  const std::size_t states = std::size_t{1} << n_;

  values_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) values_[i] = card_value(hand[i], wcj);

  // Keys pack (deadwood, unmelded count) so that equal scores prefer more
  // melded cards.
  deadwood_key_.assign(states, 0);
  for (PositionMask m = 1; m < states; ++m) {
    const int low = std::countr_zero(m);
    deadwood_key_[m] = deadwood_key_[m & (m - 1)] + (values_[low] << kCountBits) + 1;
  }

  const std::vector<MeldMask> melds = enumerate_melds(hand, wcj, false, cfg.limits());
  melds_by_low_.assign(static_cast<std::size_t>(n_), {});
  for (const MeldMask& m : melds) melds_by_low_[std::countr_zero(m.mask)].push_back(m);

  // Once the chain is met melds may be taken in any order, so anchor each
  // step on the lowest remaining position.
  free_.assign(states, 0);
  for (PositionMask m = 1; m < states; ++m) {
    const int low = std::countr_zero(m);
    std::int32_t best = free_[m & (m - 1)] + (values_[low] << kCountBits) + 1;
    for (const MeldMask& meld : melds_by_low_[low]) {
      if ((meld.mask & m) == meld.mask) best = std::min(best, free_[m ^ meld.mask]);
    }
    free_[m] = best;
  }

  // Chain levels: only melds satisfying requirement l advance from level l;
  // stopping early leaves everything remaining as deadwood.
  const std::size_t levels = reqs_.size();
  levels_.assign(levels, {});
  level_melds_.assign(levels, {});
  for (std::size_t l = 0; l < levels; ++l) {
    for (const MeldMask& m : melds) {
      if (satisfies(m.type, reqs_[l])) level_melds_[l].push_back(m.mask);
    }
  }
  for (std::size_t l = levels; l-- > 0;) {
    const std::vector<std::int32_t>& next = next_level(l);
    std::vector<std::int32_t>& dp = levels_[l];
    dp.assign(states, 0);
    for (PositionMask m = 1; m < states; ++m) {
      std::int32_t best = deadwood_key_[m];
      for (PositionMask meld : level_melds_[l]) {
        if ((meld & m) == meld) best = std::min(best, next[m ^ meld]);
      }
      dp[m] = best;
    }
  }
  if (levels == 0) levels_.push_back(free_);
}

const std::vector<std::int32_t>& MinScoreTable::next_level(std::size_t level) const {
  return level + 1 < reqs_.size() ? levels_[level + 1] : free_;
}

int MinScoreTable::clipped(PositionMask mask) const {
  return std::min(cap_, unclipped(mask));
}

Declaration MinScoreTable::declaration(PositionMask mask) const {
  Declaration d;
  d.score = clipped(mask);
  auto type_of = [&](PositionMask meld) {
    for (const MeldMask& m : melds_by_low_[std::countr_zero(meld)]) {
      if (m.mask == meld) return m.type;
    }
    return MeldType::ImpureSet;
  };

  PositionMask rest = mask;
  for (std::size_t l = 0; l < reqs_.size(); ++l) {
    const std::int32_t target = levels_[l][rest];
    const std::vector<std::int32_t>& next = next_level(l);
    PositionMask chosen = 0;
    for (PositionMask meld : level_melds_[l]) {
      if ((meld & rest) == meld && next[rest ^ meld] == target) {
        chosen = meld;
        break;
      }
    }
    if (!chosen) {
      d.deadwood_mask = rest;
      return d;
    }
    d.melds.push_back({chosen, 0, type_of(chosen)});
    rest ^= chosen;
  }
  while (rest) {
    const int low = std::countr_zero(rest);
    const std::int32_t target = free_[rest];
    const MeldMask* chosen = nullptr;
    for (const MeldMask& meld : melds_by_low_[low]) {
      if ((meld.mask & rest) == meld.mask && free_[rest ^ meld.mask] == target) {
        chosen = &meld;
        break;
      }
    }
    if (chosen) {
      d.melds.push_back({chosen->mask, 0, chosen->type});
      rest ^= chosen->mask;
    } else {
      d.deadwood_mask |= PositionMask{1} << low;
      rest &= rest - 1;
    }
  }
  return d;
}

MinScoreResult min_score(std::span<const Card> hand, const WildcardSpec& wcj,
                         const SolverConfig& cfg) {
  require_hand(hand, kHandSize, "min_score");
  MinScoreTable table(hand, wcj, cfg);
  MinScoreResult r;
  r.unclipped = table.unclipped(table.full_mask());
  r.score = table.clipped(table.full_mask());
  if (cfg.emit_declaration) r.declaration = table.declaration(table.full_mask());
  return r;
}

int min_score_unclipped(std::span<const Card> hand, const WildcardSpec& wcj,
                        const SolverConfig& cfg) {
  require_hand(hand, kHandSize, "min_score_unclipped");
  MinScoreTable table(hand, wcj, cfg);
  return table.unclipped(table.full_mask());
}

MinScoreDiscard best_discard_minscore(std::span<const Card> hand, const WildcardSpec& wcj,
                                      const SolverConfig& cfg, std::size_t drawn_position) {
  require_hand(hand, kHandSize + 1, "best_discard_minscore");
  MinScoreTable table(hand, wcj, cfg);
  MinScoreDiscard best;
  int best_value = -1;
  bool have = false;
  for (std::size_t i = 0; i < hand.size(); ++i) {
    const int score = table.clipped(table.full_mask() ^ (PositionMask{1} << i));
    const int value = card_value(hand[i], wcj);
    if (!have || score < best.score || (score == best.score && value > best_value)) {
      best.position = i;
      best.discard = hand[i];
      best.score = score;
      best_value = value;
      have = true;
    }
  }
  best.used_pile_card = drawn_position < hand.size() && drawn_position != best.position;
  return best;
}

}  // namespace rummy
