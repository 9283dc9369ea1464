// Meld classification and enumeration over hand positions.
//
// A meld is identified by the bitmask of hand positions it occupies. Super
// jokers never sit in a hand; solvers that need them pass a count alongside
// the natural cards.

#ifndef RUMMY_MELD_HPP
#define RUMMY_MELD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rummy/cards.hpp"

namespace rummy {

using PositionMask = std::uint32_t;

// Widest hand any solver accepts.
inline constexpr int kMaxHandPositions = 16;

// Listed in preference order: a group is labelled with the first type it
// satisfies.
enum class MeldType : std::uint8_t { PureSequence, ImpureSequence, PureSet, ImpureSet };

constexpr bool is_sequence(MeldType t) {
  return t == MeldType::PureSequence || t == MeldType::ImpureSequence;
}
std::string_view to_string(MeldType t);

struct MeldMask {
  PositionMask mask = 0;
  MeldType type = MeldType::ImpureSet;

  friend bool operator==(const MeldMask&, const MeldMask&) = default;
};

// Size bounds for a single meld. Longer runs are always expressible as
// several melds inside these bounds.
struct MeldLimits {
  int min_len = 3;
  int max_len = 5;

  static MeldLimits for_min_length(int min_len) { return {min_len, 2 * min_len - 1}; }
};

// Classifies a group of 3..5 cards. Throws std::invalid_argument outside that
// range. Super jokers are only accepted when allow_super is set.
std::optional<MeldType> classify(std::span<const Card> cards, const WildcardSpec& wcj,
                                 bool allow_super);

// Same rules, any group size, with `extra_super` super jokers added to the
// group. Sets are still capped at four cards.
std::optional<MeldType> classify_group(std::span<const Card> cards, const WildcardSpec& wcj,
                                       bool allow_super, int extra_super = 0);

// Every position subset whose cards classify, sorted by mask value.
std::vector<MeldMask> enumerate_melds(std::span<const Card> hand, const WildcardSpec& wcj,
                                      bool allow_super, MeldLimits limits = {});

// A subset of natural positions that becomes a meld once `super_jokers`
// placeholders are added. Patterns with an empty mask are never produced.
struct MeldPattern {
  PositionMask mask = 0;
  int super_jokers = 0;
  MeldType type = MeldType::ImpureSet;
};

std::vector<MeldPattern> enumerate_patterns(std::span<const Card> hand, const WildcardSpec& wcj,
                                            MeldLimits limits = {});

// Two cards that could sit together in some three-card meld, ignoring jokers.
bool could_share_meld(Card a, Card b, const WildcardSpec& wcj, int max_len);

}  // namespace rummy

#endif  // RUMMY_MELD_HPP
