#include "rummy/meld.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace rummy {

namespace {

// Ranks as bits 1..13; ace additionally mirrored to bit 14 when needed.
constexpr std::uint32_t kAceBit = 1u << 1;
constexpr std::uint32_t kAceHighBit = 1u << 14;

// Can `count` distinct same-suit ranks sit in a run of `length` consecutive
// ranks, ace low (A..K) or ace high (2..A), with no wraparound?
bool run_fits(std::uint32_t rank_bits, int length) {
  if (length > 13) return false;
  if (rank_bits == 0) return true;
  auto span_of = [](std::uint32_t bits) {
    return (31 - std::countl_zero(bits)) - std::countr_zero(bits) + 1;
  };
  if (span_of(rank_bits) <= length) return true;
  if (rank_bits & kAceBit) {
    const std::uint32_t high = (rank_bits & ~kAceBit) | kAceHighBit;
    if (span_of(high) <= length) return true;
  }
  return false;
}

struct Shape {
  int size = 0;
  int printed = 0;
  int super = 0;
  // Non-wild naturals.
  int fixed = 0;
  bool fixed_one_suit = true;
  bool fixed_one_rank = true;
  bool fixed_distinct_ranks = true;
  bool fixed_distinct_suits = true;
  std::uint32_t fixed_rank_bits = 0;
  // All naturals, wild-rank cards taken at face value.
  int naturals = 0;
  bool nat_one_suit = true;
  bool nat_one_rank = true;
  bool nat_distinct_ranks = true;
  bool nat_distinct_suits = true;
  std::uint32_t nat_rank_bits = 0;
};

struct Tracker {
  bool any = false;
  Suit suit = Suit::Clubs;
  int rank = 0;
  std::uint32_t rank_bits = 0;
  unsigned suit_bits = 0;
};

void add_natural(Card c, Tracker& t, int& count, bool& one_suit, bool& one_rank,
                 bool& distinct_ranks, bool& distinct_suits, std::uint32_t& rank_bits) {
  const std::uint32_t rb = 1u << c.rank();
  const unsigned sb = 1u << static_cast<int>(c.suit());
  if (t.any) {
    if (c.suit() != t.suit) one_suit = false;
    if (c.rank() != t.rank) one_rank = false;
  }
  if (t.rank_bits & rb) distinct_ranks = false;
  if (t.suit_bits & sb) distinct_suits = false;
  t.any = true;
  t.suit = c.suit();
  t.rank = c.rank();
  t.rank_bits |= rb;
  t.suit_bits |= sb;
  rank_bits = t.rank_bits;
  ++count;
}

Shape shape_of(std::span<const Card> cards, const WildcardSpec& wcj, int extra_super) {
  Shape s;
  Tracker fixed, nat;
  s.size = static_cast<int>(cards.size()) + extra_super;
  s.super = extra_super;
  for (Card c : cards) {
    switch (c.kind()) {
      case CardKind::PrintedJoker:
        ++s.printed;
        break;
      case CardKind::SuperJoker:
        ++s.super;
        break;
      case CardKind::Natural:
        add_natural(c, nat, s.naturals, s.nat_one_suit, s.nat_one_rank, s.nat_distinct_ranks,
                    s.nat_distinct_suits, s.nat_rank_bits);
        if (!wcj.is_wild(c)) {
          add_natural(c, fixed, s.fixed, s.fixed_one_suit, s.fixed_one_rank,
                      s.fixed_distinct_ranks, s.fixed_distinct_suits, s.fixed_rank_bits);
        }
        break;
    }
  }
  return s;
}

std::optional<MeldType> classify_shape(const Shape& s) {
  // Printed and wild-rank jokers alone never make a sequence or a pure meld.
  const bool only_plain_jokers = s.fixed == 0 && s.super == 0;

  if (s.printed == 0 && s.nat_one_suit && s.nat_distinct_ranks &&
      run_fits(s.nat_rank_bits, s.size) && !only_plain_jokers) {
    return MeldType::PureSequence;
  }
  if (!only_plain_jokers && s.fixed_one_suit && s.fixed_distinct_ranks &&
      run_fits(s.fixed_rank_bits, s.size)) {
    return MeldType::ImpureSequence;
  }
  if (s.size > 4) return std::nullopt;
  if (s.printed == 0 && !only_plain_jokers && s.nat_one_rank && s.nat_distinct_suits) {
    return MeldType::PureSet;
  }
  if (s.fixed_one_rank && s.fixed_distinct_suits) return MeldType::ImpureSet;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(MeldType t) {
  switch (t) {
    case MeldType::PureSequence: return "pure_sequence";
    case MeldType::ImpureSequence: return "impure_sequence";
    case MeldType::PureSet: return "pure_set";
    case MeldType::ImpureSet: return "impure_set";
  }
  return "?";
}

std::optional<MeldType> classify_group(std::span<const Card> cards, const WildcardSpec& wcj,
                                       bool allow_super, int extra_super) {
  if (cards.empty() && extra_super == 0) return std::nullopt;
  if (!allow_super) {
    if (extra_super > 0) return std::nullopt;
    for (Card c : cards) {
      if (c.is_super_joker()) return std::nullopt;
    }
  }
  return classify_shape(shape_of(cards, wcj, extra_super));
}

std::optional<MeldType> classify(std::span<const Card> cards, const WildcardSpec& wcj,
                                 bool allow_super) {
  if (cards.size() < 3 || cards.size() > 5) {
    throw std::invalid_argument("classify: group size must be 3..5");
  }
  return classify_group(cards, wcj, allow_super);
}

bool could_share_meld(Card a, Card b, const WildcardSpec& wcj, int max_len) {
  if (wcj.is_joker(a) || wcj.is_joker(b)) return true;
  if (a.rank() == b.rank()) return a.suit() != b.suit();
  if (a.suit() != b.suit()) return false;
  const int lo = std::min(a.rank(), b.rank());
  const int hi = std::max(a.rank(), b.rank());
  // Ace may also sit above the king.
  const int gap = lo == kAce ? std::min(hi - lo, 14 - hi) : hi - lo;
  return gap <= max_len - 1;
}

namespace {

// Depth-first walk over position subsets whose non-joker members are
// pairwise compatible. `visit` sees each subset once, in ascending order.
template <class Visit>
void walk_subsets(std::span<const Card> hand, const WildcardSpec& wcj, int max_size,
                  int max_len, Visit&& visit) {
  const int n = static_cast<int>(hand.size());
  std::array<PositionMask, kMaxHandPositions> compat{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && could_share_meld(hand[i], hand[j], wcj, max_len)) {
        compat[i] |= PositionMask{1} << j;
      }
    }
  }
  std::array<Card, kMaxHandPositions> group{};
  auto rec = [&](auto&& self, int next, PositionMask mask, PositionMask allowed,
                 int size) -> void {
    for (int i = next; i < n; ++i) {
      const PositionMask bit = PositionMask{1} << i;
      if (!(allowed & bit)) continue;
      group[size] = hand[i];
      visit(mask | bit, std::span<const Card>(group.data(), size + 1));
      if (size + 1 < max_size) self(self, i + 1, mask | bit, allowed & compat[i], size + 1);
    }
  };
  const PositionMask all = n == 0 ? 0 : (PositionMask{1} << n) - 1;
  rec(rec, 0, 0, all, 0);
}

void check_hand_width(std::span<const Card> hand) {
  if (hand.size() > kMaxHandPositions) {
    throw std::invalid_argument("hand wider than the supported mask width");
  }
}

}  // namespace

std::vector<MeldMask> enumerate_melds(std::span<const Card> hand, const WildcardSpec& wcj,
                                      bool allow_super, MeldLimits limits) {
  check_hand_width(hand);
  std::vector<MeldMask> out;
  walk_subsets(hand, wcj, limits.max_len, limits.max_len,
               [&](PositionMask mask, std::span<const Card> group) {
                 if (static_cast<int>(group.size()) < limits.min_len) return;
                 if (auto t = classify_group(group, wcj, allow_super)) {
                   out.push_back({mask, *t});
                 }
               });
  std::sort(out.begin(), out.end(),
            [](const MeldMask& a, const MeldMask& b) { return a.mask < b.mask; });
  return out;
}

std::vector<MeldPattern> enumerate_patterns(std::span<const Card> hand, const WildcardSpec& wcj,
                                            MeldLimits limits) {
  check_hand_width(hand);
  std::vector<MeldPattern> out;
  walk_subsets(hand, wcj, limits.max_len, limits.max_len,
               [&](PositionMask mask, std::span<const Card> group) {
                 const int size = static_cast<int>(group.size());
                 for (int j = std::max(0, limits.min_len - size); size + j <= limits.max_len;
                      ++j) {
                   if (auto t = classify_group(group, wcj, true, j)) {
                     out.push_back({mask, j, *t});
                   }
                 }
               });
  std::sort(out.begin(), out.end(), [](const MeldPattern& a, const MeldPattern& b) {
    return a.mask != b.mask ? a.mask < b.mask : a.super_jokers < b.super_jokers;
  });
  return out;
}

}  // namespace rummy
