#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "rummy/meld.hpp"

using namespace rummy;

namespace {

WildcardSpec wild(int rank) { return WildcardSpec(Card::natural(rank, Suit::Spades)); }

std::optional<MeldType> cls(const char* cards, int wild_rank, bool allow_super = false) {
  return classify(parse_hand(cards), wild(wild_rank), allow_super);
}

std::uint32_t mask_of(const std::vector<Card>& hand, const char* cards) {
  std::uint32_t m = 0;
  for (Card c : parse_hand(cards)) {
    for (std::size_t i = 0; i < hand.size(); ++i) {
      if (hand[i] == c && !(m & (1u << i))) {
        m |= 1u << i;
        break;
      }
    }
  }
  return m;
}

bool contains(const std::vector<MeldMask>& melds, std::uint32_t mask, MeldType type) {
  return std::find(melds.begin(), melds.end(), MeldMask{mask, type}) != melds.end();
}

}  // namespace

TEST_CASE("classify the four meld types") {
  CHECK(cls("3H 4H 5H 6H", 9) == MeldType::PureSequence);
  CHECK(cls("3H 4H 9C 6H", 9) == MeldType::ImpureSequence);
  CHECK(cls("8H 8S 8D", 9) == MeldType::PureSet);
  CHECK(cls("8H 8S 9C", 9) == MeldType::ImpureSet);
  CHECK(cls("8H 8H 8S", 9) == std::nullopt);
}

TEST_CASE("ace plays low or high but never wraps") {
  CHECK(cls("AC 2C 3C", 9) == MeldType::PureSequence);
  CHECK(cls("QC KC AC", 9) == MeldType::PureSequence);
  CHECK(cls("KC AC 2C", 9) == std::nullopt);
  CHECK(cls("KC JK 2C", 9) == std::nullopt);
  CHECK(cls("QC JK AC", 9) == MeldType::ImpureSequence);
  CHECK(cls("JC JK AC", 9) == std::nullopt);
}

TEST_CASE("wild-rank cards keep their identity in pure runs") {
  CHECK(cls("3C 4C 5C", 3) == MeldType::PureSequence);
  CHECK(cls("3D 4C 5C", 3) == MeldType::ImpureSequence);
  // Groups made only of printed and wild jokers are sets, never runs.
  CHECK(cls("JK JK 9C", 9) == MeldType::ImpureSet);
  CHECK(cls("9C 9D 9H", 9) == MeldType::ImpureSet);
  CHECK(cls("JK JK 9C 9D 9H", 9) == std::nullopt);
}

TEST_CASE("printed jokers never make a meld pure") {
  CHECK(cls("5C 6C JK", 9) == MeldType::ImpureSequence);
  CHECK(cls("5C 5D JK", 9) == MeldType::ImpureSet);
  CHECK(cls("5C 5D 5H 5S JK", 9) == std::nullopt);
}

TEST_CASE("super jokers complete pure melds only when allowed") {
  const WildcardSpec w = wild(9);
  std::vector<Card> g{parse_card("5C"), parse_card("7C"), Card::super_joker()};
  CHECK(classify(g, w, true) == MeldType::PureSequence);
  CHECK(classify(g, w, false) == std::nullopt);
  std::vector<Card> s{parse_card("5C"), parse_card("5D"), Card::super_joker()};
  CHECK(classify(s, w, true) == MeldType::PureSet);
  std::vector<Card> all(3, Card::super_joker());
  CHECK(classify(all, w, true) == MeldType::PureSequence);
  std::vector<Card> pj{Card::printed_joker(), Card::super_joker(), Card::super_joker()};
  CHECK(classify(pj, w, true) == MeldType::ImpureSequence);
}

TEST_CASE("classify rejects group sizes outside 3..5") {
  CHECK_THROWS_AS(cls("5C 6C", 9), std::invalid_argument);
  CHECK_THROWS_AS(cls("5C 6C 7C 8C 9C TC", 2), std::invalid_argument);
}

TEST_CASE("pure runs keep a run shape when a card turns into a joker") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto d = oracle::random_deal(seed, 5);
    for (std::uint32_t m = 1; m < 32; ++m) {
      if (std::popcount(m) < 3) continue;
      auto g = oracle::pick(d.hand, m);
      if (classify(g, d.wcj, false) != MeldType::PureSequence) continue;
      g[0] = Card::printed_joker();
      CHECK(classify(g, d.wcj, false) == MeldType::ImpureSequence);
    }
  }
}

TEST_CASE("enumerate_melds finds the expected groups") {
  const auto hand = parse_hand("2C 3C 4C 9H 9S 9D KD JK AH AS AC 7D 8D");
  const auto w = wild(5);
  const auto melds = enumerate_melds(hand, w, false);
  CHECK(contains(melds, mask_of(hand, "2C 3C 4C"), MeldType::PureSequence));
  CHECK(contains(melds, mask_of(hand, "9H 9S 9D"), MeldType::PureSet));
  CHECK(contains(melds, mask_of(hand, "AH AS AC"), MeldType::PureSet));
  CHECK(contains(melds, mask_of(hand, "7D 8D JK"), MeldType::ImpureSequence));
  auto naive = oracle::naive_melds(hand, w, false);
  std::sort(naive.begin(), naive.end(),
            [](const MeldMask& a, const MeldMask& b) { return a.mask < b.mask; });
  CHECK(melds == naive);
}

TEST_CASE("a meldless hand enumerates nothing") {
  const auto hand = parse_hand("2C 5D 8H JS 3D 6H 9S QC 4H 7S TC KD 2S");
  const WildcardSpec w(parse_card("AS"));
  CHECK(oracle::naive_melds(hand, w, false).empty());
  CHECK(enumerate_melds(hand, w, false).empty());
}

TEST_CASE("appended super jokers form an all-placeholder pure run") {
  auto hand = parse_hand("2C 5D 8H JS 3D 6H 9S QC 4H 7S TC KD 2S");
  hand.insert(hand.end(), 3, Card::super_joker());
  const auto melds = enumerate_melds(hand, wild(1), true);
  CHECK(contains(melds, 0b111u << 13, MeldType::PureSequence));
}

TEST_CASE("enumerate_melds matches the subset filter on random hands") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto d = oracle::random_deal(1000 + seed, 10 + seed % 5);
    const bool with_super = seed % 3 == 0;
    if (with_super) d.hand.insert(d.hand.end(), 1 + seed % 2, Card::super_joker());
    auto naive = oracle::naive_melds(d.hand, d.wcj, with_super);
    std::sort(naive.begin(), naive.end(),
              [](const MeldMask& a, const MeldMask& b) { return a.mask < b.mask; });
    const auto got = enumerate_melds(d.hand, d.wcj, with_super);
    CHECK(got == naive);
  }
}

TEST_CASE("two-deck duplicates") {
  CHECK(cls("5H 5H 6H", 9) == std::nullopt);
  CHECK(cls("5H 6H 5H 7H", 9) == std::nullopt);
  CHECK(cls("5H 5S 5D 5C", 9) == MeldType::PureSet);
  CHECK(cls("5H 5S 5D 5C 5H", 9) == std::nullopt);
}
