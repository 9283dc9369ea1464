#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "rummy/minscore.hpp"

using namespace rummy;

namespace {

WildcardSpec wcj(const char* card) { return WildcardSpec(parse_card(card)); }

// Re-scores a witness from scratch: melds are disjoint valid groups, the chain
// is met in order, and the deadwood adds up to the reported score.
void check_witness(std::span<const Card> hand, const WildcardSpec& w, const Declaration& d,
                   int unclipped) {
  std::uint32_t used = d.deadwood_mask;
  std::size_t level = 0;
  for (const Meld& m : d.melds) {
    CHECK((used & m.mask) == 0);
    used |= m.mask;
    const auto t = oracle::naive_classify(oracle::pick(hand, m.mask), w, false);
    REQUIRE(t.has_value());
    CHECK(*t == m.type);
    if (level == 0) {
      CHECK(m.type == MeldType::PureSequence);
    } else if (level == 1) {
      CHECK(is_sequence(m.type));
    }
    ++level;
  }
  CHECK(used == (1u << hand.size()) - 1);
  CHECK(oracle::deadwood(oracle::pick(hand, d.deadwood_mask), w) == unclipped);
}

}  // namespace

TEST_CASE("worked example hand scores only the 7 once the wild three joins the kings") {
  const auto hand = parse_hand("3C 4C 5C 6C 9D TD JD 4D 4H 4S KS KH 7S");
  SolverConfig cfg;
  cfg.emit_declaration = true;
  const auto r = min_score(hand, wcj("3S"), cfg);
  CHECK(oracle::naive_min_score(hand, wcj("3S")) == 7);
  CHECK(r.score == 7);
  check_witness(hand, wcj("3S"), *r.declaration, r.unclipped);
}

TEST_CASE("worked example grouping scores 10+10+7 when no card in it is wild") {
  const auto hand = parse_hand("3C 4C 5C 6C 9D TD JD 4D 4H 4S KS KH 7S");
  CHECK(min_score(hand, wcj("2S")).score == 27);
}

TEST_CASE("declarable fixture scores zero") {
  const auto hand = parse_hand("2C 3C 4C 5H 6H 7H 9D 9S 9C QD QS QH JK");
  CHECK(oracle::naive_min_score(hand, wcj("8D")) == 0);
  CHECK(min_score(hand, wcj("8D")).score == 0);
  CHECK(min_score_unclipped(hand, wcj("8D")) == 0);
}

TEST_CASE("no pure sequence means every card is deadwood") {
  const auto hand = parse_hand("3D 9C 5D 6D JS QS 7C 2C 2S 2H AC AS AH");
  CHECK(min_score_unclipped(hand, wcj("7C")) == 79);
  CHECK(min_score(hand, wcj("7C")).score == 79);
}

TEST_CASE("meldless hands score their value sum, clipped at the cap") {
  const auto hand = parse_hand("2C 5D 8H JS 3D 6H 9S QC 4H 7S TC KD 2S");
  const int sum = hand_value(hand, wcj("AS"));
  CHECK(sum == 86);
  CHECK(min_score(hand, wcj("AS")).score == 80);
  CHECK(min_score_unclipped(hand, wcj("AS")) == sum);
  SolverConfig loose;
  loose.cap = 1000;
  CHECK(min_score(hand, wcj("AS"), loose).score == sum);
}

TEST_CASE("contract violations") {
  auto hand = parse_hand("2C 5D 8H JS 3D 6H 9S QC 4H 7S TC KD");
  CHECK_THROWS_AS(min_score(hand, wcj("AS")), std::invalid_argument);
  hand.push_back(Card::super_joker());
  CHECK_THROWS_AS(min_score(hand, wcj("AS")), std::invalid_argument);
  CHECK_THROWS_AS(best_discard_minscore(hand, wcj("AS")), std::invalid_argument);
  SolverConfig bad;
  bad.min_meld_len = 2;
  CHECK_THROWS_AS(min_score(parse_hand("2C 5D 8H JS 3D 6H 9S QC 4H 7S TC KD 2S"), wcj("AS"), bad),
                  std::invalid_argument);
}

TEST_CASE("bitmask DP agrees with the memo-free recursion on random hands") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto d = oracle::random_deal(500 + seed);
    SolverConfig cfg;
    cfg.emit_declaration = true;
    const auto r = min_score(d.hand, d.wcj, cfg);
    const int naive = oracle::naive_min_score(d.hand, d.wcj);
    CHECK(r.unclipped == naive);
    CHECK(r.score == std::min(80, naive));
    CHECK(r.score <= 80);
    check_witness(d.hand, d.wcj, *r.declaration, r.unclipped);
  }
}

TEST_CASE("melds longer than five cards never help") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto d = oracle::random_deal(9000 + seed);
    CHECK(min_score_unclipped(d.hand, d.wcj) == oracle::naive_min_score(d.hand, d.wcj, 13));
  }
}

TEST_CASE("dropping the requirement chain never raises the score") {
  SolverConfig free;
  free.requirements.clear();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto d = oracle::random_deal(seed);
    CHECK(min_score_unclipped(d.hand, d.wcj, free) <= min_score_unclipped(d.hand, d.wcj));
  }
}

TEST_CASE("best discard equals the best single-card removal") {
  auto hand = parse_hand("3C 4C 5C 6C 9D TD JD 4D 4H 4S KS KH 7S 7D");
  const auto w = wcj("3S");
  int best = 1000;
  for (std::size_t i = 0; i < hand.size(); ++i) {
    auto kept = hand;
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    best = std::min(best, oracle::naive_min_score(kept, w));
  }
  CHECK(best == 7);
  const auto r = best_discard_minscore(hand, w);
  CHECK(r.score == 7);
  // Both sevens tie; the lower position goes.
  CHECK(r.discard == parse_card("7S"));
  CHECK(r.position == 12);
  CHECK(r.used_pile_card);
}

TEST_CASE("declarable 13 plus junk discards the junk") {
  const auto hand = parse_hand("2C 3C 4C 5H 6H 7H 9D 9S 9C QD QS QH JK KS");
  const auto r = best_discard_minscore(hand, wcj("8D"));
  CHECK(r.score == 0);
  CHECK(r.discard == parse_card("KS"));
  CHECK_FALSE(r.used_pile_card);
}

TEST_CASE("tied discards go by value then position") {
  // Meldless: every removal leaves a clipped 80.
  const auto hand = parse_hand("2C 5D 8H JS 3D 6H 9S QC 4H 7S TC KD 2S 6C");
  const auto r = best_discard_minscore(hand, wcj("AS"));
  CHECK(r.score == 80);
  CHECK(r.discard == parse_card("JS"));
  CHECK(r.position == 3);
}

TEST_CASE("every random discard result matches brute force removal") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto d = oracle::random_deal(seed * 7 + 3, 14);
    const auto r = best_discard_minscore(d.hand, d.wcj);
    int best = 1000;
    for (std::size_t i = 0; i < d.hand.size(); ++i) {
      auto kept = d.hand;
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
      best = std::min(best, min_score(kept, d.wcj).score);
    }
    CHECK(r.score == best);
    auto kept = d.hand;
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(r.position));
    CHECK(min_score(kept, d.wcj).score == r.score);
  }
}

TEST_CASE("table answers every sub-hand") {
  const auto d = oracle::random_deal(77, 14);
  MinScoreTable table(d.hand, d.wcj, SolverConfig{});
  for (std::size_t i = 0; i < 14; ++i) {
    auto kept = d.hand;
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    CHECK(table.unclipped(table.full_mask() ^ (1u << i)) == min_score_unclipped(kept, d.wcj));
  }
}
