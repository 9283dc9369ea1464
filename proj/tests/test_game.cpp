#include <algorithm>

#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"
#include "rummy/game.hpp"

using namespace rummy;

namespace {

GameState fresh(std::uint64_t seed = 1) { return new_game(GameConfig{}, seed); }

bool contains(const std::vector<Action>& actions, const Action& a) {
  return std::find(actions.begin(), actions.end(), a) != actions.end();
}

// Draw from the deck and throw the drawn card straight back.
void pass_turn(GameState& s) {
  apply_action(s, Action::draw_deck());
  apply_action(s, Action::discard(s.hands[s.turn].back()));
}

}  // namespace

TEST_CASE("dealing") {
  const GameState s = fresh();
  CHECK(s.hands[0].size() == 13);
  CHECK(s.hands[1].size() == 13);
  CHECK(s.closed_deck.size() == 26);
  CHECK(s.open_pile.size() == 1);
  CHECK(s.wildcard_card.is_natural());
  CHECK(s.wcj.wild_rank() == s.wildcard_card.rank());
  CHECK(s.round == 1);
  CHECK(s.turn == 0);
  CHECK(s.phase == Phase::AwaitDrawOrDrop);
  CHECK(conserves_cards(s));

  const GameState t = fresh();
  CHECK(t.hands == s.hands);
  CHECK(t.closed_deck == s.closed_deck);
  CHECK(t.open_pile == s.open_pile);
  CHECK(t.wildcard_card == s.wildcard_card);
}

TEST_CASE("decks that cannot cover the deal are rejected") {
  GameConfig cfg;
  cfg.deck.printed_jokers_per_deck = -1;
  CHECK_THROWS(new_game(cfg, 1));
  cfg = GameConfig{};
  cfg.round_cap = 0;
  CHECK_THROWS_AS(new_game(cfg, 1), std::invalid_argument);
}

TEST_CASE("wildcard rank is uniform over seeded deals") {
  std::array<int, 13> counts{};
  const int n = 1000;
  for (int seed = 0; seed < n; ++seed) ++counts[fresh(static_cast<std::uint64_t>(seed) + 5000).wcj.wild_rank() - 1];
  const double expected = n / 13.0;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double p = 1.0 - boost::math::cdf(boost::math::chi_squared(12), chi2);
  CHECK(p > 0.001);
}

TEST_CASE("legal actions follow the phase") {
  GameState s = fresh();
  auto acts = legal_actions(s);
  CHECK(acts.size() == 3);
  CHECK(contains(acts, Action::draw_deck()));
  CHECK(contains(acts, Action::draw_pile()));
  CHECK(contains(acts, Action::drop()));

  apply_action(s, Action::draw_pile());
  acts = legal_actions(s);
  CHECK(s.phase == Phase::AwaitDiscardOrDeclare);
  CHECK(s.hands[0].size() == 14);
  for (Card c : s.hands[0]) CHECK(contains(acts, Action::discard(c)));
  CHECK_FALSE(contains(acts, Action::drop()));
  CHECK_FALSE(contains(acts, Action::draw_deck()));

  apply_action(s, Action::discard(s.hands[0][0]));
  apply_action(s, Action::drop());
  CHECK(s.phase == Phase::Terminal);
  CHECK(legal_actions(s).empty());
}

TEST_CASE("illegal actions are rejected without touching the state") {
  GameState s = fresh();
  const auto hand = s.hands[0];
  CHECK_THROWS_AS(apply_action(s, Action::discard(hand[0])), IllegalAction);
  CHECK_THROWS_AS(apply_action(s, Action::declare(hand[0])), IllegalAction);
  apply_action(s, Action::draw_deck());
  const GameState before = s;
  CHECK_THROWS_AS(apply_action(s, Action::drop()), IllegalAction);
  CHECK_THROWS_AS(apply_action(s, Action::draw_pile()), IllegalAction);
  Card missing = s.open_pile.back();
  CHECK_THROWS_AS(apply_action(s, Action::discard(missing)), IllegalAction);
  CHECK(s.hands == before.hands);
  CHECK(s.history == before.history);
  CHECK(s.phase == before.phase);
}

TEST_CASE("rounds advance after both players move") {
  GameState s = fresh();
  pass_turn(s);
  CHECK(s.round == 1);
  CHECK(s.turn == 1);
  pass_turn(s);
  CHECK(s.round == 2);
  CHECK(s.turn == 0);
  CHECK(conserves_cards(s));
}

TEST_CASE("drop scoring") {
  SUBCASE("first player, first turn") {
    GameState s = fresh();
    apply_action(s, Action::drop());
    REQUIRE(s.outcome);
    CHECK(s.outcome->termination == Termination::Drop);
    CHECK(s.outcome->winner == 1);
    CHECK(s.outcome->gain == -20);
    CHECK(s.outcome->scores == std::array<int, 2>{20, 0});
  }
  SUBCASE("second player, first turn") {
    GameState s = fresh();
    pass_turn(s);
    apply_action(s, Action::drop());
    CHECK(s.outcome->winner == 0);
    CHECK(s.outcome->gain == 20);
  }
  SUBCASE("round three") {
    GameState s = fresh();
    for (int i = 0; i < 4; ++i) pass_turn(s);
    CHECK(s.round == 3);
    apply_action(s, Action::drop());
    CHECK(s.outcome->gain == -40);
    CHECK(s.outcome->rounds == 3);
  }
}

TEST_CASE("declarations") {
  const auto declarable = parse_hand("2C 3C 4C 5H 6H 7H 9D 9S 9C QD QS QH JK");
  GameState s = fresh();
  s.wcj = WildcardSpec(parse_card("8D"));
  s.hands[0] = declarable;
  s.hands[0].push_back(parse_card("KS"));
  s.hands[1] = parse_hand("2D 5D 7C TC JC 3S 4S 6S 8S AH 3H TH KD");
  s.phase = Phase::AwaitDiscardOrDeclare;

  CHECK(contains(legal_actions(s), Action::declare(parse_card("KS"))));
  CHECK_FALSE(contains(legal_actions(s), Action::declare(parse_card("2C"))));

  SUBCASE("valid, opponent has not moved yet") {
    apply_action(s, Action::declare(parse_card("KS")));
    REQUIRE(s.outcome);
    CHECK(s.outcome->termination == Termination::ValidDeclare);
    CHECK(s.outcome->winner == 0);
    CHECK(s.outcome->scores[0] == 0);
    CHECK(s.outcome->gain == 20);
    CHECK(s.history.back().kind == EventKind::Declared);
  }
  SUBCASE("valid, opponent has played") {
    s.turns_started[1] = 1;
    const int loser = min_score(s.hands[1], s.wcj).score;
    CHECK(loser > 20);
    apply_action(s, Action::declare(parse_card("KS")));
    CHECK(s.outcome->gain == loser);
    CHECK(s.outcome->scores[1] == loser);
  }
  SUBCASE("invalid") {
    apply_action(s, Action::declare(parse_card("2C")));
    CHECK(s.outcome->termination == Termination::InvalidDeclare);
    CHECK(s.outcome->winner == 1);
    CHECK(s.outcome->gain == -80);
  }
}

TEST_CASE("validate_declaration") {
  CHECK(validate_declaration(parse_hand("2C 3C 4C 5H 6H 7H 9D 9S 9C QD QS QH JK"),
                             WildcardSpec(parse_card("8D"))));
  CHECK_FALSE(validate_declaration(parse_hand("3C 4C 5C 6C 9D TD JD 4D 4H 4S KS KH 7S"),
                                   WildcardSpec(parse_card("3S"))));
  const std::vector<Card> jokers(13, Card::printed_joker());
  SolverConfig free_form;
  free_form.requirements.clear();
  CHECK(validate_declaration(jokers, WildcardSpec(parse_card("5C")), free_form));
  CHECK_FALSE(validate_declaration(jokers, WildcardSpec(parse_card("5C"))));
}

TEST_CASE("round-cap settlement") {
  GameState s = fresh();
  s.wcj = WildcardSpec(parse_card("2C"));
  SUBCASE("lower score wins") {
    s.hands[0] = parse_hand("AC 2D 3D 4D 5H 6H 7H 8S 9S TS JD QD KD");
    s.hands[1] = parse_hand("AS 3S 4H 9C TC JC 5C 6D 7D 8C QH KH KS");
    const int a = min_score(s.hands[0], s.wcj).score;
    const int b = min_score(s.hands[1], s.wcj).score;
    REQUIRE(a != b);
    const Outcome o = settle(s);
    CHECK(o.termination == Termination::RoundCap);
    CHECK(o.winner == (a < b ? 0 : 1));
    CHECK(o.gain == b - a);
  }
  SUBCASE("diamonds break the tie") {
    // Identical deadwood totals; player 1 holds 12 points of diamonds, player 2 nine.
    s.hands[0] = parse_hand("5D 7D 9C 4S 6H 8S TH QC 3C 7C 9H JS KS");
    s.hands[1] = parse_hand("9D 5C 7S 4H 6S 8H TS QH 3H 7H 9S JC KC");
    REQUIRE(min_score(s.hands[0], s.wcj).score == min_score(s.hands[1], s.wcj).score);
    const Outcome o = settle(s);
    CHECK(o.winner == 0);
    CHECK(o.gain == 0);
    std::swap(s.hands[0], s.hands[1]);
    CHECK(settle(s).winner == 1);
  }
  SUBCASE("full tie goes to player 1") {
    s.hands[1] = s.hands[0];
    const Outcome o = settle(s);
    CHECK(o.winner == 0);
    CHECK(o.gain == 0);
  }
}

TEST_CASE("the closed deck is rebuilt from the pile and the cap ends the game") {
  GameState s = fresh(9);
  int reshuffles = 0;
  while (s.phase != Phase::Terminal) {
    const bool empty = s.closed_deck.empty();
    pass_turn(s);
    reshuffles += empty;
    REQUIRE(conserves_cards(s));
    REQUIRE(s.round <= 100);
  }
  CHECK(reshuffles > 0);
  REQUIRE(s.outcome);
  CHECK(s.outcome->termination == Termination::RoundCap);
  CHECK(s.outcome->rounds == 100);
  CHECK(s.history.size() == 400);
}

TEST_CASE("traces round-trip and replay") {
  GameState s = fresh(3);
  for (int i = 0; i < 7; ++i) {
    apply_action(s, i % 2 ? Action::draw_pile() : Action::draw_deck());
    apply_action(s, Action::discard(s.hands[s.turn][i % 14]));
  }
  apply_action(s, Action::drop());
  const std::string text = trace_jsonl(s);
  std::optional<Outcome> parsed_outcome;
  const auto events = parse_trace(text, &parsed_outcome);
  CHECK(events == s.history);
  REQUIRE(parsed_outcome);
  CHECK(*parsed_outcome == *s.outcome);

  const GameState r = replay(GameConfig{}, 3, events);
  CHECK(r.outcome == s.outcome);
  CHECK(r.hands == s.hands);

  auto tampered = events;
  tampered[1].card = tampered[1].card == parse_card("AS") ? parse_card("KS") : parse_card("AS");
  CHECK_THROWS(replay(GameConfig{}, 3, tampered));
  CHECK_THROWS_AS(parse_trace("{\"actor\":0,\"kind\":\"flew\",\"round\":1}"), ParseError);
}

TEST_CASE("observations hide the opponent") {
  GameState s = fresh();
  const Observation o = observe(s);
  CHECK(o.seat == 0);
  CHECK(o.hand == s.hands[0]);
  CHECK(o.pile_top == s.open_pile.back());
  CHECK(o.first_turn);
  pass_turn(s);
  const Observation p = observe(s);
  CHECK(p.seat == 1);
  CHECK(p.hand == s.hands[1]);
  CHECK(p.first_turn);
  CHECK(p.history.size() == 2);
  CHECK_FALSE(p.history[0].card.has_value());
}
