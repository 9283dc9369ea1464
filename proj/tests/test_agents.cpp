#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "rummy/agents.hpp"
#include "rummy/tournament.hpp"

using namespace rummy;

namespace {

Observation first_turn_view(std::vector<Card> hand, const WildcardSpec& wcj, Card pile) {
  Observation o;
  o.seat = 0;
  o.phase = Phase::AwaitDrawOrDrop;
  o.hand = std::move(hand);
  o.pile_top = pile;
  o.wcj = wcj;
  o.first_turn = true;
  return o;
}

bool contains(const std::vector<Action>& actions, const Action& a) {
  return std::find(actions.begin(), actions.end(), a) != actions.end();
}

struct Audit {
  int turns = 0;
  int illegal = 0;
  int missed_declarations = 0;
  int dist_increases = 0;
};

// Plays a game while checking every agent action against the engine's legal
// set, and that the MinDist family never leaves its hand further away.
void audited_game(const AgentConfig& a, const AgentConfig& b, std::uint64_t seed, Audit& audit) {
  GameState s = new_game(GameConfig{}, seed);
  std::array<Agent, 2> agents{Agent(a), Agent(b)};
  std::array<int, 2> dist_before{0, 0};
  while (s.phase != Phase::Terminal) {
    const int p = s.turn;
    const Profile prof = agents[p].config().profile;
    const bool family = prof == Profile::MinDist || prof == Profile::MinDistScore ||
                        prof == Profile::MinDistOpp;
    if (family && s.phase == Phase::AwaitDrawOrDrop) dist_before[p] = min_dist(s.hands[p], s.wcj).dist;
    const Action act = agents[p].act(observe(s));
    const auto legal = legal_actions(s);
    if (!contains(legal, act)) ++audit.illegal;
    if (s.phase == Phase::AwaitDiscardOrDeclare) {
      ++audit.turns;
      const bool can_declare = std::any_of(legal.begin(), legal.end(), [](const Action& x) {
        return x.kind == ActionKind::Declare;
      });
      if (can_declare && act.kind != ActionKind::Declare) ++audit.missed_declarations;
    }
    const bool discarding = act.kind == ActionKind::Discard;
    apply_action(s, act);
    if (family && discarding && min_dist(s.hands[p], s.wcj).dist > dist_before[p]) {
      ++audit.dist_increases;
    }
  }
}

}  // namespace

TEST_CASE("profile names") {
  for (Profile p : kAllProfiles) CHECK(parse_profile(to_string(p)) == p);
  try {
    parse_profile("greedy");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("mindist_opp") != std::string::npos);
  }
  CHECK(default_drop_threshold(Profile::MinScore) == 80);
  CHECK(default_drop_threshold(Profile::MinDist) == 3);
  CHECK(default_drop_threshold(Profile::MinDistOpp) == 3);
  CHECK(AgentConfig{Profile::MinDistOpp, true, 5}.threshold() == 5);
}

TEST_CASE("meld compatibility") {
  const Card c5 = parse_card("5C");
  CHECK(meld_compatible(c5, parse_card("4C")));
  CHECK(meld_compatible(c5, parse_card("6C")));
  CHECK(meld_compatible(c5, parse_card("3C")));
  CHECK(meld_compatible(c5, parse_card("5H")));
  CHECK_FALSE(meld_compatible(c5, parse_card("8C")));
  CHECK_FALSE(meld_compatible(c5, parse_card("4D")));
  CHECK_FALSE(meld_compatible(c5, c5));
  CHECK_FALSE(meld_compatible(c5, Card::printed_joker()));
  CHECK(meld_compatible(parse_card("AS"), parse_card("KS")));
  CHECK(meld_compatible(parse_card("AS"), parse_card("QS")));
  CHECK(meld_compatible(parse_card("AS"), parse_card("3S")));
  CHECK_FALSE(meld_compatible(parse_card("AS"), parse_card("JS")));
}

TEST_CASE("opponent model bookkeeping") {
  OpponentModel m;
  update_model(m, {1, EventKind::TookPile, parse_card("7H"), 1});
  update_model(m, {1, EventKind::Discarded, parse_card("2S"), 1});
  update_model(m, {1, EventKind::TookDeck, std::nullopt, 2});
  update_model(m, {1, EventKind::Dropped, std::nullopt, 2});
  CHECK(m.picked_from_pile == std::vector<Card>{parse_card("7H")});
  CHECK(m.discarded == std::vector<Card>{parse_card("2S")});
}

TEST_CASE("opponent-aware discard among equal candidates") {
  const WildcardSpec w(parse_card("2D"));
  const auto hand = parse_hand("4C 9H KS");
  const std::vector<std::size_t> candidates{0, 1};
  OpponentModel m;
  // No information: highest value goes.
  CHECK(opp_discard_choice(hand, candidates, m, w) == 1);
  m.discarded.push_back(parse_card("5C"));
  CHECK(opp_discard_choice(hand, candidates, m, w) == 0);
  // A card that fits the opponent's pile picks is held back.
  m.picked_from_pile.push_back(parse_card("3C"));
  CHECK(opp_discard_choice(hand, candidates, m, w) == 1);
  // Unless every candidate fits them.
  m.picked_from_pile.push_back(parse_card("9S"));
  CHECK(opp_discard_choice(hand, candidates, m, w) == 0);
}

TEST_CASE("drop adherence") {
  SUBCASE("MinScore keeps a 27-point hand under threshold 80") {
    const WildcardSpec w(parse_card("2S"));
    const auto hand = parse_hand("3C 4C 5C 6C 9D TD JD 4D 4H 4S KS KH 7S");
    REQUIRE(min_score(hand, w).score == 27);
    Agent a({Profile::MinScore, true});
    CHECK(a.act(first_turn_view(hand, w, parse_card("8H"))).kind != ActionKind::Drop);
  }
  SUBCASE("MinDist folds a distance-4 hand at threshold 3") {
    oracle::Deal d;
    for (std::uint64_t seed = 0;; ++seed) {
      d = oracle::random_deal(seed + 600);
      if (min_dist(d.hand, d.wcj).dist == 4) break;
    }
    REQUIRE(oracle::naive_min_dist(d.hand, d.wcj) == 4);
    Agent a({Profile::MinDist, true});
    CHECK(a.act(first_turn_view(d.hand, d.wcj, d.rest[0])).kind == ActionKind::Drop);
    auto later = first_turn_view(d.hand, d.wcj, d.rest[0]);
    later.first_turn = false;
    CHECK(Agent({Profile::MinDist, true}).act(later).kind != ActionKind::Drop);
    CHECK(Agent({Profile::MinDist, false}).act(first_turn_view(d.hand, d.wcj, d.rest[0])).kind !=
          ActionKind::Drop);
  }
}

TEST_CASE("MinDist takes the pile card only when it shortens the distance") {
  const WildcardSpec w(parse_card("7C"));
  const auto hand = parse_hand("3D 9C 5D 6D JS QS 7C 2C 2S 2H AC AS AH");
  Agent a({Profile::MinDist});
  CHECK(a.act(first_turn_view(hand, w, parse_card("4D"))).kind == ActionKind::DrawPile);
  Agent b({Profile::MinDist});
  CHECK(b.act(first_turn_view(hand, w, parse_card("8H"))).kind == ActionKind::DrawDeck);

  // Having drawn 4D it declares, throwing away 9C.
  Observation o = first_turn_view(hand, w, parse_card("4D"));
  o.phase = Phase::AwaitDiscardOrDeclare;
  o.hand.push_back(parse_card("4D"));
  o.pile_top.reset();
  CHECK(a.act(o) == Action::declare(parse_card("9C")));
}

TEST_CASE("MinScore keeps the pile card when it lowers the best score") {
  const WildcardSpec w(parse_card("3S"));
  const auto hand = parse_hand("3C 4C 5C 6C 9D TD JD 4D 4H 4S KS KH 7S");
  Agent a({Profile::MinScore});
  CHECK(a.act(first_turn_view(hand, w, parse_card("KD"))).kind == ActionKind::DrawPile);
  Agent b({Profile::MinScore});
  CHECK(b.act(first_turn_view(hand, w, parse_card("QH"))).kind == ActionKind::DrawDeck);
}

TEST_CASE("DefeatSeeking breaks its first meld") {
  const WildcardSpec w(parse_card("2D"));
  Agent a({Profile::DefeatSeeking});
  Observation o = first_turn_view(parse_hand("5C 6C 7C 9H JS KD 3H 8S TD QC AS 4D 9S"), w,
                                  parse_card("KH"));
  // KH does not complete a meld, so it is taken.
  CHECK(a.act(o) == Action::draw_pile());
  o.phase = Phase::AwaitDiscardOrDeclare;
  o.hand.push_back(parse_card("KH"));
  CHECK(a.act(o) == Action::discard(parse_card("5C")));
  // 8C would join the clubs run: draw blind instead.
  CHECK(Agent({Profile::DefeatSeeking}).act(first_turn_view(
            parse_hand("5C 6C 7C 9H JS KD 3H 8S TD QC AS 4D 9S"), w, parse_card("8C"))) ==
        Action::draw_deck());
}

TEST_CASE("agents are legal, declare on sight and never drift away") {
  std::uint64_t seed = 40000;
  for (Profile p : kAllProfiles) {
    Audit audit;
    int opponent = 0;
    while (audit.turns < 600) {
      const Profile other = kAllProfiles[opponent++ % 6];
      audited_game({p, false, std::nullopt, seed}, {other, false, std::nullopt, seed + 1}, seed,
                   audit);
      ++seed;
    }
    INFO("profile " << to_string(p));
    CHECK(audit.illegal == 0);
    CHECK(audit.missed_declarations == 0);
    CHECK(audit.dist_increases == 0);
  }
}

TEST_CASE("identical seeds give identical games") {
  for (Profile p : kAllProfiles) {
    const AgentConfig a{p, false, std::nullopt, 5}, b{Profile::Random, false, std::nullopt, 6};
    const GameResult x = play_game(GameConfig{}, 77, a, b);
    const GameResult y = play_game(GameConfig{}, 77, a, b);
    CHECK(x.final_state.history == y.final_state.history);
    CHECK(x.outcome == y.outcome);
  }
}
