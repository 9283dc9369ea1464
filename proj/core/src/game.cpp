#include "rummy/game.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "rummy/mindist.hpp"

namespace rummy {

namespace {

using nlohmann::json;

constexpr std::uint64_t kReshuffleStream = 0x7265736875666c65ULL;

int other(int p) { return 1 - p; }

std::vector<Card>::iterator find_card(std::vector<Card>& hand, Card c) {
  return std::find(hand.begin(), hand.end(), c);
}

int signed_gain(int winner, int amount) { return winner == 0 ? amount : -amount; }

void finish(GameState& s, int winner, std::array<int, kPlayers> scores, int amount,
            Termination why) {
  Outcome o;
  o.winner = winner;
  o.scores = scores;
  o.gain = signed_gain(winner, amount);
  o.rounds = s.round;
  o.termination = why;
  s.outcome = o;
  s.phase = Phase::Terminal;
}

void end_turn(GameState& s) {
  if (s.turn == kPlayers - 1) {
    if (s.round >= s.config.round_cap) {
      s.outcome = settle(s);
      s.phase = Phase::Terminal;
      return;
    }
    ++s.round;
  }
  s.turn = other(s.turn);
  s.phase = Phase::AwaitDrawOrDrop;
  ++s.turns_started[s.turn];
}

bool deck_drawable(const GameState& s) {
  return !s.closed_deck.empty() || s.open_pile.size() > 1;
}

// Suit point totals in tie-break order.
std::array<int, 4> suit_points(std::span<const Card> hand, const WildcardSpec& wcj) {
  static constexpr Suit kOrder[] = {Suit::Diamonds, Suit::Clubs, Suit::Hearts, Suit::Spades};
  std::array<int, 4> out{};
  for (Card c : hand) {
    if (!c.is_natural()) continue;
    for (int i = 0; i < 4; ++i) {
      if (c.suit() == kOrder[i]) out[i] += card_value(c, wcj);
    }
  }
  return out;
}

std::string_view event_name(EventKind k) {
  switch (k) {
    case EventKind::TookPile:
      return "took_pile";
    case EventKind::TookDeck:
      return "took_deck";
    case EventKind::Discarded:
      return "discarded";
    case EventKind::Dropped:
      return "dropped";
    case EventKind::Declared:
      return "declared";
  }
  return "?";
}

EventKind parse_event_name(std::string_view s) {
  static const std::map<std::string_view, EventKind> kNames = {
      {"took_pile", EventKind::TookPile}, {"took_deck", EventKind::TookDeck},
      {"discarded", EventKind::Discarded}, {"dropped", EventKind::Dropped},
      {"declared", EventKind::Declared}};
  auto it = kNames.find(s);
  if (it == kNames.end()) throw ParseError("unknown event kind '" + std::string(s) + "'");
  return it->second;
}

json outcome_object(const Outcome& o) {
  return json{{"winner", o.winner},
              {"scores", o.scores},
              {"gain", o.gain},
              {"rounds", o.rounds},
              {"termination", std::string(to_string(o.termination))}};
}

}  // namespace

std::string to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::DrawDeck:
      return "draw-deck";
    case ActionKind::DrawPile:
      return "draw-pile";
    case ActionKind::Discard:
      return "discard " + format_card(a.card);
    case ActionKind::Declare:
      return "declare " + format_card(a.card);
    case ActionKind::Drop:
      return "drop";
  }
  return "?";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ValidDeclare:
      return "valid_declare";
    case Termination::InvalidDeclare:
      return "invalid_declare";
    case Termination::Drop:
      return "drop";
    case Termination::RoundCap:
      return "round_cap";
  }
  return "?";
}

std::optional<Termination> parse_termination(std::string_view s) {
  for (Termination t : {Termination::ValidDeclare, Termination::InvalidDeclare, Termination::Drop,
                        Termination::RoundCap}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

GameState new_game(const GameConfig& cfg, std::uint64_t seed) {
  cfg.deck.validate();
  if (cfg.round_cap < 1) throw std::invalid_argument("round_cap must be at least 1");
  const std::vector<Card> deck = build_deck(cfg.deck, seed);
  const std::size_t dealt = kPlayers * kHandSize;
  if (deck.size() < dealt + 2) {
    throw std::invalid_argument("deck too small: " + std::to_string(deck.size()) + " cards");
  }

  GameState s;
  s.config = cfg;
  s.seed = seed;
  s.reshuffle_rng = Rng(seed ^ kReshuffleStream);
  for (std::size_t i = 0; i < dealt; ++i) s.hands[i % kPlayers].push_back(deck[i]);

  std::size_t next = dealt;
  std::vector<Card> skipped;
  while (next < deck.size() && !deck[next].is_natural()) skipped.push_back(deck[next++]);
  if (next + 1 >= deck.size()) throw std::invalid_argument("deck too small after dealing");
  s.wildcard_card = deck[next++];
  s.wcj = WildcardSpec(s.wildcard_card);
  s.open_pile.push_back(deck[next++]);

  // Remaining cards top first, skipped jokers underneath; stored bottom first.
  std::vector<Card> rest(deck.begin() + static_cast<std::ptrdiff_t>(next), deck.end());
  rest.insert(rest.end(), skipped.begin(), skipped.end());
  s.closed_deck.assign(rest.rbegin(), rest.rend());

  s.turns_started[0] = 1;
  return s;
}

std::vector<Action> legal_actions(const GameState& s) {
  std::vector<Action> out;
  switch (s.phase) {
    case Phase::Terminal:
      break;
    case Phase::AwaitDrawOrDrop:
      if (deck_drawable(s)) out.push_back(Action::draw_deck());
      if (!s.open_pile.empty()) out.push_back(Action::draw_pile());
      out.push_back(Action::drop());
      break;
    case Phase::AwaitDiscardOrDeclare: {
      const std::vector<Card>& hand = s.hands[s.turn];
      std::vector<Card> distinct = hand;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (Card c : distinct) out.push_back(Action::discard(c));
      std::vector<Card> declaring;
      for (std::size_t i : declaring_discards(hand, s.wcj, s.config.solver)) {
        declaring.push_back(hand[i]);
      }
      for (Card c : distinct) {
        if (std::find(declaring.begin(), declaring.end(), c) != declaring.end()) {
          out.push_back(Action::declare(c));
        }
      }
      break;
    }
  }
  return out;
}

void apply_action(GameState& s, const Action& a) {
  const int p = s.turn;
  std::vector<Card>& hand = s.hands[p];
  auto reject = [&](const std::string& why) {
    throw IllegalAction(to_string(a) + " rejected: " + why);
  };
  if (s.phase == Phase::Terminal) reject("game is over");

  const bool draw_phase = s.phase == Phase::AwaitDrawOrDrop;
  switch (a.kind) {
    case ActionKind::DrawDeck: {
      if (!draw_phase) reject("not in the draw phase");
      if (!deck_drawable(s)) reject("closed deck and pile are exhausted");
      if (s.closed_deck.empty()) {
        const Card top = s.open_pile.back();
        s.open_pile.pop_back();
        s.closed_deck.swap(s.open_pile);
        s.reshuffle_rng.shuffle(std::span<Card>(s.closed_deck));
        s.open_pile.push_back(top);
      }
      hand.push_back(s.closed_deck.back());
      s.closed_deck.pop_back();
      s.history.push_back({p, EventKind::TookDeck, std::nullopt, s.round});
      s.phase = Phase::AwaitDiscardOrDeclare;
      return;
    }
    case ActionKind::DrawPile: {
      if (!draw_phase) reject("not in the draw phase");
      if (s.open_pile.empty()) reject("open pile is empty");
      const Card c = s.open_pile.back();
      s.open_pile.pop_back();
      hand.push_back(c);
      s.history.push_back({p, EventKind::TookPile, c, s.round});
      s.phase = Phase::AwaitDiscardOrDeclare;
      return;
    }
    case ActionKind::Drop: {
      if (!draw_phase) reject("drop is only allowed before drawing");
      const int penalty = s.turns_started[p] == 1 ? kFirstTurnDrop : kLateDrop;
      s.history.push_back({p, EventKind::Dropped, std::nullopt, s.round});
      std::array<int, kPlayers> scores{0, 0};
      scores[p] = penalty;
      finish(s, other(p), scores, penalty, Termination::Drop);
      return;
    }
    case ActionKind::Discard:
    case ActionKind::Declare: {
      if (draw_phase) reject("draw first");
      auto it = find_card(hand, a.card);
      if (it == hand.end()) reject("card not in hand");
      hand.erase(it);
      s.open_pile.push_back(a.card);
      s.history.push_back({p, EventKind::Discarded, a.card, s.round});
      if (a.kind == ActionKind::Discard) {
        end_turn(s);
        return;
      }
      s.history.push_back({p, EventKind::Declared, std::nullopt, s.round});
      std::array<int, kPlayers> scores{0, 0};
      if (!validate_declaration(hand, s.wcj, s.config.solver)) {
        scores[p] = kInvalidDeclarePenalty;
        finish(s, other(p), scores, kInvalidDeclarePenalty, Termination::InvalidDeclare);
        return;
      }
      const int q = other(p);
      int loss = min_score(s.hands[q], s.wcj, s.config.solver).score;
      // An opponent who never got a turn is treated as a first-turn drop.
      if (s.turns_started[q] == 0) loss = std::min(loss, kFirstTurnDrop);
      scores[q] = loss;
      finish(s, p, scores, loss, Termination::ValidDeclare);
      return;
    }
  }
}

bool validate_declaration(std::span<const Card> hand13, const WildcardSpec& wcj,
                          const SolverConfig& cfg) {
  require_hand(hand13, kHandSize, "validate_declaration");
  return is_declarable(hand13, wcj, cfg);
}

Outcome settle(const GameState& s) {
  Outcome o;
  for (int p = 0; p < kPlayers; ++p) o.scores[p] = min_score(s.hands[p], s.wcj, s.config.solver).score;
  o.rounds = s.round;
  o.termination = Termination::RoundCap;
  if (o.scores[0] != o.scores[1]) {
    o.winner = o.scores[0] < o.scores[1] ? 0 : 1;
  } else {
    const auto a = suit_points(s.hands[0], s.wcj);
    const auto b = suit_points(s.hands[1], s.wcj);
    o.winner = b > a ? 1 : 0;
  }
  o.gain = signed_gain(o.winner, std::abs(o.scores[0] - o.scores[1]));
  return o;
}

bool conserves_cards(const GameState& s) {
  std::vector<Card> seen;
  for (const auto& h : s.hands) seen.insert(seen.end(), h.begin(), h.end());
  seen.insert(seen.end(), s.closed_deck.begin(), s.closed_deck.end());
  seen.insert(seen.end(), s.open_pile.begin(), s.open_pile.end());
  seen.push_back(s.wildcard_card);
  std::vector<Card> full = full_deck(s.config.deck);
  std::sort(seen.begin(), seen.end());
  std::sort(full.begin(), full.end());
  return seen == full;
}

Observation observe(const GameState& s) {
  Observation o;
  o.seat = s.turn;
  o.phase = s.phase;
  o.hand = s.hands[s.turn];
  if (!s.open_pile.empty()) o.pile_top = s.open_pile.back();
  o.deck_drawable = deck_drawable(s);
  o.wcj = s.wcj;
  o.round = s.round;
  o.first_turn = s.turns_started[s.turn] == 1;
  o.history = s.history;
  return o;
}

std::string outcome_json(const Outcome& o) { return outcome_object(o).dump(); }

std::string trace_jsonl(const GameState& s) {
  std::string out;
  for (const PublicEvent& e : s.history) {
    json j{{"actor", e.actor}, {"kind", std::string(event_name(e.kind))}, {"round", e.round}};
    if (e.card) j["card"] = format_card(*e.card);
    out += j.dump();
    out += '\n';
  }
  if (s.outcome) {
    out += json{{"outcome", outcome_object(*s.outcome)}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<PublicEvent> parse_trace(std::string_view jsonl, std::optional<Outcome>* outcome) {
  std::vector<PublicEvent> events;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    std::size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(line);
      if (j.contains("outcome")) {
        const json& o = j.at("outcome");
        Outcome out;
        out.winner = o.at("winner").get<int>();
        out.scores = o.at("scores").get<std::array<int, kPlayers>>();
        out.gain = o.at("gain").get<int>();
        out.rounds = o.at("rounds").get<int>();
        const auto t = parse_termination(o.at("termination").get<std::string>());
        if (!t) throw ParseError("unknown termination");
        out.termination = *t;
        if (outcome) *outcome = out;
        continue;
      }
      PublicEvent e;
      e.actor = j.at("actor").get<int>();
      e.kind = parse_event_name(j.at("kind").get<std::string>());
      e.round = j.at("round").get<int>();
      if (j.contains("card")) e.card = parse_card(j.at("card").get<std::string>());
      events.push_back(e);
    } catch (const json::exception& ex) {
      throw ParseError("bad trace line '" + std::string(line) + "': " + ex.what());
    }
  }
  return events;
}

GameState replay(const GameConfig& cfg, std::uint64_t seed, std::span<const PublicEvent> events) {
  GameState s = new_game(cfg, seed);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const PublicEvent& e = events[i];
    Action a;
    switch (e.kind) {
      case EventKind::TookDeck:
        a = Action::draw_deck();
        break;
      case EventKind::TookPile:
        a = Action::draw_pile();
        break;
      case EventKind::Dropped:
        a = Action::drop();
        break;
      case EventKind::Discarded: {
        if (!e.card) throw std::runtime_error("replay: discard event without a card");
        const bool declares = i + 1 < events.size() && events[i + 1].kind == EventKind::Declared;
        a = declares ? Action::declare(*e.card) : Action::discard(*e.card);
        if (declares) ++i;
        break;
      }
      case EventKind::Declared:
        throw std::runtime_error("replay: declaration without a discard");
    }
    const std::size_t before = s.history.size();
    apply_action(s, a);
    for (std::size_t k = before; k < s.history.size(); ++k) {
      const std::size_t src = i - (s.history.size() - 1 - k);
      if (!(s.history[k] == events[src])) {
        throw std::runtime_error("replay diverged at event " + std::to_string(src));
      }
    }
  }
  return s;
}

}  // namespace rummy
