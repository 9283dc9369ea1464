// Two-player game state machine: deal, draw/discard turns, drops,
// declarations, the round cap and settlement.

#ifndef RUMMY_GAME_HPP
#define RUMMY_GAME_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rummy/cards.hpp"
#include "rummy/minscore.hpp"
#include "rummy/rng.hpp"

namespace rummy {

inline constexpr int kPlayers = 2;
inline constexpr int kRoundCap = 100;
inline constexpr int kFirstTurnDrop = 20;
inline constexpr int kLateDrop = 40;
inline constexpr int kInvalidDeclarePenalty = 80;

enum class Phase : std::uint8_t { AwaitDrawOrDrop, AwaitDiscardOrDeclare, Terminal };

enum class ActionKind : std::uint8_t { DrawDeck, DrawPile, Discard, Declare, Drop };

// Declare carries the card discarded before the remaining 13 are shown.
struct Action {
  ActionKind kind = ActionKind::DrawDeck;
  Card card;

  static Action draw_deck() { return {ActionKind::DrawDeck, Card()}; }
  static Action draw_pile() { return {ActionKind::DrawPile, Card()}; }
  static Action discard(Card c) { return {ActionKind::Discard, c}; }
  static Action declare(Card c) { return {ActionKind::Declare, c}; }
  static Action drop() { return {ActionKind::Drop, Card()}; }

  friend bool operator==(const Action& a, const Action& b) {
    const bool carries = a.kind == ActionKind::Discard || a.kind == ActionKind::Declare;
    return a.kind == b.kind && (!carries || a.card == b.card);
  }
};

std::string to_string(const Action& a);

enum class EventKind : std::uint8_t { TookPile, TookDeck, Discarded, Dropped, Declared };

struct PublicEvent {
  int actor = 0;
  EventKind kind = EventKind::TookDeck;
  std::optional<Card> card;  // TookPile and Discarded only
  int round = 1;

  friend bool operator==(const PublicEvent&, const PublicEvent&) = default;
};

enum class Termination : std::uint8_t { ValidDeclare, InvalidDeclare, Drop, RoundCap };

std::string_view to_string(Termination t);
std::optional<Termination> parse_termination(std::string_view s);

struct Outcome {
  int winner = 0;
  std::array<int, kPlayers> scores{0, 0};
  int gain = 0;  // signed, from player 1's (index 0) point of view
  int rounds = 1;
  Termination termination = Termination::RoundCap;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct GameConfig {
  DeckSpec deck;
  int round_cap = kRoundCap;
  SolverConfig solver;  // requirement chain for declarations and settlement
};

struct GameState {
  GameConfig config;
  std::uint64_t seed = 0;
  std::array<std::vector<Card>, kPlayers> hands;
  std::vector<Card> closed_deck;  // back is the top
  std::vector<Card> open_pile;    // back is the top
  Card wildcard_card;             // indicator, set aside
  WildcardSpec wcj;
  int round = 1;
  int turn = 0;
  Phase phase = Phase::AwaitDrawOrDrop;
  std::array<int, kPlayers> turns_started{0, 0};
  std::vector<PublicEvent> history;
  std::optional<Outcome> outcome;
  Rng reshuffle_rng;
};

class IllegalAction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Deals 13 cards to each player alternately, turns up the first natural as
// the wildcard indicator (skipped jokers go to the bottom of the closed deck),
// then flips one card to start the open pile.
GameState new_game(const GameConfig& cfg, std::uint64_t seed);

std::vector<Action> legal_actions(const GameState& s);

// Throws IllegalAction and leaves the state untouched if the action does not
// fit the phase or names a card the player does not hold. Declare accepts any
// held card; the remaining 13 are validated and an invalid declaration loses.
void apply_action(GameState& s, const Action& a);

// All 13 cards split into melds meeting the requirement chain.
bool validate_declaration(std::span<const Card> hand13, const WildcardSpec& wcj,
                          const SolverConfig& cfg = {});

// Round-cap settlement: lower MinScore wins, ties go to the higher point total
// in Diamonds, then Clubs, Hearts, Spades, and finally to player 1.
Outcome settle(const GameState& s);

// Hands, decks, pile and the indicator together equal the full deck.
bool conserves_cards(const GameState& s);

// The acting player's view: nothing hidden from them is included.
struct Observation {
  int seat = 0;
  Phase phase = Phase::AwaitDrawOrDrop;
  std::vector<Card> hand;
  std::optional<Card> pile_top;
  bool deck_drawable = true;
  WildcardSpec wcj;
  int round = 1;
  bool first_turn = false;
  std::span<const PublicEvent> history;
};

Observation observe(const GameState& s);

// One JSON object per event, then {"outcome": {...}} when the game is over.
std::string trace_jsonl(const GameState& s);
std::vector<PublicEvent> parse_trace(std::string_view jsonl, std::optional<Outcome>* outcome = nullptr);

std::string outcome_json(const Outcome& o);

// Rebuilds a game from its seed and public events.
GameState replay(const GameConfig& cfg, std::uint64_t seed, std::span<const PublicEvent> events);

}  // namespace rummy

#endif  // RUMMY_GAME_HPP
