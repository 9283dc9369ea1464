// Card, deck and scoring primitives.

#ifndef RUMMY_CARDS_HPP
#define RUMMY_CARDS_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rummy/rng.hpp"

namespace rummy {

enum class Suit : std::uint8_t { Clubs = 0, Diamonds = 1, Hearts = 2, Spades = 3 };

inline constexpr int kNumSuits = 4;
inline constexpr int kNumRanks = 13;
inline constexpr int kAce = 1;
inline constexpr int kKing = 13;

enum class CardKind : std::uint8_t { Natural, PrintedJoker, SuperJoker };

// Thrown when card or hand text does not follow the card grammar.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Card {
 public:
  constexpr Card() = default;

  static constexpr Card natural(int rank, Suit suit) {
    return Card(CardKind::Natural, static_cast<std::uint8_t>(rank), suit);
  }
  static constexpr Card printed_joker() {
    return Card(CardKind::PrintedJoker, 0, Suit::Clubs);
  }
  // Solver-internal placeholder for an arbitrary unobserved card.
  static constexpr Card super_joker() {
    return Card(CardKind::SuperJoker, 0, Suit::Clubs);
  }

  constexpr CardKind kind() const { return kind_; }
  constexpr bool is_natural() const { return kind_ == CardKind::Natural; }
  constexpr bool is_printed_joker() const { return kind_ == CardKind::PrintedJoker; }
  constexpr bool is_super_joker() const { return kind_ == CardKind::SuperJoker; }
  // Only meaningful for naturals.
  constexpr int rank() const { return rank_; }
  constexpr Suit suit() const { return suit_; }

  // 0..51 for naturals (suit-major), 52 for printed jokers, 53 for super.
  constexpr int index() const {
    switch (kind_) {
      case CardKind::Natural:
        return static_cast<int>(suit_) * kNumRanks + (rank_ - 1);
      case CardKind::PrintedJoker:
        return 52;
      case CardKind::SuperJoker:
        return 53;
    }
    return 53;
  }

  friend constexpr bool operator==(const Card&, const Card&) = default;
  friend constexpr bool operator<(const Card& a, const Card& b) {
    return a.index() < b.index();
  }

 private:
  constexpr Card(CardKind kind, std::uint8_t rank, Suit suit)
      : kind_(kind), rank_(rank), suit_(suit) {}

  CardKind kind_ = CardKind::PrintedJoker;
  std::uint8_t rank_ = 0;
  Suit suit_ = Suit::Clubs;
};

// The card turned up at deal time; every natural of its rank is a joker.
struct WildcardSpec {
  Card drawn_card;

  WildcardSpec() = default;
  explicit WildcardSpec(Card drawn);

  int wild_rank() const { return drawn_card.rank(); }
  bool is_wild(Card c) const { return c.is_natural() && c.rank() == wild_rank(); }
  // True for printed jokers, super jokers and wild-rank naturals.
  bool is_joker(Card c) const { return !c.is_natural() || is_wild(c); }
};

struct DeckSpec {
  int num_decks = 1;
  int printed_jokers_per_deck = 2;

  int total_cards() const { return (52 + printed_jokers_per_deck) * num_decks; }
  void validate() const;
};

// Face value ignoring jokers: 2..10 score their rank, A/J/Q/K score 10.
constexpr int face_value(int rank) { return (rank >= 2 && rank <= 10) ? rank : 10; }

int card_value(Card card, const WildcardSpec& wcj);
int hand_value(std::span<const Card> cards, const WildcardSpec& wcj);

// Unshuffled multiset in canonical order.
std::vector<Card> full_deck(const DeckSpec& spec);
std::vector<Card> build_deck(const DeckSpec& spec, std::uint64_t seed);

Card parse_card(std::string_view text);
std::string format_card(Card card);
std::vector<Card> parse_hand(std::string_view text);
std::string format_hand(std::span<const Card> cards);

char rank_char(int rank);
char suit_char(Suit suit);

}  // namespace rummy

#endif  // RUMMY_CARDS_HPP
