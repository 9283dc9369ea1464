#include "rummy/cards.hpp"

#include <sstream>

namespace rummy {

WildcardSpec::WildcardSpec(Card drawn) : drawn_card(drawn) {
  if (!drawn.is_natural()) {
    throw std::invalid_argument("wildcard indicator must be a natural card");
  }
}

void DeckSpec::validate() const {
  if (num_decks < 1) throw std::invalid_argument("num_decks must be positive");
  if (printed_jokers_per_deck < 0) {
    throw std::invalid_argument("printed_jokers_per_deck must be non-negative");
  }
}

int card_value(Card card, const WildcardSpec& wcj) {
  if (!card.is_natural() || wcj.is_wild(card)) return 0;
  return face_value(card.rank());
}

int hand_value(std::span<const Card> cards, const WildcardSpec& wcj) {
  int total = 0;
  for (Card c : cards) total += card_value(c, wcj);
  return total;
}

std::vector<Card> full_deck(const DeckSpec& spec) {
  spec.validate();
  std::vector<Card> cards;
  cards.reserve(static_cast<std::size_t>(spec.total_cards()));
  for (int d = 0; d < spec.num_decks; ++d) {
    for (int s = 0; s < kNumSuits; ++s) {
      for (int r = kAce; r <= kKing; ++r) {
        cards.push_back(Card::natural(r, static_cast<Suit>(s)));
      }
    }
    for (int j = 0; j < spec.printed_jokers_per_deck; ++j) {
      cards.push_back(Card::printed_joker());
    }
  }
  return cards;
}

std::vector<Card> build_deck(const DeckSpec& spec, std::uint64_t seed) {
  std::vector<Card> cards = full_deck(spec);
  Rng rng(seed);
  rng.shuffle(std::span<Card>(cards));
  return cards;
}

char rank_char(int rank) {
  static constexpr char kRanks[] = "?A23456789TJQK";
  return (rank >= 1 && rank <= 13) ? kRanks[rank] : '?';
}

char suit_char(Suit suit) {
  static constexpr char kSuits[] = "CDHS";
  return kSuits[static_cast<int>(suit)];
}

Card parse_card(std::string_view text) {
  if (text == "JK") return Card::printed_joker();
  if (text.size() != 2) {
    throw ParseError("bad card token '" + std::string(text) + "'");
  }
  int rank = 0;
  switch (text[0]) {
    case 'A': rank = 1; break;
    case 'T': rank = 10; break;
    case 'J': rank = 11; break;
    case 'Q': rank = 12; break;
    case 'K': rank = 13; break;
    default:
      if (text[0] >= '2' && text[0] <= '9') rank = text[0] - '0';
  }
  if (rank == 0) {
    throw ParseError("bad rank '" + std::string(1, text[0]) + "' in card '" +
                     std::string(text) + "'");
  }
  Suit suit;
  switch (text[1]) {
    case 'C': suit = Suit::Clubs; break;
    case 'D': suit = Suit::Diamonds; break;
    case 'H': suit = Suit::Hearts; break;
    case 'S': suit = Suit::Spades; break;
    default:
      throw ParseError("bad suit '" + std::string(1, text[1]) + "' in card '" +
                       std::string(text) + "'");
  }
  return Card::natural(rank, suit);
}

std::string format_card(Card card) {
  switch (card.kind()) {
    case CardKind::PrintedJoker:
      return "JK";
    case CardKind::SuperJoker:
      return "**";
    case CardKind::Natural:
      break;
  }
  return {rank_char(card.rank()), suit_char(card.suit())};
}

std::vector<Card> parse_hand(std::string_view text) {
  std::vector<Card> cards;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) cards.push_back(parse_card(token));
  return cards;
}

std::string format_hand(std::span<const Card> cards) {
  std::string out;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    if (i) out += ' ';
    out += format_card(cards[i]);
  }
  return out;
}

}  // namespace rummy
