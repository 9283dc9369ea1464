#include <algorithm>
#include <sstream>

#include "cli.hpp"
#include "rummy/mindist.hpp"

namespace rummy::cli {

namespace {

std::pair<std::string, std::string> split_command(std::string_view line) {
  const auto begin = line.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  line.remove_prefix(begin);
  const auto space = line.find_first_of(" \t");
  std::string word(line.substr(0, space));
  std::string rest = space == std::string_view::npos ? "" : std::string(line.substr(space + 1));
  std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::tolower(c); });
  return {word, rest};
}

std::vector<Card> thirteen(std::string_view text) {
  std::vector<Card> hand = parse_hand(text);
  if (hand.size() != kHandSize) {
    throw UsageError("expected 13 cards, got " + std::to_string(hand.size()));
  }
  return hand;
}

}  // namespace

AssistSession::AssistSession(AssistConfig cfg) : cfg_(std::move(cfg)) {}

std::string AssistSession::prompt() const {
  if (hand_.empty()) return "hand> ";
  if (!wcj_) return "wcj> ";
  return hand_.size() == kHandSize ? "draw/pile> " : "discard> ";
}

std::string AssistSession::help() const {
  return "commands:\n"
         "  hand <13 cards>   start over with a new dealt hand\n"
         "  wcj <card>        set the wildcard indicator\n"
         "  pile <card>       should I take this open card?\n"
         "  draw <card>       add the card you drew\n"
         "  discard <card>    remove a card after drawing\n"
         "  show | help | quit\n";
}

std::string AssistSession::feed(std::string_view line) {
  auto [word, rest] = split_command(line);
  if (word.empty()) return "";
  if (word == "quit" || word == "exit") {
    finished_ = true;
    return "bye\n";
  }
  if (word == "help") return help();
  try {
    if (hand_.empty() || word == "hand") {
      std::vector<Card> hand = thirteen(word == "hand" ? std::string_view(rest) : line);
      hand_ = std::move(hand);
      wcj_.reset();
      first_turn_ = true;
      return "ok, 13 cards\n";
    }
    if (!wcj_ || word == "wcj") {
      wcj_ = WildcardSpec(parse_card(word == "wcj" ? rest : std::string(line)));
      return readout();
    }
    if (word == "show") return readout();
    if (word == "pile" || word == "draw") {
      if (hand_.size() != kHandSize) throw UsageError("discard first, you hold 14 cards");
      const Card c = parse_card(rest);
      if (word == "pile") return advise_pile(c);
      hand_.push_back(c);
      first_turn_ = false;
      return readout();
    }
    if (word == "discard") {
      if (hand_.size() == kHandSize) throw UsageError("draw first, you hold 13 cards");
      const Card c = parse_card(rest);
      const auto it = std::find(hand_.begin(), hand_.end(), c);
      if (it == hand_.end()) throw UsageError(format_card(c) + " is not in your hand");
      hand_.erase(it);
      return readout();
    }
    throw UsageError("unknown command '" + word + "' (try help)");
  } catch (const std::exception& e) {
    return std::string("error: ") + e.what() + ", try again\n";
  }
}

std::string AssistSession::readout() const {
  std::ostringstream out;
  const WildcardSpec& w = *wcj_;
  const SolverConfig& cfg = cfg_.solver;
  out << "hand: " << format_hand(hand_) << "  (wcj " << format_card(w.drawn_card) << ")\n";
  if (hand_.size() == kHandSize) {
    const MinScoreResult s = min_score(hand_, w, cfg);
    const int d = min_dist(hand_, w, cfg).dist;
    out << "minscore " << s.score << ", mindist " << d << "\n";
    if (is_declarable(hand_, w, cfg)) {
      out << "advice: declare now (draw, then declare discarding the drawn card)\n";
    } else if (first_turn_ && d >= cfg_.drop_dist_threshold) {
      out << "advice: drop (mindist " << d << " >= " << cfg_.drop_dist_threshold << ")\n";
    } else if (first_turn_ && s.score >= cfg_.drop_score_threshold) {
      out << "advice: drop (minscore " << s.score << " >= " << cfg_.drop_score_threshold << ")\n";
    } else {
      out << "advice: play on\n";
    }
    return out.str();
  }
  const MinScoreDiscard ms = best_discard_minscore(hand_, w, cfg);
  const MinDistDiscard md = best_discard_mindist(hand_, w, cfg);
  out << "minscore: discard " << format_card(ms.discard) << " -> " << ms.score << "\n";
  out << "mindist: discard " << format_card(md.discard) << " -> " << md.dist << "\n";
  const auto ok = declaring_discards(hand_, w, cfg);
  if (!ok.empty()) {
    out << "advice: declare now, discarding " << format_card(hand_[ok.front()]) << "\n";
  } else {
    out << "advice: discard " << format_card(md.discard) << "\n";
  }
  return out.str();
}

// Same rules the MinDist and MinScore agents use at the draw.
std::string AssistSession::advise_pile(Card c) const {
  const WildcardSpec& w = *wcj_;
  const SolverConfig& cfg = cfg_.solver;
  std::vector<Card> with(hand_);
  with.insert(with.begin(), c);
  const int before = min_dist(hand_, w, cfg).dist;
  const MinDistDiscard md = best_discard_mindist(with, w, cfg);
  const MinScoreDiscard ms = best_discard_minscore(with, w, cfg, 0);
  std::ostringstream out;
  out << "mindist " << before << " -> " << md.dist << " with " << format_card(c) << "\n";
  out << "minscore " << min_score(hand_, w, cfg).score << " -> " << ms.score << " with "
      << format_card(c) << "\n";
  if (md.dist < before) {
    out << "advice: take " << format_card(c) << "\n";
  } else {
    out << "advice: draw from the deck\n";
  }
  return out.str();
}

}  // namespace rummy::cli
