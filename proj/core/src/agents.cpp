#include "rummy/agents.hpp"

#include <algorithm>
#include <cstdlib>

#include "rummy/meld.hpp"

namespace rummy {

namespace {

std::vector<Card> sorted_key(std::span<const Card> cards) {
  std::vector<Card> key(cards.begin(), cards.end());
  std::sort(key.begin(), key.end());
  return key;
}

// The just-drawn card goes first so ties resolve towards discarding it.
std::vector<Card> drawn_first(std::span<const Card> hand14) {
  std::vector<Card> out;
  out.reserve(hand14.size());
  out.push_back(hand14.back());
  out.insert(out.end(), hand14.begin(), hand14.end() - 1);
  return out;
}

std::vector<Card> with_front(Card c, std::span<const Card> hand) {
  std::vector<Card> out;
  out.reserve(hand.size() + 1);
  out.push_back(c);
  out.insert(out.end(), hand.begin(), hand.end());
  return out;
}

// Highest value first, then lowest position.
std::size_t highest_value(std::span<const Card> hand, std::span<const std::size_t> positions,
                          const WildcardSpec& wcj) {
  std::size_t best = positions.front();
  for (std::size_t i : positions) {
    if (card_value(hand[i], wcj) > card_value(hand[best], wcj)) best = i;
  }
  return best;
}

bool is_mindist_family(Profile p) {
  return p == Profile::MinDist || p == Profile::MinDistScore || p == Profile::MinDistOpp;
}

}  // namespace

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Random:
      return "random";
    case Profile::DefeatSeeking:
      return "defeat_seeking";
    case Profile::MinScore:
      return "minscore";
    case Profile::MinDist:
      return "mindist";
    case Profile::MinDistScore:
      return "mindist_score";
    case Profile::MinDistOpp:
      return "mindist_opp";
  }
  return "?";
}

Profile parse_profile(std::string_view name) {
  std::string valid;
  for (Profile p : kAllProfiles) {
    if (to_string(p) == name) return p;
    if (!valid.empty()) valid += ", ";
    valid += to_string(p);
  }
  throw std::invalid_argument("unknown profile '" + std::string(name) + "' (valid: " + valid + ")");
}

int default_drop_threshold(Profile p) { return is_mindist_family(p) ? 3 : kDefaultCap; }

void update_model(OpponentModel& model, const PublicEvent& event) {
  if (!event.card) return;
  if (event.kind == EventKind::TookPile) model.picked_from_pile.push_back(*event.card);
  if (event.kind == EventKind::Discarded) model.discarded.push_back(*event.card);
}

bool meld_compatible(Card a, Card b) {
  if (!a.is_natural() || !b.is_natural()) return false;
  if (a.rank() == b.rank()) return a.suit() != b.suit();
  if (a.suit() != b.suit()) return false;
  int best = 99;
  for (int ra : {a.rank(), a.rank() == kAce ? 14 : a.rank()}) {
    for (int rb : {b.rank(), b.rank() == kAce ? 14 : b.rank()}) best = std::min(best, std::abs(ra - rb));
  }
  return best >= 1 && best <= 2;
}

std::size_t opp_discard_choice(std::span<const Card> hand, std::span<const std::size_t> candidates,
                               const OpponentModel& model, const WildcardSpec& wcj) {
  auto fits_any = [&](std::size_t i, const std::vector<Card>& cards) {
    if (wcj.is_joker(hand[i])) return false;
    return std::any_of(cards.begin(), cards.end(), [&](Card c) {
      return !wcj.is_joker(c) && meld_compatible(hand[i], c);
    });
  };
  std::vector<std::size_t> pool;
  for (std::size_t i : candidates) {
    if (!fits_any(i, model.picked_from_pile)) pool.push_back(i);
  }
  if (pool.empty()) pool.assign(candidates.begin(), candidates.end());
  std::vector<std::size_t> preferred;
  for (std::size_t i : pool) {
    if (fits_any(i, model.discarded)) preferred.push_back(i);
  }
  return highest_value(hand, preferred.empty() ? pool : preferred, wcj);
}

Agent::Agent(const AgentConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

Action Agent::act(const Observation& obs) {
  sync_model(obs);
  if (obs.phase == Phase::AwaitDrawOrDrop) return draw_phase(obs);
  if (obs.phase == Phase::AwaitDiscardOrDeclare) return discard_phase(obs);
  throw std::logic_error("agent asked to act in a finished game");
}

void Agent::sync_model(const Observation& obs) {
  for (std::size_t i = seen_events_; i < obs.history.size(); ++i) {
    if (obs.history[i].actor != obs.seat) update_model(model_, obs.history[i]);
  }
  seen_events_ = obs.history.size();
}

int Agent::current_dist(std::span<const Card> hand13, const WildcardSpec& wcj) {
  std::vector<Card> key = sorted_key(hand13);
  if (dist_cache_ && dist_cache_->first == key) return dist_cache_->second;
  const int d = min_dist(hand13, wcj).dist;
  dist_cache_.emplace(std::move(key), d);
  return d;
}

Action Agent::draw_phase(const Observation& obs) {
  pending_.reset();
  const Profile p = cfg_.profile;
  if (p == Profile::Random) return random_draw(obs);

  if (cfg_.drop_enabled && obs.first_turn) {
    const int metric = is_mindist_family(p) ? current_dist(obs.hand, obs.wcj)
                                            : min_score(obs.hand, obs.wcj).score;
    if (metric >= cfg_.threshold()) return Action::drop();
  }
  if (!obs.pile_top) return Action::draw_deck();
  if (!obs.deck_drawable) return Action::draw_pile();
  if (p == Profile::DefeatSeeking) return defeat_seeking_draw(obs);

  const std::vector<Card> h = with_front(*obs.pile_top, obs.hand);
  if (p == Profile::MinScore) {
    Plan plan = plan_minscore(h, obs.wcj);
    if (plan.position == 0) return Action::draw_deck();
    pending_ = std::move(plan);
    return Action::draw_pile();
  }
  dist_before_draw_ = current_dist(obs.hand, obs.wcj);
  Plan plan = plan_mindist(h, obs.wcj, dist_before_draw_);
  if (plan.dist >= dist_before_draw_) return Action::draw_deck();
  pending_ = std::move(plan);
  return Action::draw_pile();
}

Action Agent::discard_phase(const Observation& obs) {
  const std::vector<Card> h = drawn_first(obs.hand);
  const Profile p = cfg_.profile;
  Plan plan;
  if (pending_ && pending_->key == sorted_key(h)) {
    plan = *pending_;
  } else if (p == Profile::Random || p == Profile::DefeatSeeking) {
    if (auto c = declarable_discard(h, obs.wcj)) return Action::declare(*c);
    if (p == Profile::Random) return Action::discard(h[rng_.below(h.size())]);
    return Action::discard(defeat_seeking_discard(h, obs.wcj));
  } else if (p == Profile::MinScore) {
    plan = plan_minscore(h, obs.wcj);
  } else {
    plan = plan_mindist(h, obs.wcj, dist_before_draw_);
  }
  pending_.reset();

  if (is_mindist_family(p)) {
    std::vector<Card> kept = h;
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(plan.position));
    dist_cache_.emplace(sorted_key(kept), plan.dist);
  }
  return plan.declare ? Action::declare(plan.discard) : Action::discard(plan.discard);
}

Action Agent::random_draw(const Observation& obs) {
  std::vector<Action> options;
  if (obs.deck_drawable) options.push_back(Action::draw_deck());
  if (obs.pile_top) options.push_back(Action::draw_pile());
  if (cfg_.drop_enabled && obs.first_turn) options.push_back(Action::drop());
  return options[rng_.below(options.size())];
}

// Takes the pile card only when it does not itself complete a meld, and only
// when some meld exists to be broken.
Action Agent::defeat_seeking_draw(const Observation& obs) {
  const std::vector<Card> h = with_front(*obs.pile_top, obs.hand);
  const std::vector<MeldMask> melds = enumerate_melds(h, obs.wcj, false, MeldLimits{});
  if (melds.empty()) return Action::draw_deck();
  const bool pile_melds =
      std::any_of(melds.begin(), melds.end(), [](const MeldMask& m) { return m.mask & 1u; });
  return pile_melds ? Action::draw_deck() : Action::draw_pile();
}

Card Agent::defeat_seeking_discard(std::span<const Card> hand14, const WildcardSpec& wcj) {
  const std::vector<MeldMask> melds = enumerate_melds(hand14, wcj, false, MeldLimits{});
  const PositionMask pool = melds.empty()
                                ? static_cast<PositionMask>((1u << hand14.size()) - 1)
                                : melds.front().mask;
  std::size_t best = hand14.size();
  for (std::size_t i = 0; i < hand14.size(); ++i) {
    if (!(pool & (PositionMask{1} << i))) continue;
    if (best == hand14.size() || card_value(hand14[i], wcj) < card_value(hand14[best], wcj)) {
      best = i;
    }
  }
  return hand14[best];
}

std::optional<Card> Agent::declarable_discard(std::span<const Card> hand14,
                                              const WildcardSpec& wcj) {
  const std::vector<std::size_t> ok = declaring_discards(hand14, wcj);
  if (ok.empty()) return std::nullopt;
  return hand14[ok.front()];
}

Agent::Plan Agent::plan_minscore(std::span<const Card> hand14, const WildcardSpec& wcj) {
  const MinScoreDiscard r = best_discard_minscore(hand14, wcj, SolverConfig{}, 0);
  Plan plan;
  plan.key = sorted_key(hand14);
  plan.position = r.position;
  plan.discard = r.discard;
  if (r.score == 0) {
    std::vector<Card> kept(hand14.begin(), hand14.end());
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(r.position));
    plan.declare = is_declarable(kept, wcj);
  }
  return plan;
}

Agent::Plan Agent::plan_mindist(std::span<const Card> hand14, const WildcardSpec& wcj,
                                int dist_before) {
  const MinDistDiscard r = best_discard_mindist(hand14, wcj);
  std::size_t pos = r.position;
  if (cfg_.profile == Profile::MinDistScore && r.candidates.size() > 1) {
    MinScoreTable table(hand14, wcj, SolverConfig{});
    auto score = [&](std::size_t i) {
      return table.unclipped(table.full_mask() ^ (PositionMask{1} << i));
    };
    for (std::size_t i : r.candidates) {
      const bool better = score(i) < score(pos) ||
                          (score(i) == score(pos) && card_value(hand14[i], wcj) >
                                                          card_value(hand14[pos], wcj)) ||
                          (score(i) == score(pos) &&
                           card_value(hand14[i], wcj) == card_value(hand14[pos], wcj) && i < pos);
      if (better) pos = i;
    }
  } else if (cfg_.profile == Profile::MinDistOpp && r.dist >= dist_before) {
    pos = opp_discard_choice(hand14, r.candidates, model_, wcj);
  }
  Plan plan;
  plan.key = sorted_key(hand14);
  plan.position = pos;
  plan.discard = hand14[pos];
  plan.declare = r.dist == 0;
  plan.dist = r.dist;
  return plan;
}

}  // namespace rummy
