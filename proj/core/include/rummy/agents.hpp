// Rule-based players behind one interface.

#ifndef RUMMY_AGENTS_HPP
#define RUMMY_AGENTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rummy/cards.hpp"
#include "rummy/game.hpp"
#include "rummy/mindist.hpp"
#include "rummy/minscore.hpp"
#include "rummy/rng.hpp"

namespace rummy {

enum class Profile : std::uint8_t {
  Random,
  DefeatSeeking,
  MinScore,
  MinDist,
  MinDistScore,
  MinDistOpp,
};

inline constexpr Profile kAllProfiles[] = {Profile::Random,  Profile::DefeatSeeking,
                                           Profile::MinScore, Profile::MinDist,
                                           Profile::MinDistScore, Profile::MinDistOpp};

std::string_view to_string(Profile p);
// Throws std::invalid_argument listing the valid names.
Profile parse_profile(std::string_view name);

// MinScore (and DefeatSeeking) compare the hand's MinScore with the threshold,
// the MinDist family its distance. Random drops at random when enabled.
int default_drop_threshold(Profile p);

struct AgentConfig {
  Profile profile = Profile::Random;
  bool drop_enabled = false;
  std::optional<int> drop_threshold;
  std::uint64_t seed = 0;

  int threshold() const { return drop_threshold.value_or(default_drop_threshold(profile)); }
};

struct OpponentModel {
  std::vector<Card> picked_from_pile;
  std::vector<Card> discarded;
};

// Applies one opponent event; only pile picks and discards are remembered.
void update_model(OpponentModel& model, const PublicEvent& event);

// Could the two naturals sit together in a 3-card meld? Jokers never count.
bool meld_compatible(Card a, Card b);

// Non-improving MinDistOpp discard among equal-distance candidates: avoid
// cards that fit the opponent's pile picks, prefer cards that fit their
// discards, then highest value and lowest position.
std::size_t opp_discard_choice(std::span<const Card> hand, std::span<const std::size_t> candidates,
                               const OpponentModel& model, const WildcardSpec& wcj);

class Agent {
 public:
  explicit Agent(const AgentConfig& cfg);

  const AgentConfig& config() const { return cfg_; }
  const OpponentModel& opponent_model() const { return model_; }

  // Always returns an action legal for the observation.
  Action act(const Observation& obs);

 private:
  struct Plan {
    std::vector<Card> key;
    std::size_t position = 0;
    Card discard;
    bool declare = false;
    int dist = 0;
  };

  void sync_model(const Observation& obs);
  Action draw_phase(const Observation& obs);
  Action discard_phase(const Observation& obs);

  Action random_draw(const Observation& obs);
  Action defeat_seeking_draw(const Observation& obs);
  std::optional<Card> declarable_discard(std::span<const Card> hand14, const WildcardSpec& wcj);
  Card defeat_seeking_discard(std::span<const Card> hand14, const WildcardSpec& wcj);

  Plan plan_minscore(std::span<const Card> hand14, const WildcardSpec& wcj);
  Plan plan_mindist(std::span<const Card> hand14, const WildcardSpec& wcj, int dist_before);
  int current_dist(std::span<const Card> hand13, const WildcardSpec& wcj);

  AgentConfig cfg_;
  Rng rng_;
  OpponentModel model_;
  std::size_t seen_events_ = 0;
  std::optional<Plan> pending_;
  std::optional<std::pair<std::vector<Card>, int>> dist_cache_;
  int dist_before_draw_ = 0;
};

}  // namespace rummy

#endif  // RUMMY_AGENTS_HPP
