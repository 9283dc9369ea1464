#include "rummy/mindist.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rummy {

namespace {

constexpr int kMeldTypes = 4;

// Visits every subset of the low `n` bits with exactly `k` bits set, in
// increasing numeric order. Stops early when `fn` returns true.
template <class Fn>
bool for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return false;
  if (k == 0) return fn(PositionMask{0});
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t m = (std::uint64_t{1} << k) - 1;
  while (m < limit) {
    if (fn(static_cast<PositionMask>(m))) return true;
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return false;
}

std::vector<Card> cards_of(std::span<const Card> hand, PositionMask mask) {
  std::vector<Card> out;
  for (std::size_t i = 0; i < hand.size(); ++i) {
    if (mask & (PositionMask{1} << i)) out.push_back(hand[i]);
  }
  return out;
}

// Highest value first; equal values keep position order.
std::vector<Card> ranked_by_value(std::span<const Card> hand, PositionMask mask,
                                  const WildcardSpec& wcj) {
  std::vector<Card> out = cards_of(hand, mask);
  std::stable_sort(out.begin(), out.end(), [&](Card a, Card b) {
    return card_value(a, wcj) > card_value(b, wcj);
  });
  return out;
}

}  // namespace

CompletionSolver::CompletionSolver(std::span<const Card> hand, const WildcardSpec& wcj,
                                   const SolverConfig& cfg)
    : n_(static_cast<int>(hand.size())) {
  cfg.validate();
  if (n_ > kMaxHandPositions) throw std::invalid_argument("hand too wide for CompletionSolver");
  full_ = n_ == 0 ? 0 : static_cast<PositionMask>((std::uint64_t{1} << n_) - 1);

  // Once every card is melded the order of melds is free, so the chain only
  // needs counts: how many pure-sequence slots and any-sequence slots are
  // filled. A pure sequence fills a pure slot first.
  for (Requirement r : cfg.requirements) {
    (r == Requirement::PureSequence ? pure_needed_ : any_needed_)++;
  }
  num_states_ = (pure_needed_ + 1) * (any_needed_ + 1);
  advance_.assign(static_cast<std::size_t>(num_states_), std::vector<int>(kMeldTypes));
  for (int s = 0; s < num_states_; ++s) {
    const int p = s / (any_needed_ + 1);
    const int a = s % (any_needed_ + 1);
    for (int t = 0; t < kMeldTypes; ++t) {
      int np = p, na = a;
      const auto type = static_cast<MeldType>(t);
      if (type == MeldType::PureSequence) {
        if (np < pure_needed_) {
          ++np;
        } else if (na < any_needed_) {
          ++na;
        }
      } else if (type == MeldType::ImpureSequence && na < any_needed_) {
        ++na;
      }
      advance_[s][t] = np * (any_needed_ + 1) + na;
    }
  }

  patterns_by_low_.assign(static_cast<std::size_t>(n_), {});
  for (const MeldPattern& p : enumerate_patterns(hand, wcj, cfg.limits())) {
    patterns_by_low_[std::countr_zero(p.mask)].push_back(p);
  }
  min_len_ = cfg.limits().min_len;
  max_len_ = cfg.limits().max_len;
  memo_.assign(static_cast<std::size_t>(num_states_) << n_, 0);
}

int CompletionSolver::remaining_requirements(int state) const {
  const int p = state / (any_needed_ + 1);
  const int a = state % (any_needed_ + 1);
  return (pure_needed_ - p) + (any_needed_ - a);
}

// Super jokers alone: each all-placeholder meld counts as a pure sequence.
CompletionSolver::JokerSet CompletionSolver::base(int state) const {
  const int r = remaining_requirements(state);
  JokerSet bits = r == 0 ? 1 : 0;
  for (int j = min_len_ * std::max(r, 1); j <= 13; ++j) bits |= JokerSet{1} << j;
  return bits;
}

CompletionSolver::JokerSet CompletionSolver::reachable(PositionMask mask, int state) {
  const std::size_t slot = (static_cast<std::size_t>(state) << n_) | mask;
  if (memo_[slot] & kDone) return memo_[slot] & kCountMask;
  JokerSet bits = 0;
  if (mask == 0) {
    bits = base(state);
  } else {
    for (const MeldPattern& p : patterns_by_low_[std::countr_zero(mask)]) {
      if ((p.mask & ~mask) != 0) continue;
      const JokerSet rest =
          reachable(mask ^ p.mask, advance_[state][static_cast<int>(p.type)]);
      bits |= static_cast<JokerSet>(rest << p.super_jokers);
    }
    bits &= kCountMask;
  }
  memo_[slot] = bits | kDone;
  return bits;
}

bool CompletionSolver::completes(PositionMask originals, int super_jokers) {
  if (super_jokers < 0 || super_jokers > 13) return false;
  return (reachable(originals, 0) >> super_jokers) & 1;
}

std::vector<Meld> CompletionSolver::joker_only_melds(int state, int super_jokers) const {
  std::vector<Meld> out;
  if (super_jokers == 0) return out;
  const int r = remaining_requirements(state);
  const int count = std::max(r, (super_jokers + max_len_ - 1) / max_len_);
  std::vector<int> sizes(static_cast<std::size_t>(count), min_len_);
  int extra = super_jokers - count * min_len_;
  for (int& s : sizes) {
    const int add = std::min(extra, max_len_ - min_len_);
    s += add;
    extra -= add;
  }
  for (int s : sizes) out.push_back({0, s, MeldType::PureSequence});
  return out;
}

std::vector<Meld> CompletionSolver::witness(PositionMask originals, int super_jokers) {
  if (!completes(originals, super_jokers)) {
    throw std::logic_error("witness requested for an infeasible completion");
  }
  std::vector<Meld> out;
  PositionMask mask = originals;
  int state = 0;
  int jokers = super_jokers;
  while (mask) {
    bool found = false;
    for (const MeldPattern& p : patterns_by_low_[std::countr_zero(mask)]) {
      if ((p.mask & ~mask) != 0 || p.super_jokers > jokers) continue;
      const int next = advance_[state][static_cast<int>(p.type)];
      if ((reachable(mask ^ p.mask, next) >> (jokers - p.super_jokers)) & 1) {
        out.push_back({p.mask, p.super_jokers, p.type});
        mask ^= p.mask;
        jokers -= p.super_jokers;
        state = next;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("completion table inconsistent");
  }
  for (const Meld& m : joker_only_melds(state, jokers)) out.push_back(m);
  return out;
}

bool is_declarable(std::span<const Card> hand, const WildcardSpec& wcj, const SolverConfig& cfg) {
  CompletionSolver solver(hand, wcj, cfg);
  return solver.completes(solver.full_mask(), 0);
}

std::vector<std::size_t> declaring_discards(std::span<const Card> hand, const WildcardSpec& wcj,
                                            const SolverConfig& cfg) {
  CompletionSolver solver(hand, wcj, cfg);
  std::vector<std::size_t> out;
  for (int i = 0; i < solver.size(); ++i) {
    if (solver.completes(solver.full_mask() ^ (PositionMask{1} << i), 0)) {
      out.push_back(static_cast<std::size_t>(i));
    }
  }
  return out;
}

MinDistResult min_dist(std::span<const Card> hand, const WildcardSpec& wcj,
                       const SolverConfig& cfg, int maxdist) {
  require_hand(hand, kHandSize, "min_dist");
  CompletionSolver solver(hand, wcj, cfg);
  MinDistResult result;
  for (int k = 0; k <= maxdist && k <= kHandSize; ++k) {
    PositionMask kept = 0;
    const bool found = for_each_subset(kHandSize, kHandSize - k, [&](PositionMask o) {
      if (!solver.completes(o, k)) return false;
      kept = o;
      return true;
    });
    if (!found) continue;
    result.dist = k;
    Declaration& d = result.declaration_modulo_unobserved;
    d.melds = solver.witness(kept, k);
    d.deadwood_mask = solver.full_mask() ^ kept;
    d.score = 0;
    result.wasted_cards = ranked_by_value(hand, d.deadwood_mask, wcj);
    return result;
  }
  result.dist = maxdist + 1;
  result.exceeds_maxdist = true;
  return result;
}

MinDistDiscard best_discard_mindist(std::span<const Card> hand, const WildcardSpec& wcj,
                                    const SolverConfig& cfg, int maxdist) {
  require_hand(hand, kHandSize + 1, "best_discard_mindist");
  CompletionSolver solver(hand, wcj, cfg);
  const int n = solver.size();
  MinDistDiscard out;

  std::vector<PositionMask> feasible;
  int dist = -1;
  for (int k = 0; k <= maxdist && k <= kHandSize; ++k) {
    for_each_subset(n, kHandSize - k, [&](PositionMask o) {
      if (solver.completes(o, k)) feasible.push_back(o);
      return false;
    });
    if (!feasible.empty()) {
      dist = k;
      break;
    }
  }

  auto pick_highest = [&](PositionMask allowed) {
    std::size_t best = 0;
    int best_value = -1;
    for (int i = 0; i < n; ++i) {
      if (!(allowed & (PositionMask{1} << i))) continue;
      const int v = card_value(hand[i], wcj);
      if (v > best_value) {
        best_value = v;
        best = static_cast<std::size_t>(i);
      }
    }
    return best;
  };

  if (dist < 0) {
    out.exceeds_maxdist = true;
    out.dist = maxdist + 1;
    out.position = pick_highest(solver.full_mask());
    out.discard = hand[out.position];
    for (int i = 0; i < n; ++i) out.candidates.push_back(static_cast<std::size_t>(i));
    return out;
  }

  PositionMask optimal = 0;
  for (PositionMask o : feasible) optimal |= solver.full_mask() ^ o;
  for (int i = 0; i < n; ++i) {
    if (optimal & (PositionMask{1} << i)) out.candidates.push_back(static_cast<std::size_t>(i));
  }
  out.dist = dist;
  out.position = pick_highest(optimal);
  out.discard = hand[out.position];
  const PositionMask gone = PositionMask{1} << out.position;
  for (PositionMask o : feasible) {
    if (!(o & gone)) {
      out.wasted_ranked = ranked_by_value(hand, solver.full_mask() ^ o ^ gone, wcj);
      break;
    }
  }
  return out;
}

}  // namespace rummy
