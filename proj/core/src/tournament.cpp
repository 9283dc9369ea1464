#include "rummy/tournament.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "json.hpp"

namespace rummy {

using nlohmann::json;

std::uint64_t game_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix_seed(base_seed + index);
}

std::string default_label(const AgentConfig& cfg) {
  std::string label(to_string(cfg.profile));
  if (cfg.drop_enabled) label += "+drop";
  return label;
}

std::string to_jsonl(const MatchRecord& r) {
  return json{{"v", kRecordVersion},
              {"first", r.first},
              {"second", r.second},
              {"seed", r.seed},
              {"winner", r.winner},
              {"gain", r.gain},
              {"rounds", r.rounds},
              {"termination", std::string(to_string(r.termination))}}
      .dump();
}

MatchRecord parse_record(std::string_view line) {
  try {
    const json j = json::parse(line);
    if (j.at("v").get<int>() != kRecordVersion) throw ParseError("unsupported record version");
    MatchRecord r;
    r.first = j.at("first").get<std::string>();
    r.second = j.at("second").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.winner = j.at("winner").get<int>();
    r.gain = j.at("gain").get<int>();
    r.rounds = j.at("rounds").get<int>();
    const auto t = parse_termination(j.at("termination").get<std::string>());
    if (!t) throw ParseError("unknown termination");
    r.termination = *t;
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad record: ") + e.what());
  }
}

GameResult play_game(const GameConfig& game, std::uint64_t seed, const AgentConfig& first,
                     const AgentConfig& second, const StepObserver& observer) {
  GameState s = new_game(game, seed);
  std::array<AgentConfig, kPlayers> cfgs{first, second};
  for (int p = 0; p < kPlayers; ++p) cfgs[p].seed ^= mix_seed(seed + static_cast<std::uint64_t>(p) + 1);
  std::array<Agent, kPlayers> agents{Agent(cfgs[0]), Agent(cfgs[1])};
  if (observer) observer(s);
  while (s.phase != Phase::Terminal) {
    const Action a = agents[s.turn].act(observe(s));
    apply_action(s, a);
    if (observer) observer(s);
  }
  return {*s.outcome, std::move(s)};
}

MatchRecord to_record(const Entrant& first, const Entrant& second, std::uint64_t seed,
                      const Outcome& o) {
  MatchRecord r;
  r.first = first.label;
  r.second = second.label;
  r.seed = seed;
  r.winner = o.winner;
  r.gain = o.gain;
  r.rounds = o.rounds;
  r.termination = o.termination;
  return r;
}

std::vector<MatchRecord> run_series(const Entrant& first, const Entrant& second, int n,
                                    std::uint64_t base_seed, int threads,
                                    const GameConfig& game) {
  if (n < 1) throw std::invalid_argument("run_series needs n >= 1");
  std::vector<MatchRecord> out(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      const std::uint64_t seed = game_seed(base_seed, static_cast<std::uint64_t>(i));
      const GameResult g = play_game(game, seed, first.agent, second.agent);
      out[static_cast<std::size_t>(i)] = to_record(first, second, seed, g.outcome);
    }
  };
  const int workers = std::clamp(threads, 1, n);
  if (workers == 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  pool.clear();
  return out;
}

SeriesSummary summarize(const std::vector<MatchRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize needs at least one record");
  SeriesSummary s;
  s.n_games = static_cast<int>(records.size());
  long long wins = 0, gain = 0, rounds = 0;
  std::vector<int> gains;
  gains.reserve(records.size());
  for (const MatchRecord& r : records) {
    wins += r.winner == 0;
    gain += r.gain;
    rounds += r.rounds;
    gains.push_back(r.gain);
  }
  const double n = static_cast<double>(records.size());
  s.win_rate_first = static_cast<double>(wins) / n;
  s.mean_gain = static_cast<double>(gain) / n;
  s.mean_rounds = static_cast<double>(rounds) / n;
  std::sort(gains.begin(), gains.end());
  const std::size_t mid = gains.size() / 2;
  s.median_gain = gains.size() % 2 ? gains[mid] : (gains[mid - 1] + gains[mid]) / 2.0;
  return s;
}

double first_mover_advantage(double self_play_rate) {
  if (self_play_rate < 0 || self_play_rate > 1) throw std::invalid_argument("rate outside [0,1]");
  return self_play_rate - 0.5;
}

double adjusted_skill(double p_hat, double advantage) {
  return std::clamp(p_hat - advantage, 0.0, 1.0);
}

double pooled_advantage(double p_ij, double p_ji) { return (p_ij + p_ji - 1.0) / 2.0; }

ProportionTest proportion_test(double p_hat, int n, double p0, double alpha) {
  if (n < 30) throw std::invalid_argument("proportion_test needs n >= 30");
  if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("alpha outside (0,1)");
  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 1.0 - alpha / 2.0);
  ProportionTest t;
  t.se = std::sqrt(p0 * (1.0 - p0) / n);
  const double half = std::round(z * t.se * 100.0) / 100.0;
  t.ci_low = p0 - half;
  t.ci_high = p0 + half;
  t.significant = p_hat < t.ci_low || p_hat > t.ci_high;
  return t;
}

const MatrixCell& SkillMatrix::at(std::string_view first, std::string_view second) const {
  for (const MatrixCell& c : cells) {
    if (c.first == first && c.second == second) return c;
  }
  throw std::out_of_range("no cell " + std::string(first) + " vs " + std::string(second));
}

SkillMatrix build_matrix(const std::vector<std::string>& labels,
                         const std::vector<MatchRecord>& records) {
  std::map<std::pair<std::string, std::string>, std::vector<MatchRecord>> by_pair;
  for (const MatchRecord& r : records) by_pair[{r.first, r.second}].push_back(r);

  SkillMatrix m;
  m.labels = labels;
  for (const std::string& l : labels) {
    auto it = by_pair.find({l, l});
    m.advantage[l] =
        it == by_pair.end() ? 0.0 : first_mover_advantage(summarize(it->second).win_rate_first);
  }
  for (const std::string& a : labels) {
    for (const std::string& b : labels) {
      auto it = by_pair.find({a, b});
      if (it == by_pair.end()) continue;
      MatrixCell c;
      c.first = a;
      c.second = b;
      c.summary = summarize(it->second);
      c.a_first = m.advantage[a];
      c.p_star = adjusted_skill(c.summary.win_rate_first, c.a_first);
      if (c.summary.n_games >= 30) c.test = proportion_test(c.p_star, c.summary.n_games);
      m.cells.push_back(c);
    }
  }
  return m;
}

std::string matrix_csv(const SkillMatrix& m) {
  std::ostringstream out;
  out << "schema_version,first,second,n,win_rate,mean_gain,median_gain,mean_rounds,a_first,"
         "p_star,se,significant\n";
  out.setf(std::ios::fixed);
  out.precision(4);
  for (const MatrixCell& c : m.cells) {
    out << kCsvSchemaVersion << ',' << c.first << ',' << c.second << ',' << c.summary.n_games
        << ',' << c.summary.win_rate_first << ',' << c.summary.mean_gain << ','
        << c.summary.median_gain << ',' << c.summary.mean_rounds << ',' << c.a_first << ','
        << c.p_star << ',' << c.test.se << ',' << (c.test.significant ? 1 : 0) << '\n';
  }
  return out.str();
}

TournamentResult run_tournament(
    const TournamentConfig& cfg,
    const std::function<void(const std::string&, const std::string&)>& on_cell) {
  std::vector<std::string> labels;
  std::map<std::string, const Entrant*> by_label;
  for (const Entrant& e : cfg.entrants) {
    if (by_label.count(e.label)) throw std::invalid_argument("duplicate entrant '" + e.label + "'");
    by_label[e.label] = &e;
    labels.push_back(e.label);
  }
  std::vector<std::pair<std::string, std::string>> pairs = cfg.pairs;
  if (cfg.all_pairs) {
    pairs.clear();
    for (const std::string& a : labels) {
      for (const std::string& b : labels) pairs.emplace_back(a, b);
    }
  }
  TournamentResult result;
  for (const auto& [a, b] : pairs) {
    if (!by_label.count(a) || !by_label.count(b)) {
      throw std::invalid_argument("pair names an unknown entrant: " + a + " vs " + b);
    }
    if (on_cell) on_cell(a, b);
    auto records = run_series(*by_label[a], *by_label[b], cfg.n_games, cfg.base_seed, cfg.threads,
                              cfg.game);
    result.records.insert(result.records.end(), records.begin(), records.end());
  }
  result.matrix = build_matrix(labels, result.records);
  return result;
}

}  // namespace rummy
