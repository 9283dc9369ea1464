#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rummy/mindist.hpp"

namespace rummy::cli {

using json = nlohmann::json;

namespace {

Entrant plain_entrant(Profile p) {
  AgentConfig a;
  a.profile = p;
  return {std::string(to_string(p)), a};
}

std::vector<Card> hand_arg(const std::string& text) {
  try {
    std::vector<Card> hand = parse_hand(text);
    if (hand.size() != 13 && hand.size() != 14) {
      throw UsageError("--hand: expected 13 or 14 cards, got " + std::to_string(hand.size()));
    }
    return hand;
  } catch (const ParseError& e) {
    throw UsageError(std::string("--hand: ") + e.what());
  }
}

WildcardSpec wcj_arg(const std::string& text) {
  try {
    return WildcardSpec(parse_card(text));
  } catch (const std::exception& e) {
    throw UsageError(std::string("--wcj: ") + e.what());
  }
}

std::string cards_at(std::span<const Card> hand, PositionMask mask, int super_jokers = 0) {
  std::vector<Card> cards;
  for (std::size_t i = 0; i < hand.size(); ++i) {
    if (mask & (PositionMask{1} << i)) cards.push_back(hand[i]);
  }
  for (int k = 0; k < super_jokers; ++k) cards.push_back(Card::super_joker());
  return format_hand(cards);
}

void print_declaration(std::ostream& out, std::span<const Card> hand, const Declaration& d) {
  for (const Meld& m : d.melds) {
    out << "  " << to_string(m.type) << ": " << cards_at(hand, m.mask, m.super_jokers) << "\n";
  }
  out << "  deadwood: " << cards_at(hand, d.deadwood_mask) << "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

// --- eval ---

struct EvalArgs {
  std::string hand;
  std::string wcj;
  std::string metric = "both";
  bool declare = false;
  std::optional<std::string> req;
};

void cmd_eval(const EvalArgs& a, std::ostream& out) {
  const std::vector<Card> hand = hand_arg(a.hand);
  const WildcardSpec wcj = wcj_arg(a.wcj);
  SolverConfig cfg;
  if (a.req) cfg.requirements = parse_requirements(*a.req);
  cfg.emit_declaration = a.declare;
  const bool want_score = a.metric != "mindist";
  const bool want_dist = a.metric != "minscore";

  out << "hand: " << format_hand(hand) << "\n";
  out << "wcj: " << format_card(wcj.drawn_card) << "\n";
  if (want_score) {
    std::vector<Card> kept = hand;
    if (hand.size() == 14) {
      const MinScoreDiscard d = best_discard_minscore(hand, wcj, cfg);
      out << "minscore_discard: " << format_card(d.discard) << "\n";
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(d.position));
    }
    const MinScoreResult r = min_score(kept, wcj, cfg);
    out << "minscore: " << r.score << "\n";
    out << "minscore_unclipped: " << r.unclipped << "\n";
    if (a.declare && r.declaration) {
      out << "minscore_declaration:\n";
      print_declaration(out, kept, *r.declaration);
    }
  }
  if (want_dist) {
    std::vector<Card> kept = hand;
    if (hand.size() == 14) {
      const MinDistDiscard d = best_discard_mindist(hand, wcj, cfg);
      out << "mindist_discard: " << format_card(d.discard) << "\n";
      std::vector<Card> equal;
      for (std::size_t i : d.candidates) equal.push_back(hand[i]);
      out << "mindist_candidates: " << format_hand(equal) << "\n";
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(d.position));
    }
    const MinDistResult r = min_dist(kept, wcj, cfg);
    out << "mindist: " << r.dist << (r.exceeds_maxdist ? "+" : "") << "\n";
    if (a.declare) {
      out << "mindist_declaration:\n";
      print_declaration(out, kept, r.declaration_modulo_unobserved);
      out << "  wasted: " << format_hand(r.wasted_cards) << "\n";
    }
  }
  if (hand.size() == 14) {
    const auto ok = declaring_discards(hand, wcj, cfg);
    if (!ok.empty()) out << "declare: discard " << format_card(hand[ok.front()]) << "\n";
  }
}

// --- sample-hands ---

struct SampleArgs {
  int n = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string hist;
};

void cmd_sample_hands(const SampleArgs& a, std::ostream& out) {
  const std::vector<SampleRow> rows = sample_hands(a.n, a.seed);
  const SampleSummary s = summarize_samples(rows);
  if (!a.out.empty()) write_file(a.out, samples_csv(rows, a.seed));
  out << "hands: " << s.n << "\n";
  out << "minscore_clipped_mode: " << s.clipped_mode << "\n";
  out << "mindist_in_2_to_4: " << fixed(s.mindist_2_to_4, 4) << "\n";
  out << "mindist_max: " << s.mindist_max << "\n";
  if (a.hist.empty()) {
    out << "\n" << histogram_csv(s);
  } else {
    write_file(a.hist, histogram_csv(s));
  }
}

// --- tournament ---

struct TournamentArgs {
  std::string config;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> profiles;
  std::string records;
  std::string matrix;
};

void cmd_tournament(const TournamentArgs& a, std::ostream& out, std::ostream& err) {
  std::string records_out, matrix_out;
  TournamentConfig cfg;
  if (!a.config.empty()) {
    std::string text;
    try {
      text = read_file(a.config);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    cfg = parse_tournament_config(text, &records_out, &matrix_out);
  } else {
    for (Profile p : kAllProfiles) cfg.entrants.push_back(plain_entrant(p));
  }
  if (a.profiles) {
    cfg.entrants.clear();
    cfg.all_pairs = true;
    std::stringstream ss(*a.profiles);
    for (std::string name; std::getline(ss, name, ',');) {
      try {
        cfg.entrants.push_back(plain_entrant(parse_profile(name)));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }
  if (a.n) cfg.n_games = *a.n;
  if (a.seed) cfg.base_seed = *a.seed;
  if (a.threads) cfg.threads = *a.threads;
  if (!a.records.empty()) records_out = a.records;
  if (!a.matrix.empty()) matrix_out = a.matrix;
  if (cfg.n_games < 1) throw UsageError("n_games must be positive");
  if (cfg.threads < 1) throw UsageError("threads must be positive");

  const TournamentResult r = run_tournament(cfg, [&](const std::string& x, const std::string& y) {
    err << "playing " << x << " vs " << y << " (" << cfg.n_games << " games)\n";
  });
  if (!records_out.empty()) {
    std::string text;
    for (const MatchRecord& rec : r.records) text += to_jsonl(rec) + "\n";
    write_file(records_out, text);
  }
  if (!matrix_out.empty()) write_file(matrix_out, matrix_csv(r.matrix));
  out << decomposition_table(r.matrix);
}

// --- play / replay ---

struct PlayArgs {
  std::string first = "mindist_opp";
  std::string second = "minscore";
  bool first_drop = false;
  bool second_drop = false;
  std::uint64_t seed = 1;
  std::string trace;
};

AgentConfig agent_arg(const std::string& name, bool drop) {
  try {
    AgentConfig a;
    a.profile = parse_profile(name);
    a.drop_enabled = drop;
    return a;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void cmd_play(const PlayArgs& a, std::ostream& out) {
  const GameResult g = play_game(GameConfig{}, a.seed, agent_arg(a.first, a.first_drop),
                                 agent_arg(a.second, a.second_drop));
  if (!a.trace.empty()) write_file(a.trace, trace_jsonl(g.final_state));
  out << outcome_json(g.outcome) << "\n";
}

void cmd_replay(const std::string& path, std::uint64_t seed, std::ostream& out) {
  std::optional<Outcome> recorded;
  std::vector<PublicEvent> events;
  try {
    events = parse_trace(read_file(path), &recorded);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  const GameState s = replay(GameConfig{}, seed, events);
  if (recorded && s.outcome != recorded) {
    throw std::runtime_error("replayed outcome differs from the recorded one");
  }
  out << "replay ok: " << events.size() << " events\n";
  if (s.outcome) out << outcome_json(*s.outcome) << "\n";
}

void run_assist(const AssistConfig& cfg, std::istream& in, std::ostream& out) {
  AssistSession session(cfg);
  out << session.feed("help");
  std::string line;
  while (!session.finished()) {
    out << session.prompt() << std::flush;
    if (!std::getline(in, line)) break;
    out << session.feed(line);
  }
}

}  // namespace

std::vector<Requirement> parse_requirements(std::string_view text) {
  std::vector<Requirement> reqs;
  if (text.empty() || text == "none") return reqs;
  std::stringstream ss{std::string(text)};
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok == "pure") {
      reqs.push_back(Requirement::PureSequence);
    } else if (tok == "any") {
      reqs.push_back(Requirement::AnySequence);
    } else {
      throw UsageError("unknown requirement '" + tok + "' (valid: pure, any, none)");
    }
  }
  return reqs;
}

std::vector<SampleRow> sample_hands(int n, std::uint64_t seed) {
  if (n < 1) throw UsageError("--n must be positive");
  std::vector<SampleRow> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const GameState g = new_game(GameConfig{}, game_seed(seed, static_cast<std::uint64_t>(i)));
    const MinScoreResult s = min_score(g.hands[0], g.wcj);
    rows.push_back({s.score, s.unclipped, min_dist(g.hands[0], g.wcj).dist});
  }
  return rows;
}

SampleSummary summarize_samples(const std::vector<SampleRow>& rows) {
  SampleSummary s;
  s.n = static_cast<int>(rows.size());
  std::map<int, int> exact;
  int near = 0;
  for (const SampleRow& r : rows) {
    ++exact[r.minscore_clipped];
    ++s.clipped_hist[r.minscore_clipped / kClippedBin * kClippedBin];
    ++s.unclipped_hist[r.minscore_unclipped / kUnclippedBin * kUnclippedBin];
    ++s.mindist_hist[r.mindist];
    if (r.mindist >= 2 && r.mindist <= 4) ++near;
    s.mindist_max = std::max(s.mindist_max, r.mindist);
  }
  int best = -1;
  for (const auto& [v, c] : exact) {
    if (c > best) {
      best = c;
      s.clipped_mode = v;
    }
  }
  s.mindist_2_to_4 = rows.empty() ? 0.0 : static_cast<double>(near) / s.n;
  return s;
}

std::string samples_csv(const std::vector<SampleRow>& rows, std::uint64_t seed) {
  std::string out = "schema_version,index,game_seed,minscore_clipped,minscore_unclipped,mindist\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SampleRow& r = rows[i];
    out += std::to_string(kSampleSchemaVersion) + "," + std::to_string(i) + "," +
           std::to_string(game_seed(seed, i)) + "," + std::to_string(r.minscore_clipped) + "," +
           std::to_string(r.minscore_unclipped) + "," + std::to_string(r.mindist) + "\n";
  }
  return out;
}

std::string histogram_csv(const SampleSummary& s) {
  std::string out = "schema_version,metric,bin_start,bin_width,count\n";
  auto emit = [&](const char* metric, const std::map<int, int>& hist, int width) {
    if (hist.empty()) return;
    for (int b = 0; b <= hist.rbegin()->first; b += width) {
      const auto it = hist.find(b);
      out += std::to_string(kSampleSchemaVersion) + "," + metric + "," + std::to_string(b) + "," +
             std::to_string(width) + "," + std::to_string(it == hist.end() ? 0 : it->second) + "\n";
    }
  };
  emit("minscore_clipped", s.clipped_hist, kClippedBin);
  emit("minscore_unclipped", s.unclipped_hist, kUnclippedBin);
  emit("mindist", s.mindist_hist, 1);
  return out;
}

TournamentConfig parse_tournament_config(std::string_view json_text, std::string* records_out,
                                         std::string* matrix_out) {
  static const std::vector<std::string> kKeys{"n_games",  "base_seed",   "threads",
                                              "deck",     "round_cap",   "requirements",
                                              "entrants", "pairs",       "records_out",
                                              "matrix_out"};
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    for (const auto& [key, _] : j.items()) {
      if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
        throw UsageError("config: unknown key '" + key + "'");
      }
    }
    TournamentConfig cfg;
    cfg.n_games = j.value("n_games", cfg.n_games);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("deck")) {
      cfg.game.deck.num_decks = j["deck"].value("num_decks", 1);
      cfg.game.deck.printed_jokers_per_deck = j["deck"].value("printed_jokers_per_deck", 2);
      cfg.game.deck.validate();
    }
    cfg.game.round_cap = j.value("round_cap", kRoundCap);
    if (j.contains("requirements")) {
      cfg.game.solver.requirements = parse_requirements(j["requirements"].get<std::string>());
    }
    if (!j.contains("entrants")) {
      for (Profile p : kAllProfiles) cfg.entrants.push_back(plain_entrant(p));
    }
    for (const json& e : j.value("entrants", json::array())) {
      AgentConfig a;
      if (e.is_string()) {
        a.profile = parse_profile(e.get<std::string>());
        cfg.entrants.push_back({default_label(a), a});
        continue;
      }
      a.profile = parse_profile(e.at("profile").get<std::string>());
      a.drop_enabled = e.value("drop_enabled", false);
      if (e.contains("drop_threshold")) a.drop_threshold = e["drop_threshold"].get<int>();
      a.seed = e.value("seed", std::uint64_t{0});
      cfg.entrants.push_back({e.value("label", default_label(a)), a});
    }
    if (j.contains("pairs")) {
      cfg.all_pairs = false;
      for (const json& p : j["pairs"]) {
        cfg.pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
      }
      auto known = [&](const std::string& label) {
        return std::any_of(cfg.entrants.begin(), cfg.entrants.end(),
                           [&](const Entrant& e) { return e.label == label; });
      };
      for (const auto& [a, b] : cfg.pairs) {
        if (!known(a) || !known(b)) throw UsageError("config: pair " + a + " vs " + b + " names an unknown entrant");
      }
    }
    if (records_out) *records_out = j.value("records_out", std::string());
    if (matrix_out) *matrix_out = j.value("matrix_out", std::string());
    return cfg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

std::string decomposition_table(const SkillMatrix& m) {
  std::ostringstream out;
  out << std::left << std::setw(22) << "first" << std::setw(22) << "second" << std::right
      << std::setw(6) << "n" << std::setw(8) << "p_hat" << std::setw(8) << "a" << std::setw(8)
      << "p*" << std::setw(16) << "null CI" << std::setw(6) << "sig" << "\n";
  for (const MatrixCell& c : m.cells) {
    out << std::left << std::setw(22) << c.first << std::setw(22) << c.second << std::right
        << std::setw(6) << c.summary.n_games << std::setw(8) << fixed(c.summary.win_rate_first, 3)
        << std::setw(8) << fixed(c.a_first, 3) << std::setw(8) << fixed(c.p_star, 3)
        << std::setw(16)
        << ("(" + fixed(c.test.ci_low, 2) + ", " + fixed(c.test.ci_high, 2) + ")")
        << std::setw(6) << (c.test.significant ? "yes" : "no") << "\n";
  }
  return out.str();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Rummy hand metrics, agents and tournaments", "rummy"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "MinScore / MinDist of a 13- or 14-card hand");
  e->add_option("--hand", eval.hand, "cards, e.g. \"3C 4C 5C ...\"")->required();
  e->add_option("--wcj", eval.wcj, "wildcard indicator card")->required();
  e->add_option("--metric", eval.metric)
      ->check(CLI::IsMember({"minscore", "mindist", "both"}))
      ->capture_default_str();
  e->add_flag("--declare", eval.declare, "print the optimal grouping");
  e->add_option("--req", eval.req, "requirement chain: pure,any | none");

  SampleArgs sample;
  auto* s = app.add_subcommand("sample-hands", "metrics over random dealt hands");
  s->add_option("--n", sample.n)->capture_default_str();
  s->add_option("--seed", sample.seed)->capture_default_str();
  s->add_option("--out", sample.out, "per-hand CSV");
  s->add_option("--hist", sample.hist, "histogram CSV (default: stdout)");

  TournamentArgs tour;
  auto* t = app.add_subcommand("tournament", "ordered-pair series and skill decomposition");
  t->add_option("--config", tour.config, "JSON config file");
  t->add_option("--n", tour.n, "games per ordered pair");
  t->add_option("--seed", tour.seed, "base seed");
  t->add_option("--threads", tour.threads);
  t->add_option("--profiles", tour.profiles, "comma-separated profile names");
  t->add_option("--records", tour.records, "JSON-lines records output");
  t->add_option("--matrix", tour.matrix, "matrix CSV output");

  AssistConfig assist;
  auto* as = app.add_subcommand("assist", "interactive per-turn advice");
  as->add_option("--drop-dist", assist.drop_dist_threshold)->capture_default_str();
  as->add_option("--drop-score", assist.drop_score_threshold)->capture_default_str();
  std::optional<std::string> assist_req;
  as->add_option("--req", assist_req, "requirement chain: pure,any | none");

  PlayArgs play;
  auto* p = app.add_subcommand("play", "play one game between two agents");
  p->add_option("--first", play.first)->capture_default_str();
  p->add_option("--second", play.second)->capture_default_str();
  p->add_flag("--first-drop", play.first_drop);
  p->add_flag("--second-drop", play.second_drop);
  p->add_option("--seed", play.seed)->capture_default_str();
  p->add_option("--trace", play.trace, "write the public trace as JSON lines");

  std::string replay_path;
  std::uint64_t replay_seed = 1;
  auto* r = app.add_subcommand("replay", "rebuild a game from its trace and check the outcome");
  r->add_option("--trace", replay_path)->required();
  r->add_option("--seed", replay_seed)->capture_default_str();

  std::vector<std::string> argv_storage{"rummy"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& ex) {
    app.exit(ex, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& ex) {
    app.exit(ex, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return kExitUsage;
  }

  try {
    if (*e) cmd_eval(eval, out);
    if (*s) cmd_sample_hands(sample, out);
    if (*t) cmd_tournament(tour, out, err);
    if (*as) {
      if (assist_req) assist.solver.requirements = parse_requirements(*assist_req);
      run_assist(assist, in, out);
    }
    if (*p) cmd_play(play, out);
    if (*r) cmd_replay(replay_path, replay_seed, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace rummy::cli
