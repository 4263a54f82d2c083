#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "morasslab/efgame.hpp"
#include "morasslab/forcing.hpp"
#include "morasslab/json_io.hpp"
#include "morasslab/persistency.hpp"
#include "morasslab/sampling.hpp"
#include "morasslab/structures.hpp"

namespace morasslab::cli {

namespace {

using io::Json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string condition_path;
  std::string tasks_path;
  std::string output_path;
  std::string trace_path;
  std::string script_path;
  std::string adversary = "random";
  std::string exists = "morass";
  std::string base_u = "0,1";
  std::string layer;
  std::string input_path;
  std::uint64_t seed = 1;
  std::size_t rounds = 0;
  std::size_t move_cap = 4;
  std::size_t games = 1;
  std::size_t jobs = 1;
  std::size_t budget = 16;
  std::size_t pool = 6;
  std::size_t random_tasks = 0;
  std::optional<LevelIndex> value_cap;
  BlockIndex seed_block = 0;
  bool json = false;
};

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << j.dump(2) << "\n";
}

std::vector<Ordinal> parse_ordinal_list(const std::string& text) {
  std::vector<Ordinal> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(Ordinal::parse(item));
  }
  return out;
}

/// FRAG0: the seed extended once into block 1.
Condition default_condition() { return build_fragment(seed_condition(0), {{1, Ordinal{}}}, 1); }

Condition load_condition(const Options& o) {
  if (o.condition_path.empty()) return default_condition();
  return io::condition_from_json(read_json(o.condition_path));
}

template <typename Result, typename Fn>
std::vector<Result> run_batch(std::size_t games, std::size_t jobs, Fn fn) {
  std::vector<Result> results(games);
  jobs = std::max<std::size_t>(1, std::min(jobs, games));
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t g = w; g < games; g += jobs) results[g] = fn(g);
    });
  }
  for (auto& t : workers) t.join();
  return results;
}

// --- commands ----------------------------------------------------------------

int cmd_build(const Options& o, std::ostream& out) {
  std::vector<BlockPoint> tasks;
  if (!o.tasks_path.empty()) tasks = io::tasks_from_json(read_json(o.tasks_path));
  if (o.random_tasks > 0) {
    Rng rng(o.seed);
    TaskShape shape;
    shape.max_tasks = static_cast<std::uint32_t>(o.random_tasks);
    auto extra = random_tasks(shape, rng);
    tasks.insert(tasks.end(), extra.begin(), extra.end());
  }
  const Condition p = build_fragment(seed_condition(o.seed_block), tasks, o.budget);
  const ValidationReport report = validate_condition(p);
  if (!report.ok()) throw std::logic_error("built condition failed validation: " + report.summary());
  write_json(io::to_json(p), o.output_path, out);
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Json j = read_json(o.input_path);
  const ValidationReport report =
      j.contains("frag") ? validate_condition(io::condition_from_json(j)) : validate_fragment(io::fragment_from_json(j));
  if (o.json) {
    out << io::to_json(report).dump(2) << "\n";
  } else {
    out << report.summary() << "\n";
    for (const auto& n : report.notes) out << "note: " << n << "\n";
  }
  return report.ok() ? kOk : kViolation;
}

struct PersistencyResult {
  PersistencyTranscript transcript;
  bool claim_ok = true;
};

int cmd_play_persistency(const Options& o, std::istream& in, std::ostream& out) {
  const Condition p = load_condition(o);
  const MorassFragment& frag = p.frag;
  const std::size_t rounds = o.rounds == 0 ? 64 : o.rounds;
  std::vector<Ordinal> script;
  if (o.adversary == "script") {
    for (const auto& x : read_json(o.script_path)) script.push_back(io::ordinal_from_json(x));
  } else if (o.adversary != "random" && o.adversary != "interactive") {
    throw InputError("unknown adversary " + o.adversary);
  }
  if (o.exists != "morass" && o.exists != "greedy" && o.exists != "empty") {
    throw InputError("unknown exists player " + o.exists);
  }
  const bool interactive = o.adversary == "interactive";
  const std::size_t games = interactive ? 1 : o.games;

  auto play = [&](std::size_t g) {
    std::unique_ptr<PersistencyChallenger> forall;
    if (interactive) {
      forall = std::make_unique<InteractiveChallenger>(frag, in, out);
    } else if (o.adversary == "script") {
      forall = std::make_unique<ScriptedChallenger>(script);
    } else {
      forall = std::make_unique<RandomChallenger>(frag, o.seed + g);
    }
    PersistencyResult r;
    if (o.exists == "morass") {
      MorassStrategy exists(frag);
      r.transcript = play_persistency(frag, *forall, exists, rounds);
      r.claim_ok = claim_check(exists.cache(), exists.history());
    } else if (o.exists == "greedy") {
      GreedyStrategy exists(family_sampler(frag, o.value_cap.value_or(frag.height() + 2), o.seed + g));
      r.transcript = play_persistency(frag, *forall, exists, rounds);
    } else {
      EmptyResponder exists;
      r.transcript = play_persistency(frag, *forall, exists, rounds);
    }
    return r;
  };
  const auto results = run_batch<PersistencyResult>(games, o.jobs, play);

  bool all_won = true;
  Json traces = Json::array();
  for (std::size_t g = 0; g < games; ++g) {
    const auto& t = results[g].transcript;
    const bool won = t.outcome == GameOutcome::kExistsWins && results[g].claim_ok;
    all_won = all_won && won;
    if (games > 1) out << "game=" << g << " ";
    out << "outcome=" << io::to_string(t.outcome) << " rounds=" << t.rounds.size();
    if (!results[g].claim_ok) out << " claim=violated";
    if (t.outcome == GameOutcome::kStuck) out << " stuck_at=" << t.stuck_round << " reason=\"" << t.diagnostic << "\"";
    out << "\n";
    if (interactive && !t.rounds.empty()) out << "final position " << to_string(t.rounds.back().response) << "\n";
    traces.push_back(io::to_json(t));
  }
  if (games > 1) {
    out << "games=" << games << " wins="
        << std::count_if(results.begin(), results.end(),
                         [](const auto& r) { return r.transcript.outcome == GameOutcome::kExistsWins; })
        << "\n";
  }
  if (!o.trace_path.empty()) write_json(games == 1 ? traces[0] : traces, o.trace_path, out);
  return all_won ? kOk : kViolation;
}

struct EFResult {
  EFTranscript transcript;
  bool coherent = true;
};

int cmd_play_ef(const Options& o, std::istream& in, std::ostream& out) {
  const Condition p = load_condition(o);
  const MorassFragment& frag = p.frag;
  const auto base = make_layer_key(parse_ordinal_list(o.base_u));
  const LevelIndex cap = o.value_cap.value_or(pool_value_cap(frag, base.size(), o.pool));
  const ABPair ab = make_AB(frag, base, cap);
  const LayeredUniverse& c = *ab.a.universe;
  const EFConfig config{o.rounds == 0 ? 4 : o.rounds, o.move_cap};

  std::vector<EFChallenge> script;
  if (o.adversary == "script") {
    for (const auto& x : read_json(o.script_path)) script.push_back(io::challenge_from_json(x));
  } else if (o.adversary != "random" && o.adversary != "interactive") {
    throw InputError("unknown adversary " + o.adversary);
  }
  const bool interactive = o.adversary == "interactive";
  const std::size_t games = interactive ? 1 : o.games;

  auto play = [&](std::size_t g) {
    Rng rng(o.seed + g);
    std::vector<Ordinal> pool = random_pool(frag, o.pool, rng);
    std::unique_ptr<EFChallenger> forall;
    if (interactive) {
      forall = std::make_unique<InteractiveEFChallenger>(ab, pool, config.move_cap, in, out);
    } else if (o.adversary == "script") {
      forall = std::make_unique<ScriptedEFChallenger>(script);
    } else {
      forall = std::make_unique<RandomEFChallenger>(ab, pool, config.move_cap, o.seed + g);
    }
    MorassEFStrategy exists(ab);
    EFResult r;
    r.transcript = play_ef(ab, *forall, exists, config);
    if (r.transcript.outcome == GameOutcome::kStuck && !exists.failure().empty()) {
      r.transcript.diagnostic += " (" + exists.failure() + ")";
    }
    for (const auto& round : r.transcript.rounds) {
      const auto cls = classify_partial_iso(round.response, ab.a, ab.b);
      r.coherent = r.coherent && cls.coherent && cls.n_psi == std::optional<std::size_t>(1);
    }
    return r;
  };
  const auto results = run_batch<EFResult>(games, o.jobs, play);

  bool all_won = true;
  Json traces = Json::array();
  for (std::size_t g = 0; g < games; ++g) {
    const auto& t = results[g].transcript;
    all_won = all_won && t.outcome == GameOutcome::kExistsWins && results[g].coherent;
    if (games > 1) out << "game=" << g << " ";
    out << "outcome=" << io::to_string(t.outcome) << " rounds=" << t.rounds.size()
        << " shift_family=" << (results[g].coherent ? "coherent" : "broken");
    if (t.outcome == GameOutcome::kStuck) out << " lost_at=" << t.lost_round << " reason=\"" << t.diagnostic << "\"";
    out << "\n";
    if (interactive && !t.rounds.empty()) {
      out << "final response:\n";
      for (const auto& [x, y] : t.rounds.back().response) out << "  " << to_string(x) << " -> " << to_string(y) << "\n";
    }
    Json trace = io::to_json(t, c);
    trace["f_star"] = io::to_json(ab.f_star);
    traces.push_back(std::move(trace));
  }
  if (games > 1) {
    out << "games=" << games << " wins="
        << std::count_if(results.begin(), results.end(),
                         [](const auto& r) { return r.transcript.outcome == GameOutcome::kExistsWins; })
        << "\n";
  }
  if (!o.trace_path.empty()) write_json(games == 1 ? traces[0] : traces, o.trace_path, out);
  return all_won ? kOk : kViolation;
}

int cmd_show_layer(const Options& o, std::ostream& out) {
  const Condition p = load_condition(o);
  const LayerKey u = make_layer_key(parse_ordinal_list(o.layer));
  const LayeredUniverse c(p.frag, o.value_cap.value_or(default_value_cap(p.frag, u.size())));
  write_json(io::to_json(*c.layer(u)), o.output_path, out);
  return kOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  const Condition p = load_condition(o);
  Json families = Json::array();
  for (LevelIndex a = 0; a < p.frag.height(); ++a) {
    Json maps = Json::array();
    for (const auto& f : p.frag.successor_family(a)) maps.push_back(io::to_json(f));
    families.push_back(std::move(maps));
  }
  Json offsets = Json::array();
  const BlockEmbedding i = p.embedding();
  for (const auto& [beta, rho] : p.a.blocks()) {
    offsets.push_back({{"block", beta}, {"offset", io::to_json(*i.block_offset(beta))}, {"rho", io::to_json(rho)}});
  }
  const ValidationReport report = validate_condition(p);
  write_json({{"condition", io::to_json(p)},
              {"validation", io::to_json(report)},
              {"successor_families", families},
              {"embedding", offsets}},
             o.output_path, out);
  return report.ok() ? kOk : kViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite morass fragments, persistency games and Ehrenfeucht-Fraisse games", "morasslab"};
  app.require_subcommand(1);
  Options o;

  auto add_condition = [&](CLI::App* sub) {
    sub->add_option("--condition", o.condition_path, "Condition JSON (default: the seed extended into block 1)");
  };
  auto add_game = [&](CLI::App* sub) {
    add_condition(sub);
    sub->add_option("--rounds", o.rounds, "Number of rounds");
    sub->add_option("--adversary", o.adversary, "random | script | interactive");
    sub->add_option("--script", o.script_path, "JSON file with scripted challenges");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--trace", o.trace_path, "Write the transcript JSON here");
    sub->add_option("--games", o.games, "Number of independent games")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", o.jobs, "Games played in parallel")->check(CLI::PositiveNumber);
    sub->add_option("--value-cap", o.value_cap, "Largest function value in layer catalogs");
  };

  auto* build = app.add_subcommand("build", "Build a condition covering a list of targets");
  build->add_option("--tasks", o.tasks_path, "JSON list of {block, xi} targets");
  build->add_option("--random-tasks", o.random_tasks, "Append up to N random targets");
  build->add_option("--seed", o.seed, "Random seed for --random-tasks");
  build->add_option("--budget", o.budget, "Extension steps allowed per target")->check(CLI::PositiveNumber);
  build->add_option("--seed-block", o.seed_block, "Block of the seed condition");
  build->add_option("-o,--output", o.output_path, "Output file (default: stdout)");

  auto* validate = app.add_subcommand("validate", "Validate a condition or fragment file");
  validate->add_option("file", o.input_path, "Condition or fragment JSON")->required();
  validate->add_flag("--json", o.json, "Print the report as JSON");

  auto* persistency = app.add_subcommand("play-persistency", "Play the persistency game");
  add_game(persistency);
  persistency->add_option("--exists", o.exists, "morass | greedy | empty");

  auto* ef = app.add_subcommand("play-ef", "Play the Ehrenfeucht-Fraisse game between A and B");
  add_game(ef);
  ef->add_option("--move-cap", o.move_cap, "Maximum challenge size per side")->check(CLI::PositiveNumber);
  ef->add_option("--base-u", o.base_u, "Comma separated base layer points");
  ef->add_option("--pool", o.pool, "Universe points available to the random adversary");

  auto* show = app.add_subcommand("show-layer", "Print the catalog of one layer");
  add_condition(show);
  show->add_option("--layer", o.layer, "Comma separated layer points")->required();
  show->add_option("--value-cap", o.value_cap, "Largest function value");
  show->add_option("-o,--output", o.output_path, "Output file (default: stdout)");

  auto* exp = app.add_subcommand("export", "Export a condition with its maps and validation");
  add_condition(exp);
  exp->add_option("-o,--output", o.output_path, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (build->parsed()) return cmd_build(o, out);
    if (validate->parsed()) return cmd_validate(o, out);
    if (persistency->parsed()) return cmd_play_persistency(o, in, out);
    if (ef->parsed()) return cmd_play_ef(o, in, out);
    if (show->parsed()) return cmd_show_layer(o, out);
    if (exp->parsed()) return cmd_export(o, out);
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kViolation;
  } catch (const InvalidFragment& e) {
    err << "invalid fragment: " << e.what() << "\n";
    return kViolation;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace morasslab::cli
