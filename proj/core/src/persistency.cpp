#include "morasslab/persistency.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

namespace morasslab {

std::string to_string(const PFunc& f) {
  std::string out = "{";
  for (const auto& [xi, alpha] : f) {
    if (out.size() > 1) out += ", ";
    out += xi.to_string() + " -> " + std::to_string(alpha);
  }
  return out + "}";
}

std::vector<Ordinal> fiber(const PFunc& f, LevelIndex alpha) {
  std::vector<Ordinal> out;
  for (const auto& [xi, v] : f) {
    if (v == alpha) out.push_back(xi);
  }
  return out;
}

std::optional<std::string> family_violation(PredecessorCache& cache, const PFunc& f) {
  const LevelIndex h = cache.fragment().height();
  for (const auto& [xi, alpha] : f) cache.of(xi);
  for (const auto& [eta, alpha] : f) {
    if (alpha >= h) continue;
    for (const auto& [xi, value] : f) {
      if (value != alpha && cache.preceq_at(alpha, xi, eta)) {
        return xi.to_string() + " preceq_" + std::to_string(alpha) + " " + eta.to_string() +
               " but their values are " + std::to_string(value) + " and " + std::to_string(alpha);
      }
    }
  }
  std::map<LevelIndex, std::vector<Ordinal>> fibers;
  for (const auto& [xi, alpha] : f) fibers[alpha].push_back(xi);
  for (const auto& [alpha, members] : fibers) {
    if (members.size() > 1 && !least_preceq_bound(cache, members)) {
      return "fiber of " + std::to_string(alpha) + " has no preceq-upper bound";
    }
  }
  return std::nullopt;
}

bool in_family(PredecessorCache& cache, const PFunc& f) { return !family_violation(cache, f); }

bool in_family(const MorassFragment& frag, const PFunc& f) {
  PredecessorCache cache(frag);
  return in_family(cache, f);
}

bool downward_closed_check(const MorassFragment& frag, const PFunc& f, const PFunc& g) {
  for (const auto& [xi, alpha] : f) {
    auto it = g.find(xi);
    if (it == g.end() || it->second != alpha) {
      throw std::invalid_argument("downward_closed_check: f is not a subfunction of g");
    }
  }
  return !in_family(frag, g) || in_family(frag, f);
}

// --- strategies --------------------------------------------------------------

MorassStrategy::MorassStrategy(const MorassFragment& frag) : cache_(frag) {}

LevelIndex MorassStrategy::next_value(const Ordinal& challenge) {
  for (const auto& m : history_) {
    if (cache_.preceq_at(m.alpha, challenge, m.xi)) return m.alpha;
  }
  if (history_.empty()) return 0;
  LevelIndex bound = 0;
  for (const auto& m : history_) bound = std::max({bound, m.alpha, cache_.mu(m.xi, challenge)});
  return bound + 1;
}

std::optional<PFunc> MorassStrategy::respond(const Ordinal& challenge) {
  const LevelIndex alpha = next_value(challenge);
  history_.push_back({challenge, alpha});
  position_[challenge] = alpha;
  return position_;
}

std::optional<PFunc> GreedyStrategy::respond(const Ordinal& challenge) {
  auto next = sampler_(position_, challenge);
  if (next) position_ = *next;
  return next;
}

ExtensionSampler family_sampler(const MorassFragment& frag, LevelIndex value_cap, std::uint64_t seed) {
  struct State {
    PredecessorCache cache;
    Rng rng;
  };
  auto state = std::make_shared<State>(State{PredecessorCache(frag), Rng(seed)});
  return [state, value_cap](const PFunc& position, const Ordinal& challenge) -> std::optional<PFunc> {
    if (position.contains(challenge)) return position;
    std::vector<LevelIndex> values(value_cap + 1);
    for (LevelIndex v = 0; v <= value_cap; ++v) values[v] = v;
    std::shuffle(values.begin(), values.end(), state->rng);
    for (LevelIndex v : values) {
      PFunc candidate = position;
      candidate[challenge] = v;
      if (in_family(state->cache, candidate)) return candidate;
    }
    return std::nullopt;
  };
}

// --- challengers -------------------------------------------------------------

std::optional<Ordinal> RandomChallenger::challenge(const PFunc&, std::size_t) {
  Ordinal xi = random_element(*frag_, seen_, rng_);
  seen_.push_back(xi);
  return xi;
}

std::optional<Ordinal> ScriptedChallenger::challenge(const PFunc&, std::size_t round) {
  if (round >= moves_.size()) return std::nullopt;
  return moves_[round];
}

std::optional<Ordinal> InteractiveChallenger::challenge(const PFunc& position, std::size_t round) {
  *out_ << "position " << to_string(position) << "\n";
  std::string line;
  while (true) {
    *out_ << "round " << round << ", element below " << frag_->top_theta() << " (or quit)> " << std::flush;
    if (!std::getline(*in_, line) || line == "quit") return std::nullopt;
    try {
      Ordinal xi = Ordinal::parse(line);
      if (xi < frag_->top_theta()) return xi;
      *out_ << "outside the universe\n";
    } catch (const OrdinalParseError& e) {
      *out_ << e.what() << "\n";
    }
  }
}

// --- referee -----------------------------------------------------------------

PersistencyTranscript play_persistency(const MorassFragment& frag, PersistencyChallenger& forall,
                                       PersistencyResponder& exists, std::size_t rounds) {
  PersistencyTranscript t;
  PredecessorCache cache(frag);
  PFunc previous;
  auto stuck = [&](std::size_t round, std::string why) {
    t.outcome = GameOutcome::kStuck;
    t.stuck_round = round;
    t.diagnostic = std::move(why);
    return t;
  };
  for (std::size_t round = 0; round < rounds; ++round) {
    auto challenge = forall.challenge(previous, round);
    if (!challenge) break;
    if (!(*challenge < frag.top_theta())) {
      throw std::out_of_range("challenge " + challenge->to_string() + " outside the universe");
    }
    auto response = exists.respond(*challenge);
    if (!response) return stuck(round, "no response");
    if (!response->contains(*challenge)) return stuck(round, "challenge not in the domain of the response");
    for (const auto& [xi, alpha] : previous) {
      auto it = response->find(xi);
      if (it == response->end() || it->second != alpha) {
        return stuck(round, "response does not extend the previous one at " + xi.to_string());
      }
    }
    if (auto why = family_violation(cache, *response)) return stuck(round, "response not in F(M): " + *why);
    previous = *response;
    t.rounds.push_back({*challenge, *std::move(response)});
  }
  return t;
}

bool claim_check(PredecessorCache& cache, const StrategyHistory& history) {
  for (std::size_t j = 0; j < history.size(); ++j) {
    std::set<LevelIndex> admissible;
    for (std::size_t i = 0; i < j; ++i) {
      if (cache.preceq_at(history[i].alpha, history[j].xi, history[i].xi)) admissible.insert(history[i].alpha);
    }
    if (admissible.size() > 1) return false;
  }
  return true;
}

bool claim_check(const MorassFragment& frag, const StrategyHistory& history) {
  PredecessorCache cache(frag);
  return claim_check(cache, history);
}

bool fiber_witness_check(PredecessorCache& cache, const StrategyHistory& history) {
  std::map<LevelIndex, Ordinal> witness;
  for (const auto& m : history) witness.try_emplace(m.alpha, m.xi);
  return std::all_of(history.begin(), history.end(), [&](const StrategyMove& m) {
    return cache.preceq_at(m.alpha, m.xi, witness.at(m.alpha));
  });
}

}  // namespace morasslab
