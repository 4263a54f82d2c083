#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morasslab/morass.hpp"
#include "morasslab/sampling.hpp"

namespace morasslab {

/// A finite partial function from the universe [0, theta_top) to level
/// indices.
using PFunc = std::map<Ordinal, LevelIndex>;

std::string to_string(const PFunc& f);

/// f^{-1}{alpha}
std::vector<Ordinal> fiber(const PFunc& f, LevelIndex alpha);

/// Membership in F(M): (1) xi preceq_alpha eta and f(eta) = alpha force
/// f(xi) = alpha; (2) every fiber has a common preceq-upper bound below
/// theta_top. Throws std::out_of_range for keys outside the universe.
bool in_family(const MorassFragment& frag, const PFunc& f);
bool in_family(PredecessorCache& cache, const PFunc& f);

/// Reason for non-membership, or nullopt for members.
std::optional<std::string> family_violation(PredecessorCache& cache, const PFunc& f);

/// The implication in_family(g) => in_family(f) for f a subfunction of g.
/// Throws std::invalid_argument when f is not contained in g.
bool downward_closed_check(const MorassFragment& frag, const PFunc& f, const PFunc& g);

struct StrategyMove {
  Ordinal xi;
  LevelIndex alpha = 0;

  bool operator==(const StrategyMove&) const = default;
};
using StrategyHistory = std::vector<StrategyMove>;

/// Player "for all" of the persistency game: proposes the next element.
class PersistencyChallenger {
 public:
  virtual ~PersistencyChallenger() = default;
  /// nullopt ends the game early.
  virtual std::optional<Ordinal> challenge(const PFunc& position, std::size_t round) = 0;
};

/// Player "exists": answers with a function extending its previous answer and
/// covering the challenge; nullopt means it has no move.
class PersistencyResponder {
 public:
  virtual ~PersistencyResponder() = default;
  virtual std::optional<PFunc> respond(const Ordinal& challenge) = 0;
};

/// The explicit strategy: the new value copies alpha_i for the least i with
/// xi_j preceq_{alpha_i} xi_i, and is otherwise the least natural above every
/// earlier alpha_i and every mu(xi_i, xi_j).
class MorassStrategy : public PersistencyResponder {
 public:
  explicit MorassStrategy(const MorassFragment& frag);

  std::optional<PFunc> respond(const Ordinal& challenge) override;
  LevelIndex next_value(const Ordinal& challenge);

  const StrategyHistory& history() const { return history_; }
  const PFunc& position() const { return position_; }
  PredecessorCache& cache() { return cache_; }

 private:
  PredecessorCache cache_;
  StrategyHistory history_;
  PFunc position_;
};

/// Plays sampled extensions from a subfamily D. The sampler gets the current
/// position and the challenge and returns a member of D extending the
/// position, or nullopt.
using ExtensionSampler = std::function<std::optional<PFunc>(const PFunc&, const Ordinal&)>;

class GreedyStrategy : public PersistencyResponder {
 public:
  explicit GreedyStrategy(ExtensionSampler sampler) : sampler_(std::move(sampler)) {}
  std::optional<PFunc> respond(const Ordinal& challenge) override;

 private:
  ExtensionSampler sampler_;
  PFunc position_;
};

/// Sampler over all of F(M): tries values 0..value_cap for the challenge in
/// random order.
ExtensionSampler family_sampler(const MorassFragment& frag, LevelIndex value_cap, std::uint64_t seed);

/// Always answers the empty function.
class EmptyResponder : public PersistencyResponder {
 public:
  std::optional<PFunc> respond(const Ordinal&) override { return PFunc{}; }
};

class RandomChallenger : public PersistencyChallenger {
 public:
  RandomChallenger(const MorassFragment& frag, std::uint64_t seed) : frag_(&frag), rng_(seed) {}
  std::optional<Ordinal> challenge(const PFunc& position, std::size_t round) override;

 private:
  const MorassFragment* frag_;
  Rng rng_;
  std::vector<Ordinal> seen_;
};

/// Replays a fixed list; the game ends when it runs out.
class ScriptedChallenger : public PersistencyChallenger {
 public:
  explicit ScriptedChallenger(std::vector<Ordinal> moves) : moves_(std::move(moves)) {}
  std::optional<Ordinal> challenge(const PFunc& position, std::size_t round) override;

 private:
  std::vector<Ordinal> moves_;
};

/// Reads ordinals from a stream, re-prompting on malformed or out-of-universe
/// input; end of input or "quit" ends the game.
class InteractiveChallenger : public PersistencyChallenger {
 public:
  InteractiveChallenger(const MorassFragment& frag, std::istream& in, std::ostream& out)
      : frag_(&frag), in_(&in), out_(&out) {}
  std::optional<Ordinal> challenge(const PFunc& position, std::size_t round) override;

 private:
  const MorassFragment* frag_;
  std::istream* in_;
  std::ostream* out_;
};

struct PersistencyRound {
  Ordinal challenge;
  PFunc response;
};

enum class GameOutcome { kExistsWins, kStuck };

struct PersistencyTranscript {
  std::vector<PersistencyRound> rounds;
  GameOutcome outcome = GameOutcome::kExistsWins;
  std::size_t stuck_round = 0;  // meaningful when outcome == kStuck
  std::string diagnostic;
};

/// Referees `rounds` rounds. A response that is missing, not in F(M), not an
/// extension of the previous one, or missing the challenge makes exists stuck
/// at that round.
PersistencyTranscript play_persistency(const MorassFragment& frag, PersistencyChallenger& forall,
                                       PersistencyResponder& exists, std::size_t rounds);

/// At every stage j at most one alpha has some i < j with alpha_i = alpha and
/// xi_j preceq_alpha xi_i.
bool claim_check(const MorassFragment& frag, const StrategyHistory& history);
bool claim_check(PredecessorCache& cache, const StrategyHistory& history);

/// For each value alpha, the element chosen at the first stage with value
/// alpha is a preceq_alpha-upper bound of the whole fiber.
bool fiber_witness_check(PredecessorCache& cache, const StrategyHistory& history);

}  // namespace morasslab
