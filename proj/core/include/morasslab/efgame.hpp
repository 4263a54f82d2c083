#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "morasslab/persistency.hpp"
#include "morasslab/sampling.hpp"
#include "morasslab/structures.hpp"

namespace morasslab {

struct EFConfig {
  std::size_t rounds = 4;
  std::size_t move_cap = 4;  // max challenge size per side and round
};

struct EFChallenge {
  std::vector<CElement> from_a;
  std::vector<CElement> from_b;

  bool operator==(const EFChallenge&) const = default;
};

class EFChallenger {
 public:
  virtual ~EFChallenger() = default;
  virtual EFChallenge challenge(const PartialIso& position, std::size_t round) = 0;
};

class EFResponder {
 public:
  virtual ~EFResponder() = default;
  /// nullopt: no move.
  virtual std::optional<PartialIso> respond(const EFChallenge& challenge) = 0;
};

struct EFRound {
  EFChallenge challenge;
  PartialIso response;
};

struct EFTranscript {
  std::vector<EFRound> rounds;
  GameOutcome outcome = GameOutcome::kExistsWins;
  std::size_t lost_round = 0;  // meaningful when outcome == kStuck
  std::string diagnostic;
};

/// Referees the game. Responses must extend the previous one, cover both
/// challenge sets and be partial isomorphisms from A to B. A challenge larger
/// than move_cap or with elements outside C throws std::invalid_argument.
EFTranscript play_ef(const ABPair& ab, EFChallenger& forall, EFResponder& exists, const EFConfig& config);

/// The strategy built on a simulated persistency play: both challenge sets
/// are merged, new layer points are fed to the morass strategy in increasing
/// order giving f, and the answer is the identity on ordinals and
/// a -> a delta {f restricted to u(a)} on layer elements, closed under this
/// involution. The constant pair empty_{base} <-> {f*} is included from the
/// first round on.
class MorassEFStrategy : public EFResponder {
 public:
  explicit MorassEFStrategy(const ABPair& ab);

  std::optional<PartialIso> respond(const EFChallenge& challenge) override;

  /// f_xi after each round, starting with f*.
  const std::vector<PFunc>& simulation() const { return chain_; }
  const std::string& failure() const { return failure_; }

 private:
  const ABPair* ab_;
  MorassStrategy persistency_;
  PartialIso psi_;
  std::vector<PFunc> chain_;
  std::string failure_;
};

struct AdversaryWeights {
  double ordinal = 1.0;
  double constant = 1.0;
  double fresh_set = 1.0;
  double s_linked = 2.0;
};

/// Random "for all" drawing from a fixed pool of universe points (plus
/// base_u); layers have at most `max_layer` points and set elements at most
/// two members. Reproducible for a fixed seed.
class RandomEFChallenger : public EFChallenger {
 public:
  RandomEFChallenger(const ABPair& ab, std::vector<Ordinal> pool, std::size_t move_cap, std::uint64_t seed,
                     AdversaryWeights weights = {}, std::size_t max_layer = 3);

  EFChallenge challenge(const PartialIso& position, std::size_t round) override;

 private:
  const ABPair* ab_;
  std::vector<Ordinal> points_;
  std::size_t move_cap_;
  Rng rng_;
  AdversaryWeights weights_;
  std::size_t max_layer_;
  std::vector<SetElement> seen_;

  CElement draw(bool side_b);
  SetElement random_set();
  std::optional<SetElement> linked_set();
};

/// A random pool of universe points: random elements and siblings.
std::vector<Ordinal> random_pool(const MorassFragment& frag, std::size_t size, Rng& rng);

/// Value cap large enough for every layer point a pool-based game can feed.
LevelIndex pool_value_cap(const MorassFragment& frag, std::size_t base_size, std::size_t pool_size);

/// Replays fixed challenges, then pads with empty ones.
class ScriptedEFChallenger : public EFChallenger {
 public:
  explicit ScriptedEFChallenger(std::vector<EFChallenge> moves) : moves_(std::move(moves)) {}
  EFChallenge challenge(const PartialIso& position, std::size_t round) override;

 private:
  std::vector<EFChallenge> moves_;
};

/// Terminal "for all": prints a numbered menu of candidate elements and reads
/// picks such as "a0 a3 b1"; an empty line passes, "quit" pads the rest of
/// the game with empty challenges. Illegal input is re-prompted.
class InteractiveEFChallenger : public EFChallenger {
 public:
  InteractiveEFChallenger(const ABPair& ab, std::vector<Ordinal> pool, std::size_t move_cap, std::istream& in,
                          std::ostream& out);
  EFChallenge challenge(const PartialIso& position, std::size_t round) override;

 private:
  const ABPair* ab_;
  std::vector<CElement> menu_;
  std::size_t move_cap_;
  std::istream* in_;
  std::ostream* out_;
  bool quit_ = false;
};

}  // namespace morasslab
