#pragma once

// Independent reference implementations used to freeze expected values and
// to cross-check the library. They share only the basic data types with the
// code under test.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "morasslab/efgame.hpp"
#include "morasslab/forcing.hpp"
#include "morasslab/morass.hpp"
#include "morasslab/persistency.hpp"
#include "morasslab/sampling.hpp"
#include "morasslab/structures.hpp"

namespace morasslab::oracle {

// --- explicit well-orders below w*8 ------------------------------------------

/// A well-order written as a left-to-right list of blocks: a single point or
/// a copy of omega.
enum class Block { kPoint, kOmega };
using WellOrder = std::vector<Block>;

/// w*omegas + points
struct OrderType {
  std::uint64_t omegas = 0;
  std::uint64_t points = 0;
  auto operator<=>(const OrderType&) const = default;
};

/// Read off the structure: a point followed somewhere by an omega block sits
/// inside that omega's initial part, so only points after the last omega
/// block survive as a finite tail.
OrderType order_type(const WellOrder& w);
WellOrder concat(const WellOrder& a, const WellOrder& b);
/// A block list of type t with stray points sprinkled before omega blocks.
WellOrder random_presentation(const OrderType& t, Rng& rng);
/// Proper initial segments of w: cuts between blocks, and cuts after j < bound
/// points of an omega block.
std::vector<WellOrder> proper_initial_segments(const WellOrder& w, std::uint64_t point_bound);
/// a < b iff a is isomorphic to a proper initial segment of b.
bool less_by_segments(const WellOrder& a, const WellOrder& b, std::uint64_t point_bound);
Ordinal to_ordinal(const OrderType& t);

// --- morass fragments by word enumeration --------------------------------------

/// Every ordinal below theta whose CNF coefficients are at most
/// coefficient_bound, with finite part at most finite_bound.
std::vector<Ordinal> grid_below(const Ordinal& theta, std::uint64_t coefficient_bound, std::uint64_t finite_bound);

/// A word is a list of successor-family choices from some level upward; it is
/// evaluated pointwise. All predecessor and range questions are answered by
/// pushing every grid point of every level through every word. Exact as long
/// as the grid contains the points asked about and their predecessors.
class WordOracle {
 public:
  WordOracle(const MorassFragment& frag, std::vector<Ordinal> top_grid);

  const MorassFragment& fragment() const { return *frag_; }
  /// All level-alpha points sent to xi by some word.
  const std::set<Ordinal>& preimages(LevelIndex alpha, const Ordinal& xi) const;
  std::size_t word_count(LevelIndex alpha) const { return ranges_[alpha].size(); }

  LevelIndex mu(const Ordinal& xi, const Ordinal& eta) const;
  bool preceq(const Ordinal& xi, const Ordinal& eta) const;
  bool preceq_at(LevelIndex alpha, const Ordinal& xi, const Ordinal& eta) const;
  /// Both clauses of F(M) transcribed literally; the fiber bound is searched
  /// over the grid.
  bool in_family(const PFunc& f) const;

  const std::vector<Ordinal>& grid() const { return grid_; }

 private:
  const MorassFragment* frag_;
  std::vector<Ordinal> grid_;
  // preimages_[alpha][xi]
  std::vector<std::map<Ordinal, std::set<Ordinal>>> preimages_;
  // ranges_[alpha][word] = image of the level-alpha grid
  std::vector<std::vector<std::set<Ordinal>>> ranges_;
  Ordinal unique_pred(LevelIndex alpha, const Ordinal& xi) const;
};

// --- game trees --------------------------------------------------------------

/// Whether exists survives `rounds` more rounds of the persistency game from
/// `position` when forall challenges from `pool` and exists extends by one
/// value in 0..value_cap.
class PersistencyTree {
 public:
  PersistencyTree(const MorassFragment& frag, std::vector<Ordinal> pool, LevelIndex value_cap)
      : cache_(frag), pool_(std::move(pool)), cap_(value_cap) {}
  bool winning(const PFunc& position, std::size_t rounds);

 private:
  PredecessorCache cache_;
  std::vector<Ordinal> pool_;
  LevelIndex cap_;
  std::map<std::pair<PFunc, std::size_t>, bool> memo_;
};

/// The EF game with forall picking one element of `pool` on either side and
/// exists answering from answers(x).
class EFTree {
 public:
  EFTree(const ABPair& ab, std::vector<CElement> pool) : ab_(&ab), pool_(std::move(pool)) {}
  std::vector<CElement> answers(const CElement& x) const;
  bool winning(const PartialIso& position, std::size_t rounds);
  std::size_t evaluations() const { return evaluations_; }

 private:
  const ABPair* ab_;
  std::vector<CElement> pool_;
  std::size_t evaluations_ = 0;
  std::map<std::pair<PartialIso, std::size_t>, bool> memo_;
};

// --- fixtures ----------------------------------------------------------------

/// height 1, theta_0 = w, gamma_0 = 0, theta_1 = w*2.
MorassFragment frag0();
Condition frag0_condition();
/// Conditions built from the seed by random task lists.
std::vector<Condition> built_conditions(std::size_t count, std::uint64_t seed, const TaskShape& shape = {});

Ordinal ord(const char* text);

}  // namespace morasslab::oracle
