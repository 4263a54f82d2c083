#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morasslab/ordinal.hpp"
#include "morasslab/piecewise_map.hpp"

namespace morasslab {

using LevelIndex = std::uint32_t;

/// Raised when a fragment turns out not to satisfy the morass axioms while an
/// operation relies on them (missing or ambiguous predecessor).
class InvalidFragment : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// theta = gamma + eta, and the next level is theta + eta.
struct LevelData {
  Ordinal theta;
  Ordinal gamma;
  Ordinal eta;

  bool operator==(const LevelData&) const = default;
};

/// A finite-height simplified morass fragment.
///
/// Levels 0 .. height-1 carry (theta, gamma, eta) together with their stored
/// successor family (normally {identity, shift at gamma}); level `height` is
/// the top, whose theta plays the part of omega_2. The standard constructors
/// derive the successor families from the level data; the explicit one
/// accepts arbitrary families so that broken fragments can be represented and
/// reported by validate_fragment.
class MorassFragment {
 public:
  MorassFragment() : MorassFragment(std::vector<LevelData>{}, kOmega) {}
  MorassFragment(std::vector<LevelData> levels, Ordinal top_theta);
  MorassFragment(std::vector<LevelData> levels, Ordinal top_theta,
                 std::vector<std::vector<PiecewiseMap>> successor_families);

  /// Height-0 fragment on [0, theta0).
  static MorassFragment seed(const Ordinal& theta0 = kOmega);

  /// Adds a level on top: the current top becomes level `height` with the
  /// given split point, and the new top theta is theta + eta.
  MorassFragment with_new_top(const Ordinal& gamma) const;

  LevelIndex height() const { return static_cast<LevelIndex>(levels_.size()); }
  const std::vector<LevelData>& levels() const { return levels_; }
  const Ordinal& top_theta() const { return top_theta_; }
  /// theta_alpha for alpha <= height.
  const Ordinal& theta(LevelIndex alpha) const;
  const std::vector<PiecewiseMap>& successor_family(LevelIndex alpha) const;

  bool operator==(const MorassFragment&) const = default;

 private:
  std::vector<LevelData> levels_;
  Ordinal top_theta_;
  std::vector<std::vector<PiecewiseMap>> successor_;
};

/// The standard two-map successor family {id, shift at gamma}, deduplicated.
std::vector<PiecewiseMap> standard_successor_family(const LevelData& level, const Ordinal& next_theta);

/// All composites of successor-family choices from level alpha to level beta
/// (the identity alone when alpha == beta), canonical and deduplicated, in sorted order. Throws std::length_error past
/// `max_size` maps.
std::vector<PiecewiseMap> family(const MorassFragment& frag, LevelIndex alpha, LevelIndex beta,
                                 std::size_t max_size = std::size_t{1} << 16);

/// Union of f[theta_alpha] over family(alpha, beta), computed level by level
/// without enumerating the family.
IntervalSet family_range_union(const MorassFragment& frag, LevelIndex alpha, LevelIndex beta);

/// Whether h belongs to family(alpha, beta), decided by peeling successor maps
/// off the top. For alpha == beta only the identity qualifies.
bool family_contains(const MorassFragment& frag, LevelIndex alpha, LevelIndex beta,
                     const PiecewiseMap& h);

enum class ViolationKind {
  kNotLimit,
  kSuccessorArithmetic,
  kSuccessorFamily,
  kFullness,
  kFactoring,
  kOrderType,
  kEmbedding,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_fragment(const MorassFragment& frag);

/// Maps between levels supplied explicitly, keyed by (alpha, beta).
using FamilyTable = std::map<std::pair<LevelIndex, LevelIndex>, std::vector<PiecewiseMap>>;

/// The factoring axiom at a limit index gamma for an explicitly supplied table:
/// for alpha < gamma and f, g in F(alpha, gamma) there are beta in (alpha,
/// gamma), f', g' in F(alpha, beta) and h in F(beta, gamma) with f = h.f' and
/// g = h.g'. Indices alpha with no tabulated F(alpha, beta), beta < gamma,
/// are skipped. Returns the first failing (alpha, f, g) description, if any.
std::optional<std::string> check_factoring(const FamilyTable& table, LevelIndex gamma);

/// The level-alpha predecessor of xi < theta_top. Levels at or above the top
/// return xi itself.
Ordinal predecessor(const MorassFragment& frag, LevelIndex alpha, const Ordinal& xi);

/// predecessor(frag, beta, xi) for beta = 0 .. height in one downward pass.
std::vector<Ordinal> predecessors(const MorassFragment& frag, const Ordinal& xi);

bool preceq(const MorassFragment& frag, const Ordinal& xi, const Ordinal& eta);
bool preceq_at(const MorassFragment& frag, LevelIndex alpha, const Ordinal& xi, const Ordinal& eta);

/// Least alpha such that one map of family(alpha, height) has both xi and eta
/// in its range.
LevelIndex mu(const MorassFragment& frag, const Ordinal& xi, const Ordinal& eta);

/// Pointwise preceq; throws std::invalid_argument on length mismatch.
bool dominates(const MorassFragment& frag, const std::vector<Ordinal>& s,
               const std::vector<Ordinal>& t);

/// Least z < theta_top with x preceq z for every x in `elements`, if any.
/// The search runs over interval sets level by level, so it is exact.
std::optional<Ordinal> least_preceq_bound(const MorassFragment& frag,
                                          const std::vector<Ordinal>& elements);

class PredecessorCache;
std::optional<Ordinal> least_preceq_bound(PredecessorCache& cache, const std::vector<Ordinal>& elements);

/// Memoised predecessor vectors for repeated order queries on one fragment.
/// Not thread-safe; keep one per game session.
class PredecessorCache {
 public:
  explicit PredecessorCache(const MorassFragment& frag) : frag_(&frag) {}

  const MorassFragment& fragment() const { return *frag_; }
  const std::vector<Ordinal>& of(const Ordinal& xi);

  bool preceq(const Ordinal& xi, const Ordinal& eta);
  bool preceq_at(LevelIndex alpha, const Ordinal& xi, const Ordinal& eta);
  LevelIndex mu(const Ordinal& xi, const Ordinal& eta);

 private:
  const MorassFragment* frag_;
  std::unordered_map<Ordinal, std::vector<Ordinal>> cache_;
  std::unordered_map<Ordinal, std::vector<std::uint64_t>> step_masks_;

  const std::vector<std::uint64_t>& masks(const Ordinal& xi);
};

}  // namespace morasslab
