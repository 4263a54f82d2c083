#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "morasslab/morass.hpp"
#include "morasslab/ordinal.hpp"

namespace morasslab {

using BlockIndex = std::uint32_t;

/// A point (beta, xi) of the big universe: xi lies in the beta-th block.
/// Points are ordered lexicographically.
struct BlockPoint {
  BlockIndex block = 0;
  Ordinal xi;

  auto operator<=>(const BlockPoint&) const = default;
  std::string to_string() const;
};

/// A = union over beta of {(beta, xi) : xi < rho_beta}. Every block meets A in
/// an initial segment, so A is full by construction. Zero entries are dropped.
class BlockMap {
 public:
  BlockMap() = default;
  explicit BlockMap(std::map<BlockIndex, Ordinal> rho);

  const std::map<BlockIndex, Ordinal>& blocks() const { return rho_; }
  /// rho_beta, zero when the block is empty.
  Ordinal rho(BlockIndex beta) const;
  void set(BlockIndex beta, Ordinal rho);

  bool empty() const { return rho_.empty(); }
  bool contains(const BlockPoint& pt) const;
  /// Order type: the sum of the rho_beta in increasing block order.
  Ordinal order_type() const;
  /// Sum of rho over blocks strictly after beta.
  Ordinal order_type_after(BlockIndex beta) const;
  /// Per block minimum / maximum.
  BlockMap intersect(const BlockMap& other) const;
  BlockMap unite(const BlockMap& other) const;
  bool includes(const BlockMap& other) const;

  bool operator==(const BlockMap&) const = default;

 private:
  std::map<BlockIndex, Ordinal> rho_;
};

/// The order isomorphism between [0, ot(A)) and A.
class BlockEmbedding {
 public:
  explicit BlockEmbedding(const BlockMap& a);

  const Ordinal& order_type() const { return total_; }
  /// i(zeta); throws std::out_of_range for zeta >= ot(A).
  BlockPoint operator()(const Ordinal& zeta) const;
  /// i^{-1}(pt), or nullopt when pt is not in A.
  std::optional<Ordinal> inverse(const BlockPoint& pt) const;
  /// Offset of the start of block beta inside [0, ot(A)).
  std::optional<Ordinal> block_offset(BlockIndex beta) const;

 private:
  struct Segment {
    BlockIndex block;
    Ordinal offset;
    Ordinal rho;
  };
  std::vector<Segment> segments_;
  Ordinal total_;
};

/// A forcing condition: a fragment of height delta together with a full set A
/// of order type theta_delta.
struct Condition {
  MorassFragment frag;
  BlockMap a;

  LevelIndex height() const { return frag.height(); }
  BlockEmbedding embedding() const { return BlockEmbedding(a); }
  bool operator==(const Condition&) const = default;
};

/// The seed condition: height 0, theta_0 = omega, A = block `block` up to omega.
Condition seed_condition(BlockIndex block = 0);

ValidationReport validate_condition(const Condition& p);

/// q <= p: q extends p. The connecting map h = i_q^{-1} . i_p is computed
/// directly (i_q is a bijection, so it is the only candidate) and then
/// checked for membership in F(delta_p, delta_q) of q's fragment.
bool leq(const Condition& q, const Condition& p);

bool isomorphic(const Condition& p, const Condition& q);

enum class AmalgamationFailure {
  kNotIsomorphic,
  kOverlapNotInitial,
  kInterleavedDifferences,
};

std::string to_string(AmalgamationFailure kind);

class AmalgamationError : public std::invalid_argument {
 public:
  AmalgamationError(AmalgamationFailure kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  AmalgamationFailure kind() const { return kind_; }

 private:
  AmalgamationFailure kind_;
};

/// nullopt when amalgamate(p, q) is defined, otherwise the reason.
std::optional<AmalgamationFailure> amalgamation_obstacle(const Condition& p, const Condition& q);

/// Adds a level on top: gamma = ot(A_p n A_q), eta = ot(A_p \ A_q), and the
/// new family is {id, shift at gamma}. Throws AmalgamationError.
Condition amalgamate(const Condition& p, const Condition& q);

/// For zeta in `zetas` (elements of [0, theta_p)), checks
/// i_r^{-1}(i_p(zeta)) preceq_{delta_p} i_r^{-1}(i_q(zeta)) in r's fragment.
/// Returns the first failing zeta.
std::optional<Ordinal> remark_counterexample(const Condition& p, const Condition& q, const Condition& r,
                                             const std::vector<Ordinal>& zetas);

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One extension step toward covering `target` (no-op when already covered).
Condition cover_step(const Condition& p, const BlockPoint& target);

/// Repeats cover_step until target is in A; throws BudgetExhausted after
/// `budget` steps without success.
Condition extend_to_cover(const Condition& p, const BlockPoint& target, std::size_t budget);

struct CheckReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Finite-chain form of the lower-bound property: the chain decreases, q lies
/// below every member, and A_q contains every A_{p_n}.
CheckReport verify_lower_bound(const Condition& q, const std::vector<Condition>& chain);

/// Indices (i, j) such that amalgamate(conds[i], conds[j]) is defined and the
/// two A's differ; the first such pair in index order.
std::optional<std::pair<std::size_t, std::size_t>> delta_system_pair(const std::vector<Condition>& conds);

struct WorkingFragment {
  MorassFragment frag;
  BlockEmbedding embedding;
};

class InvalidCondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidCondition when validate_condition fails.
WorkingFragment fragment_of(const Condition& p);

/// Folds extend_to_cover over the tasks.
Condition build_fragment(const Condition& seed, const std::vector<BlockPoint>& tasks, std::size_t budget);

}  // namespace morasslab
