#pragma once

#include <optional>
#include <vector>

#include "morasslab/ordinal.hpp"

namespace morasslab {

/// Half-open ordinal interval [lo, hi).
struct Interval {
  Ordinal lo;
  Ordinal hi;

  bool empty() const { return !(lo < hi); }
  bool contains(const Ordinal& x) const { return lo <= x && x < hi; }
  auto operator<=>(const Interval&) const = default;
};

/// A finite union of half-open ordinal intervals, kept sorted, disjoint and
/// with touching neighbours merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval iv) { insert(std::move(iv)); }

  void insert(Interval iv);
  void insert(const IntervalSet& other);
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet intersect(const Interval& iv) const;

  bool empty() const { return parts_.empty(); }
  bool contains(const Ordinal& x) const;
  bool covers(const Interval& iv) const;
  /// Least element; requires !empty().
  const Ordinal& min() const { return parts_.front().lo; }

  const std::vector<Interval>& parts() const { return parts_; }
  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> parts_;
};

/// One translation piece: xi in [lo, hi) maps to image_lo + (xi - lo).
struct Piece {
  Ordinal lo;
  Ordinal hi;
  Ordinal image_lo;

  Ordinal length() const { return left_subtract(lo, hi); }
  Ordinal image_hi() const { return image_lo + length(); }
  auto operator<=>(const Piece&) const = default;
};

/// A map between ordinals given as finitely many translation pieces.
///
/// Morass embeddings (members of a family F_{a,b}) are total, strictly
/// order-preserving instances whose pieces cover [0, source_theta). The same
/// representation also carries partial maps (inverses of embeddings) and
/// non-injective maps (level-to-level predecessor projections). Pieces are
/// canonical: sorted, nonempty, and adjacent pieces whose images continue each
/// other are merged, so extensional equality is representation equality.
class PiecewiseMap {
 public:
  PiecewiseMap() = default;
  PiecewiseMap(std::vector<Piece> pieces, Ordinal source_theta, Ordinal target_theta);

  static PiecewiseMap identity(const Ordinal& theta) { return inclusion(theta, theta); }
  /// Identity on [0, theta) viewed as a map into [0, target).
  static PiecewiseMap inclusion(const Ordinal& theta, const Ordinal& target);

  const std::vector<Piece>& pieces() const { return pieces_; }
  const Ordinal& source_theta() const { return source_; }
  const Ordinal& target_theta() const { return target_; }

  /// Value at xi, or nullopt when xi is outside every piece.
  std::optional<Ordinal> apply(const Ordinal& xi) const;
  Ordinal operator()(const Ordinal& xi) const;

  /// All xi with map(xi) == y.
  std::vector<Ordinal> preimages(const Ordinal& y) const;

  IntervalSet domain() const;
  IntervalSet range() const;
  IntervalSet image(const IntervalSet& s) const;

  bool is_total() const;
  bool is_order_preserving() const;
  /// Every image lies below target_theta.
  bool fits_target() const;

  /// Inverse of an order-preserving map; its domain is this map's range.
  PiecewiseMap inverse() const;

  auto operator<=>(const PiecewiseMap&) const = default;

 private:
  void canonicalize();

  std::vector<Piece> pieces_;
  Ordinal source_;
  Ordinal target_;
};

/// g after f, or nullopt when some image point of f lies outside g's domain.
/// Requires f.target_theta() == g.source_theta().
std::optional<PiecewiseMap> compose_partial(const PiecewiseMap& g, const PiecewiseMap& f);

/// g after f; throws std::invalid_argument on mismatched endpoints or when f's
/// image is not inside g's domain.
PiecewiseMap compose(const PiecewiseMap& g, const PiecewiseMap& f);

/// The shift of theta at gamma: identity below gamma, gamma + xi -> theta + xi
/// for xi < eta where theta = gamma + eta. Target is theta + eta.
PiecewiseMap make_shift(const Ordinal& theta, const Ordinal& gamma);

}  // namespace morasslab
