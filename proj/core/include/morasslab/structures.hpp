#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "morasslab/morass.hpp"
#include "morasslab/persistency.hpp"

namespace morasslab {

using LayerKey = std::vector<Ordinal>;  // sorted, duplicate free
using CatalogIndex = std::uint32_t;

/// A finite set of catalog indices of layer `layer`; no members is the token
/// empty_u of that layer.
struct SetElement {
  LayerKey layer;
  std::vector<CatalogIndex> members;  // sorted, duplicate free

  auto operator<=>(const SetElement&) const = default;
};

/// An element of C: an ordinal of the universe or a layer element.
using CElement = std::variant<Ordinal, SetElement>;

std::string to_string(const CElement& x);
std::string to_string(const LayerKey& u);
LayerKey make_layer_key(std::vector<Ordinal> elements);

/// a symmetric-difference b; throws std::invalid_argument across layers.
SetElement symmetric_difference(const SetElement& a, const SetElement& b);

class LayerTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// F_u with values capped at W, listed lexicographically in (element order,
/// value). Index x is rendered as a `bits()`-wide bit string, most significant
/// bit first.
class Layer {
 public:
  Layer(LayerKey u, std::vector<std::vector<LevelIndex>> rows);

  const LayerKey& u() const { return u_; }
  std::size_t size() const { return rows_.size(); }
  /// Bit length of size() - 1 (zero for a one-function catalog).
  unsigned bits() const { return bits_; }
  PFunc function(CatalogIndex x) const;
  const std::vector<LevelIndex>& values(CatalogIndex x) const { return rows_.at(x); }
  std::optional<CatalogIndex> index_of(const PFunc& f) const;
  std::optional<CatalogIndex> index_of_values(const std::vector<LevelIndex>& values) const;
  std::string bitstring(CatalogIndex x) const;
  /// Bit n of x's bit string.
  bool bit(CatalogIndex x, unsigned n) const;

 private:
  LayerKey u_;
  std::vector<std::vector<LevelIndex>> rows_;
  std::map<std::vector<LevelIndex>, CatalogIndex> index_;
  unsigned bits_ = 0;
};

/// The structure C without its constant: the universe below theta_top plus
/// all layers, materialised on demand and memoised. Thread-safe.
class LayeredUniverse {
 public:
  LayeredUniverse(MorassFragment frag, LevelIndex value_cap, std::size_t max_catalog = std::size_t{1} << 18);

  const MorassFragment& fragment() const { return frag_; }
  LevelIndex value_cap() const { return value_cap_; }

  /// Throws LayerTooLarge past max_catalog, std::out_of_range for elements
  /// outside the universe.
  std::shared_ptr<const Layer> layer(const LayerKey& u) const;
  std::shared_ptr<const Layer> enumerate_layer(const LayerKey& u) const { return layer(u); }

  bool contains(const CElement& x) const;

  bool le(const CElement& a, const CElement& b) const;
  bool E(const CElement& a, const CElement& b) const;
  bool R(unsigned n, bool i, const CElement& a, const CElement& b) const;
  bool S(const CElement& a, const CElement& b) const;

  /// The single member of a delta b when a, b share a layer and differ in
  /// exactly one function.
  std::optional<CatalogIndex> singleton_difference(const SetElement& a, const SetElement& b) const;

  /// pi_{u,v}(b): members restricted to u, combined by symmetric difference.
  SetElement project(const LayerKey& u, const LayerKey& v, const SetElement& b) const;

  /// The element {f} of layer dom(f); nullopt when f is not in the catalog.
  std::optional<SetElement> singleton(const PFunc& f) const;
  SetElement empty_of(const LayerKey& u) const { return SetElement{u, {}}; }

 private:
  MorassFragment frag_;
  LevelIndex value_cap_;
  std::size_t max_catalog_;
  mutable std::mutex mutex_;
  mutable std::map<LayerKey, std::shared_ptr<const Layer>> layers_;

  std::shared_ptr<const Layer> build_layer(const LayerKey& u) const;
};

/// Named relation lookup: "le", "E", "S" or "R_<n>_<i>".
bool rel(const LayeredUniverse& c, std::string_view name, const std::vector<CElement>& args);

/// The shift x -> x delta a on the layer of a.
SetElement shift_map(const SetElement& a, const SetElement& x);

/// C expanded by the constant c.
struct CStructure {
  std::shared_ptr<const LayeredUniverse> universe;
  CElement constant;
};

struct ABPair {
  CStructure a;
  CStructure b;
  LayerKey base_u;
  PFunc f_star;
};

/// Default value cap: height + |base_u| + 2.
LevelIndex default_value_cap(const MorassFragment& frag, std::size_t base_size);

/// Runs the morass strategy on base_u in increasing order to get f*; A
/// interprets c as empty_{base_u}, B as {f*}. Throws std::invalid_argument
/// when f* takes a value above the cap.
ABPair make_AB(const MorassFragment& frag, const std::vector<Ordinal>& base_u,
               std::optional<LevelIndex> value_cap = std::nullopt,
               std::size_t max_catalog = std::size_t{1} << 18);

using PartialIso = std::map<CElement, CElement>;

/// The first violated requirement of a partial isomorphism from A to B, or
/// nullopt. When `fresh` is given only pairs touching a fresh domain element
/// are examined (the rest are assumed already checked).
std::optional<std::string> partial_iso_violation(const PartialIso& psi, const CStructure& a, const CStructure& b,
                                                 const std::vector<CElement>* fresh = nullptr);

bool check_partial_iso(const PartialIso& psi, const CStructure& a, const CStructure& b);

struct IsoClassification {
  bool ord_identity = true;
  bool layers_preserved = true;
  bool shift_family = true;
  bool coherent = true;
  std::map<LayerKey, SetElement> shifts;  // a_{psi,u} per touched layer
  LayerKey top_layer;                    // union of the touched layers
  std::optional<std::size_t> n_psi;      // |a_psi| when a top coherent element was found
  std::string note;
};

IsoClassification classify_partial_iso(const PartialIso& psi, const CStructure& a, const CStructure& b);

}  // namespace morasslab
