#include "morasslab/structures.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace morasslab {

std::string to_string(const LayerKey& u) {
  std::string out = "{";
  for (const auto& x : u) {
    if (out.size() > 1) out += ", ";
    out += x.to_string();
  }
  return out + "}";
}

std::string to_string(const CElement& x) {
  if (const auto* xi = std::get_if<Ordinal>(&x)) return xi->to_string();
  const auto& s = std::get<SetElement>(x);
  std::string out = "G" + to_string(s.layer) + "[";
  for (std::size_t k = 0; k < s.members.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(s.members[k]);
  }
  return out + "]";
}

LayerKey make_layer_key(std::vector<Ordinal> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

SetElement symmetric_difference(const SetElement& a, const SetElement& b) {
  if (a.layer != b.layer) throw std::invalid_argument("symmetric difference across layers");
  SetElement out{a.layer, {}};
  std::set_symmetric_difference(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                                std::back_inserter(out.members));
  return out;
}

SetElement shift_map(const SetElement& a, const SetElement& x) { return symmetric_difference(x, a); }

// --- Layer -------------------------------------------------------------------

Layer::Layer(LayerKey u, std::vector<std::vector<LevelIndex>> rows) : u_(std::move(u)), rows_(std::move(rows)) {
  for (std::size_t x = 0; x < rows_.size(); ++x) index_.emplace(rows_[x], static_cast<CatalogIndex>(x));
  for (std::size_t s = rows_.empty() ? 0 : rows_.size() - 1; s > 0; s >>= 1) ++bits_;
}

PFunc Layer::function(CatalogIndex x) const {
  const auto& row = rows_.at(x);
  PFunc f;
  for (std::size_t k = 0; k < u_.size(); ++k) f.emplace(u_[k], row[k]);
  return f;
}

std::optional<CatalogIndex> Layer::index_of_values(const std::vector<LevelIndex>& values) const {
  auto it = index_.find(values);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<CatalogIndex> Layer::index_of(const PFunc& f) const {
  if (f.size() != u_.size()) return std::nullopt;
  std::vector<LevelIndex> values;
  values.reserve(u_.size());
  std::size_t k = 0;
  for (const auto& [xi, alpha] : f) {
    if (xi != u_[k++]) return std::nullopt;
    values.push_back(alpha);
  }
  return index_of_values(values);
}

bool Layer::bit(CatalogIndex x, unsigned n) const { return n < bits_ && ((x >> (bits_ - 1 - n)) & 1U) != 0; }

std::string Layer::bitstring(CatalogIndex x) const {
  std::string out;
  for (unsigned n = 0; n < bits_; ++n) out += bit(x, n) ? '1' : '0';
  return out;
}

// --- LayeredUniverse ---------------------------------------------------------

LayeredUniverse::LayeredUniverse(MorassFragment frag, LevelIndex value_cap, std::size_t max_catalog)
    : frag_(std::move(frag)), value_cap_(value_cap), max_catalog_(max_catalog) {}

std::shared_ptr<const Layer> LayeredUniverse::build_layer(const LayerKey& u) const {
  if (u != make_layer_key(u)) throw std::invalid_argument("layer key must be sorted and duplicate free");
  for (const auto& x : u) {
    if (!(x < frag_.top_theta())) throw std::out_of_range("layer element " + x.to_string() + " outside the universe");
  }
  PredecessorCache cache(frag_);
  std::vector<std::vector<LevelIndex>> rows;
  std::vector<LevelIndex> row;
  PFunc partial;
  auto extend = [&](auto&& self, std::size_t k) -> void {
    if (k == u.size()) {
      rows.push_back(row);
      if (rows.size() > max_catalog_) {
        throw LayerTooLarge("layer " + to_string(u) + " has more than " + std::to_string(max_catalog_) +
                            " functions");
      }
      return;
    }
    for (LevelIndex v = 0; v <= value_cap_; ++v) {
      partial[u[k]] = v;
      if (in_family(cache, partial)) {
        row.push_back(v);
        self(self, k + 1);
        row.pop_back();
      }
    }
    partial.erase(u[k]);
  };
  extend(extend, 0);
  return std::make_shared<const Layer>(u, std::move(rows));
}

std::shared_ptr<const Layer> LayeredUniverse::layer(const LayerKey& u) const {
  {
    std::lock_guard lock(mutex_);
    auto it = layers_.find(u);
    if (it != layers_.end()) return it->second;
  }
  auto built = build_layer(u);
  std::lock_guard lock(mutex_);
  return layers_.try_emplace(u, std::move(built)).first->second;
}

bool LayeredUniverse::contains(const CElement& x) const {
  if (const auto* xi = std::get_if<Ordinal>(&x)) return *xi < frag_.top_theta();
  const auto& s = std::get<SetElement>(x);
  if (s.layer != make_layer_key(s.layer)) return false;
  if (!s.layer.empty() && !(s.layer.back() < frag_.top_theta())) return false;
  if (!std::is_sorted(s.members.begin(), s.members.end()) ||
      std::adjacent_find(s.members.begin(), s.members.end()) != s.members.end()) {
    return false;
  }
  return s.members.empty() || s.members.back() < layer(s.layer)->size();
}

bool LayeredUniverse::le(const CElement& a, const CElement& b) const {
  const auto* x = std::get_if<Ordinal>(&a);
  const auto* y = std::get_if<Ordinal>(&b);
  return x && y && *x <= *y;
}

bool LayeredUniverse::E(const CElement& a, const CElement& b) const {
  const auto* x = std::get_if<Ordinal>(&a);
  const auto* s = std::get_if<SetElement>(&b);
  return x && s && std::binary_search(s->layer.begin(), s->layer.end(), *x);
}

std::optional<CatalogIndex> LayeredUniverse::singleton_difference(const SetElement& a, const SetElement& b) const {
  if (a.layer != b.layer) return std::nullopt;
  std::optional<CatalogIndex> found;
  auto i = a.members.begin();
  auto j = b.members.begin();
  while (i != a.members.end() || j != b.members.end()) {
    CatalogIndex d;
    if (j == b.members.end() || (i != a.members.end() && *i < *j)) {
      d = *i++;
    } else if (i == a.members.end() || *j < *i) {
      d = *j++;
    } else {
      ++i;
      ++j;
      continue;
    }
    if (found) return std::nullopt;
    found = d;
  }
  return found;
}

bool LayeredUniverse::R(unsigned n, bool i, const CElement& a, const CElement& b) const {
  const auto* x = std::get_if<SetElement>(&a);
  const auto* y = std::get_if<SetElement>(&b);
  if (!x || !y) return false;
  auto d = singleton_difference(*x, *y);
  if (!d) return false;
  const auto lay = layer(x->layer);
  return n < lay->bits() && lay->bit(*d, n) == i;
}

bool LayeredUniverse::S(const CElement& a, const CElement& b) const {
  const auto* x = std::get_if<SetElement>(&a);
  const auto* y = std::get_if<SetElement>(&b);
  if (!x || !y) return false;
  if (!std::includes(y->layer.begin(), y->layer.end(), x->layer.begin(), x->layer.end())) return false;
  return project(x->layer, y->layer, *y) == *x;
}

SetElement LayeredUniverse::project(const LayerKey& u, const LayerKey& v, const SetElement& b) const {
  if (b.layer != v) throw std::invalid_argument("project: element is not in layer " + to_string(v));
  if (!std::includes(v.begin(), v.end(), u.begin(), u.end())) {
    throw std::invalid_argument("project: " + to_string(u) + " is not a subset of " + to_string(v));
  }
  std::vector<std::size_t> positions;
  for (std::size_t k = 0, m = 0; k < v.size() && m < u.size(); ++k) {
    if (v[k] == u[m]) {
      positions.push_back(k);
      ++m;
    }
  }
  const auto upper = layer(v);
  const auto lower = layer(u);
  std::set<CatalogIndex> out;
  std::vector<LevelIndex> restricted(u.size());
  for (CatalogIndex x : b.members) {
    const auto& row = upper->values(x);
    for (std::size_t m = 0; m < positions.size(); ++m) restricted[m] = row[positions[m]];
    auto idx = lower->index_of_values(restricted);
    if (!idx) {
      throw std::logic_error("project: restriction of member " + std::to_string(x) + " missing from layer " +
                             to_string(u));
    }
    if (!out.erase(*idx)) out.insert(*idx);
  }
  return SetElement{u, {out.begin(), out.end()}};
}

std::optional<SetElement> LayeredUniverse::singleton(const PFunc& f) const {
  LayerKey u;
  for (const auto& [xi, alpha] : f) u.push_back(xi);
  auto idx = layer(u)->index_of(f);
  if (!idx) return std::nullopt;
  return SetElement{std::move(u), {*idx}};
}

bool rel(const LayeredUniverse& c, std::string_view name, const std::vector<CElement>& args) {
  if (args.size() != 2) throw std::invalid_argument("relations are binary");
  if (name == "le") return c.le(args[0], args[1]);
  if (name == "E") return c.E(args[0], args[1]);
  if (name == "S") return c.S(args[0], args[1]);
  if (name.starts_with("R_")) {
    const auto sep = name.find('_', 2);
    unsigned n = 0;
    unsigned i = 0;
    if (sep != std::string_view::npos) {
      const auto* first = name.data() + 2;
      const auto r1 = std::from_chars(first, name.data() + sep, n);
      const auto r2 = std::from_chars(name.data() + sep + 1, name.data() + name.size(), i);
      if (r1.ec == std::errc{} && r2.ec == std::errc{} && r2.ptr == name.data() + name.size() && i <= 1) {
        return c.R(n, i == 1, args[0], args[1]);
      }
    }
  }
  throw std::invalid_argument("unknown relation " + std::string(name));
}

// --- A and B -----------------------------------------------------------------

LevelIndex default_value_cap(const MorassFragment& frag, std::size_t base_size) {
  return frag.height() + static_cast<LevelIndex>(base_size) + 2;
}

ABPair make_AB(const MorassFragment& frag, const std::vector<Ordinal>& base_u, std::optional<LevelIndex> value_cap,
               std::size_t max_catalog) {
  LayerKey base = make_layer_key(base_u);
  MorassStrategy strategy(frag);
  for (const auto& xi : base) {
    if (!(xi < frag.top_theta())) throw std::out_of_range("base element " + xi.to_string() + " outside the universe");
    strategy.respond(xi);
  }
  PFunc f_star = strategy.position();
  const LevelIndex cap = value_cap.value_or(default_value_cap(frag, base.size()));
  for (const auto& [xi, alpha] : f_star) {
    if (alpha > cap) {
      throw std::invalid_argument("value cap " + std::to_string(cap) + " is below f*(" + xi.to_string() +
                                  ") = " + std::to_string(alpha));
    }
  }
  auto universe = std::make_shared<const LayeredUniverse>(frag, cap, max_catalog);
  auto star = universe->singleton(f_star);
  if (!star) throw std::logic_error("make_AB: f* is not in F(M)");
  ABPair out{{universe, universe->empty_of(base)}, {universe, *star}, base, std::move(f_star)};
  return out;
}

// --- partial isomorphisms ----------------------------------------------------

std::optional<std::string> partial_iso_violation(const PartialIso& psi, const CStructure& a, const CStructure& b,
                                                 const std::vector<CElement>* fresh) {
  const LayeredUniverse& ua = *a.universe;
  const LayeredUniverse& ub = *b.universe;
  std::set<CElement> fresh_set;
  if (fresh) fresh_set.insert(fresh->begin(), fresh->end());
  auto is_fresh = [&](const CElement& x) { return !fresh || fresh_set.contains(x); };

  std::map<CElement, CElement> inverse;
  for (const auto& [x, y] : psi) {
    if (is_fresh(x)) {
      if (!ua.contains(x)) return to_string(x) + " is not an element of A";
      if (!ub.contains(y)) return to_string(y) + " is not an element of B";
    }
    auto [it, inserted] = inverse.emplace(y, x);
    if (!inserted) return "not injective: " + to_string(it->second) + " and " + to_string(x) + " share an image";
  }
  if (auto it = psi.find(a.constant); it != psi.end() && it->second != b.constant) {
    return "constant of A is sent to " + to_string(it->second);
  }
  if (auto it = inverse.find(b.constant); it != inverse.end() && it->second != a.constant) {
    return "constant of B is the image of " + to_string(it->second);
  }

  auto bits_of = [](const LayeredUniverse& u, const CElement& x) -> unsigned {
    const auto* s = std::get_if<SetElement>(&x);
    return s ? u.layer(s->layer)->bits() : 0;
  };
  auto diff = [](const LayeredUniverse& u, const CElement& x, const CElement& y) -> std::optional<CatalogIndex> {
    const auto* s = std::get_if<SetElement>(&x);
    const auto* t = std::get_if<SetElement>(&y);
    if (!s || !t) return std::nullopt;
    return u.singleton_difference(*s, *t);
  };

  for (const auto& [x, px] : psi) {
    const bool x_fresh = is_fresh(x);
    for (const auto& [y, py] : psi) {
      if (!x_fresh && !is_fresh(y)) continue;
      auto fail = [&](const char* what) {
        return std::string(what) + " not preserved on (" + to_string(x) + ", " + to_string(y) + ")";
      };
      if (ua.le(x, y) != ub.le(px, py)) return fail("<=");
      if (ua.E(x, y) != ub.E(px, py)) return fail("E");
      const auto d1 = diff(ua, x, y);
      const auto d2 = diff(ub, px, py);
      if (d1 || d2) {
        const unsigned b1 = d1 ? bits_of(ua, x) : 0;
        const unsigned b2 = d2 ? bits_of(ub, px) : 0;
        const unsigned top = std::max(b1, b2);
        const Layer* l1 = d1 ? ua.layer(std::get<SetElement>(x).layer).get() : nullptr;
        const Layer* l2 = d2 ? ub.layer(std::get<SetElement>(px).layer).get() : nullptr;
        for (unsigned n = 0; n < top; ++n) {
          const int bit1 = (d1 && n < b1) ? static_cast<int>(l1->bit(*d1, n)) : -1;
          const int bit2 = (d2 && n < b2) ? static_cast<int>(l2->bit(*d2, n)) : -1;
          if (bit1 != bit2) return fail("R");
        }
      }
      if (ua.S(x, y) != ub.S(px, py)) return fail("S");
    }
  }
  return std::nullopt;
}

bool check_partial_iso(const PartialIso& psi, const CStructure& a, const CStructure& b) {
  return !partial_iso_violation(psi, a, b);
}

IsoClassification classify_partial_iso(const PartialIso& psi, const CStructure& a, const CStructure&) {
  IsoClassification out;
  const LayeredUniverse& u = *a.universe;
  for (const auto& [x, y] : psi) {
    if (const auto* xi = std::get_if<Ordinal>(&x)) {
      const auto* yi = std::get_if<Ordinal>(&y);
      if (!yi) out.layers_preserved = false;
      if (!yi || *xi != *yi) out.ord_identity = false;
      continue;
    }
    const auto& s = std::get<SetElement>(x);
    const auto* t = std::get_if<SetElement>(&y);
    if (!t || t->layer != s.layer) {
      out.layers_preserved = false;
      out.shift_family = false;
      continue;
    }
    const SetElement shift = symmetric_difference(s, *t);
    auto [it, inserted] = out.shifts.try_emplace(s.layer, shift);
    if (!inserted && it->second != shift) out.shift_family = false;
  }
  if (!out.shift_family) {
    out.coherent = false;
    out.note = "not a shift family";
    return out;
  }
  for (const auto& [lower, a_lower] : out.shifts) {
    for (const auto& [upper, a_upper] : out.shifts) {
      if (lower == upper || !std::includes(upper.begin(), upper.end(), lower.begin(), lower.end())) continue;
      if (u.project(lower, upper, a_upper) != a_lower) out.coherent = false;
    }
  }
  std::set<Ordinal> top;
  for (const auto& [key, shift] : out.shifts) top.insert(key.begin(), key.end());
  out.top_layer.assign(top.begin(), top.end());
  if (!out.coherent) {
    out.note = "shifts are not projection-compatible";
    return out;
  }
  if (out.shifts.empty()) {
    out.note = "no layer elements";
    return out;
  }
  if (auto it = out.shifts.find(out.top_layer); it != out.shifts.end()) {
    out.n_psi = it->second.members.size();
    return out;
  }
  const bool all_empty = std::all_of(out.shifts.begin(), out.shifts.end(),
                                     [](const auto& kv) { return kv.second.members.empty(); });
  if (all_empty) {
    out.n_psi = 0;
    return out;
  }
  // Glue singleton shifts {g_u} into one function on the union layer.
  PFunc glued;
  for (const auto& [key, shift] : out.shifts) {
    if (shift.members.size() != 1) {
      out.note = "no top coherent element found";
      return out;
    }
    for (const auto& [xi, alpha] : u.layer(key)->function(shift.members.front())) {
      auto [it, inserted] = glued.emplace(xi, alpha);
      if (!inserted && it->second != alpha) {
        out.note = "singleton shifts disagree on " + xi.to_string();
        return out;
      }
    }
  }
  const bool capped = std::all_of(glued.begin(), glued.end(),
                                  [&](const auto& kv) { return kv.second <= u.value_cap(); });
  if (capped && in_family(u.fragment(), glued)) {
    out.n_psi = 1;
  } else {
    out.note = "glued singleton is not in F(M)";
  }
  return out;
}

}  // namespace morasslab
