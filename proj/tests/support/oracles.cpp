#include "oracles.hpp"

#include <stdexcept>

namespace morasslab::oracle {

// --- well-orders ---------------------------------------------------------------

OrderType order_type(const WellOrder& w) {
  OrderType t;
  for (Block b : w) {
    if (b == Block::kOmega) {
      ++t.omegas;
      t.points = 0;
    } else {
      ++t.points;
    }
  }
  return t;
}

WellOrder concat(const WellOrder& a, const WellOrder& b) {
  WellOrder out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

WellOrder random_presentation(const OrderType& t, Rng& rng) {
  WellOrder w;
  for (std::uint64_t k = 0; k < t.omegas; ++k) {
    for (std::uint64_t s = uniform(rng, 0, 2); s > 0; --s) w.push_back(Block::kPoint);
    w.push_back(Block::kOmega);
  }
  for (std::uint64_t n = 0; n < t.points; ++n) w.push_back(Block::kPoint);
  return w;
}

std::vector<WellOrder> proper_initial_segments(const WellOrder& w, std::uint64_t point_bound) {
  std::vector<WellOrder> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    WellOrder prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    if (w[i] == Block::kOmega) {
      for (std::uint64_t j = 1; j < point_bound; ++j) {
        WellOrder cut = prefix;
        cut.insert(cut.end(), j, Block::kPoint);
        out.push_back(std::move(cut));
      }
    }
    out.push_back(std::move(prefix));
  }
  return out;
}

bool less_by_segments(const WellOrder& a, const WellOrder& b, std::uint64_t point_bound) {
  const OrderType ta = order_type(a);
  for (const auto& s : proper_initial_segments(b, point_bound)) {
    if (order_type(s) == ta) return true;
  }
  return false;
}

Ordinal to_ordinal(const OrderType& t) {
  return Ordinal::omega_power(1, t.omegas) + Ordinal::finite(t.points);
}

// --- grids and words -----------------------------------------------------------

std::vector<Ordinal> grid_below(const Ordinal& theta, std::uint64_t coefficient_bound, std::uint64_t finite_bound) {
  std::vector<Ordinal> out;
  const std::uint32_t top = theta.degree();
  auto fill = [&](auto&& self, std::uint32_t e, const Ordinal& prefix) -> void {
    if (e == 0) {
      for (std::uint64_t n = 0; n <= finite_bound; ++n) {
        Ordinal x = prefix + Ordinal::finite(n);
        if (x < theta) out.push_back(std::move(x));
      }
      return;
    }
    for (std::uint64_t c = 0; c <= coefficient_bound; ++c) self(self, e - 1, prefix + Ordinal::omega_power(e, c));
  };
  fill(fill, top, Ordinal{});
  std::sort(out.begin(), out.end());
  return out;
}

WordOracle::WordOracle(const MorassFragment& frag, std::vector<Ordinal> top_grid)
    : frag_(&frag), grid_(std::move(top_grid)) {
  const LevelIndex h = frag.height();
  preimages_.resize(h + 1);
  ranges_.resize(h + 1);
  for (LevelIndex alpha = 0; alpha <= h; ++alpha) {
    std::vector<Ordinal> level;
    for (const auto& g : grid_) {
      if (g < frag.theta(alpha)) level.push_back(g);
    }
    std::vector<std::size_t> word(h - alpha, 0);
    while (true) {
      std::set<Ordinal> image;
      for (const auto& y : level) {
        Ordinal x = y;
        for (std::size_t k = 0; k < word.size(); ++k) x = frag.successor_family(alpha + k)[word[k]](x);
        preimages_[alpha][x].insert(y);
        image.insert(std::move(x));
      }
      ranges_[alpha].push_back(std::move(image));
      // next word, odometer style
      std::size_t k = 0;
      while (k < word.size() && ++word[k] == frag.successor_family(alpha + k).size()) word[k++] = 0;
      if (k == word.size()) break;
    }
  }
}

const std::set<Ordinal>& WordOracle::preimages(LevelIndex alpha, const Ordinal& xi) const {
  static const std::set<Ordinal> kNone;
  auto it = preimages_.at(alpha).find(xi);
  return it == preimages_[alpha].end() ? kNone : it->second;
}

Ordinal WordOracle::unique_pred(LevelIndex alpha, const Ordinal& xi) const {
  const auto& p = preimages(alpha, xi);
  if (p.size() != 1) {
    throw std::logic_error("word oracle: " + std::to_string(p.size()) + " preimages of " + xi.to_string() +
                           " on level " + std::to_string(alpha));
  }
  return *p.begin();
}

LevelIndex WordOracle::mu(const Ordinal& xi, const Ordinal& eta) const {
  for (LevelIndex alpha = 0; alpha < ranges_.size(); ++alpha) {
    for (const auto& r : ranges_[alpha]) {
      if (r.contains(xi) && r.contains(eta)) return alpha;
    }
  }
  throw std::logic_error("word oracle: grid misses " + xi.to_string() + " or " + eta.to_string());
}

bool WordOracle::preceq(const Ordinal& xi, const Ordinal& eta) const {
  for (LevelIndex beta = 0; beta <= frag_->height(); ++beta) {
    if (unique_pred(beta, eta) < unique_pred(beta, xi)) return false;
  }
  return true;
}

bool WordOracle::preceq_at(LevelIndex alpha, const Ordinal& xi, const Ordinal& eta) const {
  if (alpha >= frag_->height()) return xi == eta;
  return unique_pred(alpha, xi) == unique_pred(alpha, eta) && preceq(xi, eta);
}

bool WordOracle::in_family(const PFunc& f) const {
  for (const auto& [xi, fx] : f) {
    for (const auto& [eta, alpha] : f) {
      if (preceq_at(alpha, xi, eta) && fx != alpha) return false;
    }
  }
  std::set<LevelIndex> values;
  for (const auto& [xi, alpha] : f) values.insert(alpha);
  for (LevelIndex alpha : values) {
    bool bounded = false;
    for (const auto& z : grid_) {
      bool all = true;
      for (const auto& [xi, v] : f) {
        if (v == alpha && !preceq(xi, z)) {
          all = false;
          break;
        }
      }
      if (all) {
        bounded = true;
        break;
      }
    }
    if (!bounded) return false;
  }
  return true;
}

// --- game trees --------------------------------------------------------------

bool PersistencyTree::winning(const PFunc& position, std::size_t rounds) {
  if (rounds == 0) return true;
  const auto key = std::pair{position, rounds};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool result = true;
  for (const auto& x : pool_) {
    bool answered = false;
    if (position.contains(x)) {
      answered = winning(position, rounds - 1);
    } else {
      for (LevelIndex v = 0; v <= cap_ && !answered; ++v) {
        PFunc next = position;
        next[x] = v;
        answered = in_family(cache_, next) && winning(next, rounds - 1);
      }
    }
    if (!answered) {
      result = false;
      break;
    }
  }
  memo_.emplace(key, result);
  return result;
}

std::vector<CElement> EFTree::answers(const CElement& x) const {
  std::vector<CElement> out{x};
  if (std::holds_alternative<Ordinal>(x)) {
    for (const auto& y : pool_) {
      if (std::holds_alternative<Ordinal>(y) && y != x) out.push_back(y);
    }
    return out;
  }
  const auto& s = std::get<SetElement>(x);
  const auto lay = ab_->a.universe->layer(s.layer);
  for (CatalogIndex g = 0; g < lay->size(); ++g) out.push_back(symmetric_difference(s, SetElement{s.layer, {g}}));
  for (const auto& y : pool_) {
    const auto* t = std::get_if<SetElement>(&y);
    if (t && t->layer == s.layer && std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
  }
  return out;
}

bool EFTree::winning(const PartialIso& position, std::size_t rounds) {
  if (rounds == 0) return true;
  const auto key = std::pair{position, rounds};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  std::set<CElement> range;
  for (const auto& [x, y] : position) range.insert(y);
  bool result = true;
  for (const auto& x : pool_) {
    for (int side = 0; side < 2 && result; ++side) {
      const bool covered = side == 0 ? position.contains(x) : range.contains(x);
      bool answered = false;
      if (covered) {
        answered = winning(position, rounds - 1);
      } else {
        for (const auto& r : answers(x)) {
          PartialIso next = position;
          const CElement& from = side == 0 ? x : r;
          const CElement& to = side == 0 ? r : x;
          if (!next.emplace(from, to).second) continue;
          ++evaluations_;
          const std::vector<CElement> fresh{from};
          if (partial_iso_violation(next, ab_->a, ab_->b, &fresh)) continue;
          if (winning(next, rounds - 1)) {
            answered = true;
            break;
          }
        }
      }
      result = answered;
    }
    if (!result) break;
  }
  memo_.emplace(key, result);
  return result;
}

// --- fixtures ----------------------------------------------------------------

Ordinal ord(const char* text) { return Ordinal::parse(text); }

MorassFragment frag0() { return MorassFragment({LevelData{kOmega, Ordinal{}, kOmega}}, ord("w*2")); }

Condition frag0_condition() { return build_fragment(seed_condition(0), {{1, Ordinal{}}}, 1); }

std::vector<Condition> built_conditions(std::size_t count, std::uint64_t seed, const TaskShape& shape) {
  Rng rng(seed);
  std::vector<Condition> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(build_fragment(seed_condition(0), random_tasks(shape, rng), 16));
  return out;
}

}  // namespace morasslab::oracle
