#include "morasslab/piecewise_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace morasslab {

namespace {

const Ordinal& max_of(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }
const Ordinal& min_of(const Ordinal& a, const Ordinal& b) { return a < b ? a : b; }

}  // namespace

// --- IntervalSet -------------------------------------------------------------

void IntervalSet::insert(Interval iv) {
  if (iv.empty()) return;
  std::vector<Interval> out;
  out.reserve(parts_.size() + 1);
  bool placed = false;
  for (auto& p : parts_) {
    if (p.hi < iv.lo) {
      out.push_back(std::move(p));
    } else if (iv.hi < p.lo) {
      if (!placed) {
        out.push_back(iv);
        placed = true;
      }
      out.push_back(std::move(p));
    } else {
      // overlapping or touching: absorb into iv
      iv.lo = min_of(iv.lo, p.lo);
      iv.hi = max_of(iv.hi, p.hi);
    }
  }
  if (!placed) out.push_back(std::move(iv));
  parts_ = std::move(out);
}

void IntervalSet::insert(const IntervalSet& other) {
  for (const auto& p : other.parts_) insert(p);
}

IntervalSet IntervalSet::intersect(const Interval& iv) const {
  IntervalSet out;
  for (const auto& p : parts_) {
    Interval cut{max_of(p.lo, iv.lo), min_of(p.hi, iv.hi)};
    if (!cut.empty()) out.parts_.push_back(std::move(cut));
  }
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  for (const auto& iv : other.parts_) out.insert(intersect(iv));
  return out;
}

bool IntervalSet::contains(const Ordinal& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Ordinal& v, const Interval& p) { return v < p.hi; });
  return it != parts_.end() && it->contains(x);
}

bool IntervalSet::covers(const Interval& iv) const {
  if (iv.empty()) return true;
  for (const auto& p : parts_) {
    if (p.lo <= iv.lo && iv.hi <= p.hi) return true;
  }
  return false;
}

// --- PiecewiseMap ------------------------------------------------------------

PiecewiseMap::PiecewiseMap(std::vector<Piece> pieces, Ordinal source_theta, Ordinal target_theta)
    : pieces_(std::move(pieces)), source_(std::move(source_theta)), target_(std::move(target_theta)) {
  canonicalize();
}

PiecewiseMap PiecewiseMap::inclusion(const Ordinal& theta, const Ordinal& target) {
  if (target < theta) throw std::invalid_argument("inclusion: target below source");
  std::vector<Piece> pieces;
  if (!theta.is_zero()) pieces.push_back({Ordinal{}, theta, Ordinal{}});
  return PiecewiseMap(std::move(pieces), theta, target);
}

void PiecewiseMap::canonicalize() {
  std::erase_if(pieces_, [](const Piece& p) { return !(p.lo < p.hi); });
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].lo < pieces_[i - 1].hi) throw std::invalid_argument("overlapping map pieces");
  }
  std::vector<Piece> merged;
  merged.reserve(pieces_.size());
  for (auto& p : pieces_) {
    if (!merged.empty() && merged.back().hi == p.lo && merged.back().image_hi() == p.image_lo) {
      merged.back().hi = std::move(p.hi);
    } else {
      merged.push_back(std::move(p));
    }
  }
  pieces_ = std::move(merged);
}

std::optional<Ordinal> PiecewiseMap::apply(const Ordinal& xi) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), xi,
                             [](const Ordinal& v, const Piece& p) { return v < p.hi; });
  if (it == pieces_.end() || xi < it->lo) return std::nullopt;
  return it->image_lo + left_subtract(it->lo, xi);
}

Ordinal PiecewiseMap::operator()(const Ordinal& xi) const {
  auto v = apply(xi);
  if (!v) throw std::out_of_range("map applied outside its domain at " + xi.to_string());
  return *v;
}

std::vector<Ordinal> PiecewiseMap::preimages(const Ordinal& y) const {
  std::vector<Ordinal> out;
  for (const auto& p : pieces_) {
    if (p.image_lo <= y && y < p.image_hi()) out.push_back(p.lo + left_subtract(p.image_lo, y));
  }
  return out;
}

IntervalSet PiecewiseMap::domain() const {
  IntervalSet s;
  for (const auto& p : pieces_) s.insert({p.lo, p.hi});
  return s;
}

IntervalSet PiecewiseMap::range() const {
  IntervalSet s;
  for (const auto& p : pieces_) s.insert({p.image_lo, p.image_hi()});
  return s;
}

IntervalSet PiecewiseMap::image(const IntervalSet& s) const {
  IntervalSet out;
  for (const auto& p : pieces_) {
    for (const auto& iv : s.parts()) {
      const Ordinal& lo = max_of(p.lo, iv.lo);
      const Ordinal& hi = min_of(p.hi, iv.hi);
      if (!(lo < hi)) continue;
      out.insert({p.image_lo + left_subtract(p.lo, lo), p.image_lo + left_subtract(p.lo, hi)});
    }
  }
  return out;
}

bool PiecewiseMap::is_total() const {
  if (source_.is_zero()) return pieces_.empty();
  return domain().covers({Ordinal{}, source_});
}

bool PiecewiseMap::fits_target() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [&](const Piece& p) { return p.image_hi() <= target_; });
}

bool PiecewiseMap::is_order_preserving() const {
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].image_lo < pieces_[i - 1].image_hi()) return false;
  }
  return true;
}

PiecewiseMap PiecewiseMap::inverse() const {
  if (!is_order_preserving()) throw std::logic_error("inverse of a non-injective map");
  std::vector<Piece> inv;
  inv.reserve(pieces_.size());
  for (const auto& p : pieces_) inv.push_back({p.image_lo, p.image_hi(), p.lo});
  return PiecewiseMap(std::move(inv), target_, source_);
}

std::optional<PiecewiseMap> compose_partial(const PiecewiseMap& g, const PiecewiseMap& f) {
  if (f.target_theta() != g.source_theta()) {
    throw std::invalid_argument("compose: f targets " + f.target_theta().to_string() +
                                " but g starts from " + g.source_theta().to_string());
  }
  std::vector<Piece> out;
  const auto& gp = g.pieces();
  for (const auto& p : f.pieces()) {
    const Ordinal ilo = p.image_lo;
    const Ordinal ihi = p.image_hi();
    Ordinal cursor = ilo;
    auto it = std::upper_bound(gp.begin(), gp.end(), ilo,
                               [](const Ordinal& v, const Piece& q) { return v < q.hi; });
    for (; it != gp.end() && it->lo < ihi; ++it) {
      if (cursor < it->lo) return std::nullopt;  // gap in g's domain
      const Ordinal& ov_hi = min_of(ihi, it->hi);
      out.push_back({p.lo + left_subtract(ilo, cursor), p.lo + left_subtract(ilo, ov_hi),
                     it->image_lo + left_subtract(it->lo, cursor)});
      cursor = ov_hi;
    }
    if (cursor < ihi) return std::nullopt;
  }
  return PiecewiseMap(std::move(out), f.source_theta(), g.target_theta());
}

PiecewiseMap compose(const PiecewiseMap& g, const PiecewiseMap& f) {
  auto h = compose_partial(g, f);
  if (!h) throw std::invalid_argument("compose: image of f leaves the domain of g");
  return *std::move(h);
}

PiecewiseMap make_shift(const Ordinal& theta, const Ordinal& gamma) {
  if (theta < gamma) {
    throw std::invalid_argument("make_shift: gamma " + gamma.to_string() + " exceeds theta " +
                                theta.to_string());
  }
  const Ordinal eta = left_subtract(gamma, theta);
  std::vector<Piece> pieces;
  pieces.push_back({Ordinal{}, gamma, Ordinal{}});
  pieces.push_back({gamma, theta, theta});
  return PiecewiseMap(std::move(pieces), theta, theta + eta);
}

}  // namespace morasslab
