#include "morasslab/morass.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace morasslab {

namespace {

std::vector<PiecewiseMap> sorted_unique(std::vector<PiecewiseMap> maps) {
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  return maps;
}

void require_below_top(const MorassFragment& frag, const Ordinal& xi) {
  if (!(xi < frag.top_theta())) {
    throw std::out_of_range("element " + xi.to_string() + " outside the fragment universe [0, " +
                            frag.top_theta().to_string() + ")");
  }
}

// The unique level-beta preimage of x < theta_{beta+1} under the stored
// successor family.
Ordinal step_preimage(const MorassFragment& frag, LevelIndex beta, const Ordinal& x) {
  std::optional<Ordinal> found;
  for (const auto& g : frag.successor_family(beta)) {
    for (auto& y : g.preimages(x)) {
      if (found && *found != y) {
        throw InvalidFragment("two predecessors of " + x.to_string() + " on level " +
                              std::to_string(beta) + ": " + found->to_string() + " and " +
                              y.to_string());
      }
      found = std::move(y);
    }
  }
  if (!found) {
    throw InvalidFragment("no predecessor of " + x.to_string() + " on level " + std::to_string(beta));
  }
  return *std::move(found);
}

}  // namespace

// --- MorassFragment ----------------------------------------------------------

std::vector<PiecewiseMap> standard_successor_family(const LevelData& level, const Ordinal& next_theta) {
  std::vector<PiecewiseMap> out;
  out.push_back(PiecewiseMap::inclusion(level.theta, next_theta));
  const PiecewiseMap shift = make_shift(level.theta, level.gamma);
  out.emplace_back(shift.pieces(), level.theta, next_theta);
  return sorted_unique(std::move(out));
}

MorassFragment::MorassFragment(std::vector<LevelData> levels, Ordinal top_theta)
    : levels_(std::move(levels)), top_theta_(std::move(top_theta)) {
  successor_.reserve(levels_.size());
  for (LevelIndex a = 0; a < height(); ++a) {
    try {
      successor_.push_back(standard_successor_family(levels_[a], theta(a + 1)));
    } catch (const std::exception&) {
      // Corrupt level data (gamma above theta, shrinking theta): leave the
      // family empty so validate_fragment reports it.
      successor_.emplace_back();
    }
  }
}

MorassFragment::MorassFragment(std::vector<LevelData> levels, Ordinal top_theta,
                               std::vector<std::vector<PiecewiseMap>> successor_families)
    : levels_(std::move(levels)),
      top_theta_(std::move(top_theta)),
      successor_(std::move(successor_families)) {
  if (successor_.size() != levels_.size()) {
    throw std::invalid_argument("one successor family per level is required");
  }
  for (auto& fam : successor_) fam = sorted_unique(std::move(fam));
}

MorassFragment MorassFragment::seed(const Ordinal& theta0) { return MorassFragment({}, theta0); }

MorassFragment MorassFragment::with_new_top(const Ordinal& gamma) const {
  LevelData top{top_theta_, gamma, left_subtract(gamma, top_theta_)};
  Ordinal next = top.theta + top.eta;
  std::vector<LevelData> levels = levels_;
  auto successor = successor_;
  successor.push_back(standard_successor_family(top, next));
  levels.push_back(std::move(top));
  return MorassFragment(std::move(levels), std::move(next), std::move(successor));
}

const Ordinal& MorassFragment::theta(LevelIndex alpha) const {
  if (alpha < height()) return levels_[alpha].theta;
  if (alpha == height()) return top_theta_;
  throw std::out_of_range("level " + std::to_string(alpha) + " above fragment height " +
                          std::to_string(height()));
}

const std::vector<PiecewiseMap>& MorassFragment::successor_family(LevelIndex alpha) const {
  if (alpha >= height()) throw std::out_of_range("no successor family above the top level");
  return successor_[alpha];
}

// --- families ----------------------------------------------------------------

std::vector<PiecewiseMap> family(const MorassFragment& frag, LevelIndex alpha, LevelIndex beta,
                                 std::size_t max_size) {
  if (!(alpha <= beta) || beta > frag.height()) {
    throw std::out_of_range("family: need alpha <= beta <= height");
  }
  std::set<PiecewiseMap> current{PiecewiseMap::identity(frag.theta(alpha))};
  for (LevelIndex level = alpha; level < beta; ++level) {
    std::set<PiecewiseMap> next;
    for (const auto& f : current) {
      for (const auto& g : frag.successor_family(level)) {
        next.insert(compose(g, f));
        if (next.size() > max_size) {
          throw std::length_error("family(" + std::to_string(alpha) + ", " + std::to_string(beta) +
                                  ") exceeds " + std::to_string(max_size) + " maps");
        }
      }
    }
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

IntervalSet family_range_union(const MorassFragment& frag, LevelIndex alpha, LevelIndex beta) {
  IntervalSet s{Interval{Ordinal{}, frag.theta(alpha)}};
  for (LevelIndex level = alpha; level < beta; ++level) {
    IntervalSet next;
    for (const auto& g : frag.successor_family(level)) next.insert(g.image(s));
    s = std::move(next);
  }
  return s;
}

bool family_contains(const MorassFragment& frag, LevelIndex alpha, LevelIndex beta,
                     const PiecewiseMap& h) {
  if (alpha > beta || beta > frag.height()) return false;
  if (h.source_theta() != frag.theta(alpha) || h.target_theta() != frag.theta(beta)) return false;
  std::set<PiecewiseMap> frontier{h};
  for (LevelIndex level = beta; level > alpha; --level) {
    std::set<PiecewiseMap> next;
    for (const auto& cand : frontier) {
      for (const auto& g : frag.successor_family(level - 1)) {
        if (!g.is_order_preserving() || g.target_theta() != cand.target_theta()) continue;
        if (auto lower = compose_partial(g.inverse(), cand)) next.insert(*std::move(lower));
      }
    }
    if (next.empty()) return false;
    frontier = std::move(next);
  }
  return frontier.contains(PiecewiseMap::identity(frag.theta(alpha)));
}

// --- validation --------------------------------------------------------------

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNotLimit: return "limit violation";
    case ViolationKind::kSuccessorArithmetic: return "successor violation";
    case ViolationKind::kSuccessorFamily: return "successor family violation";
    case ViolationKind::kFullness: return "fullness failure";
    case ViolationKind::kFactoring: return "factoring failure";
    case ViolationKind::kOrderType: return "order type mismatch";
    case ViolationKind::kEmbedding: return "embedding violation";
  }
  return "unknown violation";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "pass";
  std::ostringstream os;
  os << "fail";
  for (const auto& v : violations) os << "\n  " << to_string(v.kind) << ": " << v.detail;
  return os.str();
}

ValidationReport validate_fragment(const MorassFragment& frag) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };
  const LevelIndex h = frag.height();

  for (LevelIndex a = 0; a <= h; ++a) {
    if (!frag.theta(a).is_limit()) {
      add(ViolationKind::kNotLimit, "theta_" + std::to_string(a) + " = " + frag.theta(a).to_string());
    }
  }

  bool families_usable = true;
  for (LevelIndex a = 0; a < h; ++a) {
    const LevelData& lv = frag.levels()[a];
    const std::string tag = "level " + std::to_string(a);
    if (lv.theta < lv.gamma || lv.gamma + lv.eta != lv.theta) {
      add(ViolationKind::kSuccessorArithmetic,
          tag + ": theta " + lv.theta.to_string() + " != gamma " + lv.gamma.to_string() +
              " + eta " + lv.eta.to_string());
    }
    if (lv.theta + lv.eta != frag.theta(a + 1)) {
      add(ViolationKind::kSuccessorArithmetic, tag + ": theta_" + std::to_string(a + 1) + " = " +
                                                   frag.theta(a + 1).to_string() + " but theta + eta = " +
                                                   (lv.theta + lv.eta).to_string());
    }
    std::vector<PiecewiseMap> expected;
    try {
      expected = standard_successor_family(lv, frag.theta(a + 1));
    } catch (const std::exception& e) {
      add(ViolationKind::kSuccessorFamily, tag + ": cannot form the shift (" + e.what() + ")");
    }
    const auto& stored = frag.successor_family(a);
    if (!expected.empty() && stored != expected) {
      add(ViolationKind::kSuccessorFamily,
          tag + ": stored family has " + std::to_string(stored.size()) +
              " maps and differs from {id, shift at " + lv.gamma.to_string() + "}");
    }
    for (const auto& g : stored) {
      if (g.source_theta() != lv.theta || g.target_theta() != frag.theta(a + 1) || !g.is_total() ||
          !g.is_order_preserving() || !g.fits_target()) {
        add(ViolationKind::kSuccessorFamily, tag + ": a stored map is not an embedding of theta_" +
                                                 std::to_string(a) + " into theta_" +
                                                 std::to_string(a + 1));
        families_usable = false;
      }
    }
  }

  if (families_usable) {
    for (LevelIndex a = 0; a < h; ++a) {
      for (LevelIndex b = a + 1; b <= h; ++b) {
        const IntervalSet ranges = family_range_union(frag, a, b);
        if (ranges != IntervalSet{Interval{Ordinal{}, frag.theta(b)}}) {
          add(ViolationKind::kFullness, "ranges of F(" + std::to_string(a) + ", " + std::to_string(b) +
                                            ") do not cover [0, " + frag.theta(b).to_string() + ")");
        }
      }
    }
  }

  report.notes.push_back("factoring holds vacuously: finite height has no limit level indices");
  return report;
}

std::optional<std::string> check_factoring(const FamilyTable& table, LevelIndex gamma) {
  for (const auto& [key, top_maps] : table) {
    const auto [alpha, target] = key;
    if (target != gamma || alpha >= gamma) continue;
    bool intermediate = false;
    for (LevelIndex beta = alpha + 1; beta < gamma; ++beta) intermediate = intermediate || table.contains({alpha, beta});
    if (!intermediate) continue;
    for (const auto& f : top_maps) {
      for (const auto& g : top_maps) {
        bool factored = false;
        for (LevelIndex beta = alpha + 1; beta < gamma && !factored; ++beta) {
          auto lower = table.find({alpha, beta});
          auto upper = table.find({beta, gamma});
          if (lower == table.end() || upper == table.end()) continue;
          for (const auto& h : upper->second) {
            bool f_ok = false;
            bool g_ok = false;
            for (const auto& low : lower->second) {
              auto c = compose_partial(h, low);
              if (!c) continue;
              f_ok = f_ok || *c == f;
              g_ok = g_ok || *c == g;
            }
            if (f_ok && g_ok) {
              factored = true;
              break;
            }
          }
        }
        if (!factored) {
          return "maps of F(" + std::to_string(alpha) + ", " + std::to_string(gamma) +
                 ") admit no common factorisation";
        }
      }
    }
  }
  return std::nullopt;
}

// --- predecessors and orderings ---------------------------------------------

Ordinal predecessor(const MorassFragment& frag, LevelIndex alpha, const Ordinal& xi) {
  require_below_top(frag, xi);
  Ordinal x = xi;
  for (LevelIndex level = frag.height(); level > alpha; --level) x = step_preimage(frag, level - 1, x);
  return x;
}

std::vector<Ordinal> predecessors(const MorassFragment& frag, const Ordinal& xi) {
  require_below_top(frag, xi);
  const LevelIndex h = frag.height();
  std::vector<Ordinal> out(h + 1);
  out[h] = xi;
  for (LevelIndex level = h; level > 0; --level) out[level - 1] = step_preimage(frag, level - 1, out[level]);
  return out;
}

namespace {

bool preceq_vectors(const std::vector<Ordinal>& a, const std::vector<Ordinal>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] < a[i]) return false;
  }
  return true;
}

bool preceq_at_vectors(LevelIndex alpha, const std::vector<Ordinal>& a, const std::vector<Ordinal>& b) {
  const std::size_t level = std::min<std::size_t>(alpha, a.size() - 1);
  return a[level] == b[level] && preceq_vectors(a, b);
}

}  // namespace

bool preceq(const MorassFragment& frag, const Ordinal& xi, const Ordinal& eta) {
  return preceq_vectors(predecessors(frag, xi), predecessors(frag, eta));
}

bool preceq_at(const MorassFragment& frag, LevelIndex alpha, const Ordinal& xi, const Ordinal& eta) {
  return preceq_at_vectors(alpha, predecessors(frag, xi), predecessors(frag, eta));
}

LevelIndex mu(const MorassFragment& frag, const Ordinal& xi, const Ordinal& eta) {
  PredecessorCache cache(frag);
  return cache.mu(xi, eta);
}

bool dominates(const MorassFragment& frag, const std::vector<Ordinal>& s, const std::vector<Ordinal>& t) {
  if (s.size() != t.size()) throw std::invalid_argument("dominates: sequences differ in length");
  PredecessorCache cache(frag);
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (!cache.preceq(s[n], t[n])) return false;
  }
  return true;
}

std::optional<Ordinal> least_preceq_bound(const MorassFragment& frag, const std::vector<Ordinal>& elements) {
  PredecessorCache cache(frag);
  return least_preceq_bound(cache, elements);
}

std::optional<Ordinal> least_preceq_bound(PredecessorCache& cache, const std::vector<Ordinal>& elements) {
  const MorassFragment& frag = cache.fragment();
  const LevelIndex h = frag.height();
  std::vector<Ordinal> floor(h + 1);
  for (const auto& x : elements) {
    const auto& preds = cache.of(x);
    for (LevelIndex b = 0; b <= h; ++b) floor[b] = std::max(floor[b], preds[b]);
  }
  // Level-b values whose whole predecessor chain clears the floors.
  IntervalSet feasible{Interval{floor[0], frag.theta(0)}};
  for (LevelIndex b = 0; b < h && !feasible.empty(); ++b) {
    IntervalSet next;
    for (const auto& g : frag.successor_family(b)) next.insert(g.image(feasible));
    feasible = next.intersect(Interval{floor[b + 1], frag.theta(b + 1)});
  }
  if (feasible.empty()) return std::nullopt;
  return feasible.min();
}

// --- PredecessorCache ----------------------------------------------------------

const std::vector<Ordinal>& PredecessorCache::of(const Ordinal& xi) {
  auto it = cache_.find(xi);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(xi, predecessors(*frag_, xi)).first->second;
}

const std::vector<std::uint64_t>& PredecessorCache::masks(const Ordinal& xi) {
  auto it = step_masks_.find(xi);
  if (it != step_masks_.end()) return it->second;
  const auto& preds = of(xi);
  std::vector<std::uint64_t> m(frag_->height(), 0);
  for (LevelIndex b = 0; b < frag_->height(); ++b) {
    const auto& fam = frag_->successor_family(b);
    for (std::size_t k = 0; k < fam.size() && k < 64; ++k) {
      auto v = fam[k].apply(preds[b]);
      if (v && *v == preds[b + 1]) m[b] |= std::uint64_t{1} << k;
    }
  }
  return step_masks_.emplace(xi, std::move(m)).first->second;
}

bool PredecessorCache::preceq(const Ordinal& xi, const Ordinal& eta) {
  const auto& a = of(xi);
  return preceq_vectors(a, of(eta));
}

bool PredecessorCache::preceq_at(LevelIndex alpha, const Ordinal& xi, const Ordinal& eta) {
  const auto& a = of(xi);
  return preceq_at_vectors(alpha, a, of(eta));
}

LevelIndex PredecessorCache::mu(const Ordinal& xi, const Ordinal& eta) {
  const auto mx = masks(xi);
  const auto& my = masks(eta);
  LevelIndex alpha = frag_->height();
  while (alpha > 0 && (mx[alpha - 1] & my[alpha - 1]) != 0) --alpha;
  return alpha;
}

}  // namespace morasslab
