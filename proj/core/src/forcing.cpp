#include "morasslab/forcing.hpp"

#include <algorithm>

namespace morasslab {

std::string BlockPoint::to_string() const { return "(" + std::to_string(block) + ", " + xi.to_string() + ")"; }

// --- BlockMap ----------------------------------------------------------------

BlockMap::BlockMap(std::map<BlockIndex, Ordinal> rho) : rho_(std::move(rho)) {
  std::erase_if(rho_, [](const auto& kv) { return kv.second.is_zero(); });
}

Ordinal BlockMap::rho(BlockIndex beta) const {
  auto it = rho_.find(beta);
  return it == rho_.end() ? Ordinal{} : it->second;
}

void BlockMap::set(BlockIndex beta, Ordinal rho) {
  if (rho.is_zero()) {
    rho_.erase(beta);
  } else {
    rho_[beta] = std::move(rho);
  }
}

bool BlockMap::contains(const BlockPoint& pt) const { return pt.xi < rho(pt.block); }

Ordinal BlockMap::order_type() const {
  Ordinal total;
  for (const auto& [beta, r] : rho_) total += r;
  return total;
}

Ordinal BlockMap::order_type_after(BlockIndex beta) const {
  Ordinal total;
  for (auto it = rho_.upper_bound(beta); it != rho_.end(); ++it) total += it->second;
  return total;
}

BlockMap BlockMap::intersect(const BlockMap& other) const {
  std::map<BlockIndex, Ordinal> out;
  for (const auto& [beta, r] : rho_) out[beta] = std::min(r, other.rho(beta));
  return BlockMap(std::move(out));
}

BlockMap BlockMap::unite(const BlockMap& other) const {
  std::map<BlockIndex, Ordinal> out = rho_;
  for (const auto& [beta, r] : other.rho_) out[beta] = std::max(out[beta], r);
  return BlockMap(std::move(out));
}

bool BlockMap::includes(const BlockMap& other) const {
  return std::all_of(other.rho_.begin(), other.rho_.end(),
                     [&](const auto& kv) { return kv.second <= rho(kv.first); });
}

// --- BlockEmbedding ----------------------------------------------------------

BlockEmbedding::BlockEmbedding(const BlockMap& a) {
  for (const auto& [beta, r] : a.blocks()) {
    segments_.push_back({beta, total_, r});
    total_ += r;
  }
}

BlockPoint BlockEmbedding::operator()(const Ordinal& zeta) const {
  for (const auto& s : segments_) {
    const Ordinal end = s.offset + s.rho;
    if (zeta < end) return {s.block, left_subtract(s.offset, zeta)};
  }
  throw std::out_of_range("embedding: " + zeta.to_string() + " is not below ot(A) = " + total_.to_string());
}

std::optional<Ordinal> BlockEmbedding::inverse(const BlockPoint& pt) const {
  for (const auto& s : segments_) {
    if (s.block == pt.block) {
      if (pt.xi < s.rho) return s.offset + pt.xi;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<Ordinal> BlockEmbedding::block_offset(BlockIndex beta) const {
  for (const auto& s : segments_) {
    if (s.block == beta) return s.offset;
  }
  return std::nullopt;
}

// --- conditions --------------------------------------------------------------

Condition seed_condition(BlockIndex block) {
  return Condition{MorassFragment::seed(kOmega), BlockMap({{block, kOmega}})};
}

ValidationReport validate_condition(const Condition& p) {
  ValidationReport report = validate_fragment(p.frag);
  const Ordinal ot = p.a.order_type();
  if (ot != p.frag.top_theta()) {
    report.violations.push_back({ViolationKind::kOrderType, "ot(A) = " + ot.to_string() +
                                                                " but theta_top = " +
                                                                p.frag.top_theta().to_string()});
  }
  return report;
}

namespace {

bool same_lower_part(const MorassFragment& lower, const MorassFragment& upper) {
  const LevelIndex d = lower.height();
  if (upper.height() < d || upper.theta(d) != lower.top_theta()) return false;
  for (LevelIndex a = 0; a < d; ++a) {
    if (upper.levels()[a] != lower.levels()[a] || upper.successor_family(a) != lower.successor_family(a)) {
      return false;
    }
  }
  return true;
}

// h = i_q^{-1} . i_p, one translation piece per block of A_p.
std::optional<PiecewiseMap> connecting_map(const Condition& q, const Condition& p) {
  const BlockEmbedding ip = p.embedding();
  const BlockEmbedding iq = q.embedding();
  std::vector<Piece> pieces;
  for (const auto& [beta, r] : p.a.blocks()) {
    if (q.a.rho(beta) < r) return std::nullopt;
    const Ordinal lo = *ip.block_offset(beta);
    pieces.push_back({lo, lo + r, *iq.block_offset(beta)});
  }
  return PiecewiseMap(std::move(pieces), p.frag.top_theta(), q.frag.top_theta());
}

bool initial_in(const BlockMap& part, const BlockMap& whole) {
  bool cut = false;
  for (const auto& [beta, r] : whole.blocks()) {
    const Ordinal x = part.rho(beta);
    if (cut) {
      if (!x.is_zero()) return false;
    } else if (x != r) {
      cut = true;
    }
  }
  return true;
}

// Blocks where `a` strictly exceeds `b`.
std::vector<BlockIndex> excess_blocks(const BlockMap& a, const BlockMap& b) {
  std::vector<BlockIndex> out;
  for (const auto& [beta, r] : a.blocks()) {
    if (b.rho(beta) < r) out.push_back(beta);
  }
  return out;
}

}  // namespace

bool leq(const Condition& q, const Condition& p) {
  if (!same_lower_part(p.frag, q.frag)) return false;
  if (p.frag.top_theta() != p.a.order_type() || q.frag.top_theta() != q.a.order_type()) return false;
  auto h = connecting_map(q, p);
  return h && family_contains(q.frag, p.height(), q.height(), *h);
}

bool isomorphic(const Condition& p, const Condition& q) { return p.frag == q.frag; }

std::string to_string(AmalgamationFailure kind) {
  switch (kind) {
    case AmalgamationFailure::kNotIsomorphic: return "conditions are not isomorphic";
    case AmalgamationFailure::kOverlapNotInitial: return "overlap is not an initial segment of both";
    case AmalgamationFailure::kInterleavedDifferences: return "differences are interleaved";
  }
  return "unknown";
}

std::optional<AmalgamationFailure> amalgamation_obstacle(const Condition& p, const Condition& q) {
  if (!isomorphic(p, q)) return AmalgamationFailure::kNotIsomorphic;
  const BlockMap common = p.a.intersect(q.a);
  if (!initial_in(common, p.a) || !initial_in(common, q.a)) return AmalgamationFailure::kOverlapNotInitial;
  const auto p_only = excess_blocks(p.a, q.a);
  const auto q_only = excess_blocks(q.a, p.a);
  // An empty difference imposes nothing.
  if (!p_only.empty() && !q_only.empty() && !(p_only.back() < q_only.front())) {
    return AmalgamationFailure::kInterleavedDifferences;
  }
  return std::nullopt;
}

Condition amalgamate(const Condition& p, const Condition& q) {
  if (auto obstacle = amalgamation_obstacle(p, q)) {
    throw AmalgamationError(*obstacle, "amalgamate: " + to_string(*obstacle));
  }
  const Ordinal gamma = p.a.intersect(q.a).order_type();
  return Condition{p.frag.with_new_top(gamma), p.a.unite(q.a)};
}

std::optional<Ordinal> remark_counterexample(const Condition& p, const Condition& q, const Condition& r,
                                             const std::vector<Ordinal>& zetas) {
  const BlockEmbedding ip = p.embedding();
  const BlockEmbedding iq = q.embedding();
  const BlockEmbedding ir = r.embedding();
  PredecessorCache cache(r.frag);
  for (const auto& zeta : zetas) {
    auto x = ir.inverse(ip(zeta));
    auto y = ir.inverse(iq(zeta));
    if (!x || !y || !cache.preceq_at(p.height(), *x, *y)) return zeta;
  }
  return std::nullopt;
}

Condition cover_step(const Condition& p, const BlockPoint& target) {
  if (p.a.contains(target)) return p;
  const BlockIndex beta = target.block;
  const Ordinal eta = p.a.order_type_after(beta);
  if (!eta.is_zero()) {
    // Companion condition: same fragment, blocks after beta folded into beta.
    std::map<BlockIndex, Ordinal> rho;
    for (const auto& [b, r] : p.a.blocks()) {
      if (b < beta) rho[b] = r;
    }
    rho[beta] = p.a.rho(beta) + eta;
    const Condition companion{p.frag, BlockMap(std::move(rho))};
    return amalgamate(companion, p);
  }
  BlockMap a = p.a;
  a.set(beta, p.a.rho(beta) + p.frag.top_theta());
  return Condition{p.frag.with_new_top(Ordinal{}), std::move(a)};
}

Condition extend_to_cover(const Condition& p, const BlockPoint& target, std::size_t budget) {
  if (budget == 0) throw std::invalid_argument("extend_to_cover: budget must be positive");
  Condition r = p;
  for (std::size_t step = 0; !r.a.contains(target); ++step) {
    if (step == budget) {
      throw BudgetExhausted("target " + target.to_string() + " not covered after " + std::to_string(budget) +
                            " steps (block " + std::to_string(target.block) + " reaches " +
                            r.a.rho(target.block).to_string() + ")");
    }
    r = cover_step(r, target);
  }
  return r;
}

CheckReport verify_lower_bound(const Condition& q, const std::vector<Condition>& chain) {
  CheckReport report;
  if (chain.empty()) {
    report.failures.push_back("empty chain");
    return report;
  }
  for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
    if (!leq(chain[n + 1], chain[n])) {
      report.failures.push_back("chain not decreasing at " + std::to_string(n + 1));
    }
  }
  for (std::size_t n = 0; n < chain.size(); ++n) {
    if (!leq(q, chain[n])) report.failures.push_back("bound not below chain element " + std::to_string(n));
    if (!q.a.includes(chain[n].a)) {
      report.failures.push_back("A of the bound misses points of chain element " + std::to_string(n));
    }
  }
  return report;
}

std::optional<std::pair<std::size_t, std::size_t>> delta_system_pair(const std::vector<Condition>& conds) {
  for (std::size_t i = 0; i < conds.size(); ++i) {
    for (std::size_t j = 0; j < conds.size(); ++j) {
      if (i == j || conds[i].a == conds[j].a) continue;
      if (!amalgamation_obstacle(conds[i], conds[j])) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

WorkingFragment fragment_of(const Condition& p) {
  const ValidationReport report = validate_condition(p);
  if (!report.ok()) throw InvalidCondition("fragment_of: " + report.summary());
  return WorkingFragment{p.frag, p.embedding()};
}

Condition build_fragment(const Condition& seed, const std::vector<BlockPoint>& tasks, std::size_t budget) {
  Condition r = seed;
  for (const auto& t : tasks) r = extend_to_cover(r, t, budget);
  return r;
}

}  // namespace morasslab
