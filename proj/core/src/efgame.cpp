#include "morasslab/efgame.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace morasslab {

namespace {

std::vector<CElement> merged(const EFChallenge& ch) {
  std::vector<CElement> out = ch.from_a;
  out.insert(out.end(), ch.from_b.begin(), ch.from_b.end());
  return out;
}

PFunc restrict_to(const PFunc& f, const LayerKey& u) {
  PFunc out;
  for (const auto& x : u) {
    auto it = f.find(x);
    if (it == f.end()) throw std::logic_error("simulation does not cover " + x.to_string());
    out.emplace(x, it->second);
  }
  return out;
}

}  // namespace

// --- referee -----------------------------------------------------------------

EFTranscript play_ef(const ABPair& ab, EFChallenger& forall, EFResponder& exists, const EFConfig& config) {
  if (config.rounds == 0 || config.move_cap == 0) throw std::invalid_argument("rounds and move_cap must be positive");
  EFTranscript t;
  const LayeredUniverse& c = *ab.a.universe;
  PartialIso previous;
  for (std::size_t round = 0; round < config.rounds; ++round) {
    EFChallenge ch = forall.challenge(previous, round);
    if (ch.from_a.size() > config.move_cap || ch.from_b.size() > config.move_cap) {
      throw std::invalid_argument("challenge exceeds the move cap in round " + std::to_string(round));
    }
    for (const auto& x : merged(ch)) {
      if (!c.contains(x)) throw std::invalid_argument("challenge element " + to_string(x) + " is not in C");
    }
    auto lose = [&](std::string why) {
      t.outcome = GameOutcome::kStuck;
      t.lost_round = round;
      t.diagnostic = std::move(why);
      return t;
    };
    auto response = exists.respond(ch);
    if (!response) return lose("no response");
    for (const auto& [x, y] : previous) {
      auto it = response->find(x);
      if (it == response->end() || it->second != y) {
        return lose("response does not extend the previous one at " + to_string(x));
      }
    }
    for (const auto& x : ch.from_a) {
      if (!response->contains(x)) return lose(to_string(x) + " from A is not in the domain");
    }
    std::set<CElement> range;
    for (const auto& [x, y] : *response) range.insert(y);
    for (const auto& y : ch.from_b) {
      if (!range.contains(y)) return lose(to_string(y) + " from B is not in the range");
    }
    std::vector<CElement> fresh;
    for (const auto& [x, y] : *response) {
      if (!previous.contains(x)) fresh.push_back(x);
    }
    if (auto why = partial_iso_violation(*response, ab.a, ab.b, &fresh)) {
      return lose("not a partial isomorphism: " + *why);
    }
    previous = *response;
    t.rounds.push_back({std::move(ch), *std::move(response)});
  }
  return t;
}

// --- strategy ----------------------------------------------------------------

MorassEFStrategy::MorassEFStrategy(const ABPair& ab) : ab_(&ab), persistency_(ab.a.universe->fragment()) {
  for (const auto& xi : ab.base_u) persistency_.respond(xi);
  chain_.push_back(persistency_.position());
  psi_.emplace(ab.a.constant, ab.b.constant);
  psi_.emplace(ab.b.constant, ab.a.constant);
}

std::optional<PartialIso> MorassEFStrategy::respond(const EFChallenge& challenge) {
  const auto elements = merged(challenge);
  std::set<Ordinal> points;
  for (const auto& x : elements) {
    if (const auto* s = std::get_if<SetElement>(&x)) points.insert(s->layer.begin(), s->layer.end());
  }
  for (const auto& xi : points) {
    if (!persistency_.position().contains(xi)) persistency_.respond(xi);
  }
  const PFunc& f = persistency_.position();
  chain_.push_back(f);

  const LayeredUniverse& c = *ab_->a.universe;
  for (const auto& x : elements) {
    if (psi_.contains(x)) continue;
    if (std::holds_alternative<Ordinal>(x)) {
      psi_.emplace(x, x);
      continue;
    }
    const auto& s = std::get<SetElement>(x);
    auto idx = c.layer(s.layer)->index_of(restrict_to(f, s.layer));
    if (!idx) {
      failure_ = "restriction of f to " + to_string(s.layer) + " is not in the catalog (value cap " +
                 std::to_string(c.value_cap()) + ")";
      return std::nullopt;
    }
    const SetElement image = symmetric_difference(s, SetElement{s.layer, {*idx}});
    psi_.emplace(x, image);
    psi_.emplace(image, x);
  }
  return psi_;
}

// --- adversaries -------------------------------------------------------------

std::vector<Ordinal> random_pool(const MorassFragment& frag, std::size_t size, Rng& rng) {
  std::vector<Ordinal> pool;
  while (pool.size() < size) {
    Ordinal xi = random_element(frag, pool, rng);
    if (std::find(pool.begin(), pool.end(), xi) == pool.end()) pool.push_back(std::move(xi));
  }
  return pool;
}

LevelIndex pool_value_cap(const MorassFragment& frag, std::size_t base_size, std::size_t pool_size) {
  return default_value_cap(frag, base_size + pool_size);
}

RandomEFChallenger::RandomEFChallenger(const ABPair& ab, std::vector<Ordinal> pool, std::size_t move_cap,
                                       std::uint64_t seed, AdversaryWeights weights, std::size_t max_layer)
    : ab_(&ab), move_cap_(move_cap), rng_(seed), weights_(weights), max_layer_(max_layer) {
  pool.insert(pool.end(), ab.base_u.begin(), ab.base_u.end());
  points_ = make_layer_key(std::move(pool));
}

EFChallenge RandomEFChallenger::challenge(const PartialIso&, std::size_t) {
  EFChallenge ch;
  const std::size_t na = uniform(rng_, 0, move_cap_);
  const std::size_t nb = uniform(rng_, 0, move_cap_);
  for (std::size_t k = 0; k < na; ++k) ch.from_a.push_back(draw(false));
  for (std::size_t k = 0; k < nb; ++k) ch.from_b.push_back(draw(true));
  return ch;
}

CElement RandomEFChallenger::draw(bool side_b) {
  std::discrete_distribution<int> pick({weights_.ordinal, weights_.constant, weights_.fresh_set, weights_.s_linked});
  switch (pick(rng_)) {
    case 0:
      if (!points_.empty()) return points_[uniform(rng_, 0, points_.size() - 1)];
      break;
    case 1:
      return uniform(rng_, 0, 3) == 0 ? (side_b ? ab_->a.constant : ab_->b.constant)
                                      : (side_b ? ab_->b.constant : ab_->a.constant);
    case 3:
      if (auto s = linked_set()) {
        seen_.push_back(*s);
        return *std::move(s);
      }
      break;
    default:
      break;
  }
  SetElement s = random_set();
  seen_.push_back(s);
  return s;
}

SetElement RandomEFChallenger::random_set() {
  std::vector<Ordinal> chosen = points_;
  std::shuffle(chosen.begin(), chosen.end(), rng_);
  chosen.resize(std::min<std::size_t>(chosen.size(), uniform(rng_, 0, max_layer_)));
  LayerKey u = make_layer_key(std::move(chosen));
  const auto lay = ab_->a.universe->layer(u);
  std::set<CatalogIndex> members;
  const std::size_t count = uniform(rng_, 0, std::min<std::size_t>(2, lay->size()));
  while (members.size() < count) members.insert(static_cast<CatalogIndex>(uniform(rng_, 0, lay->size() - 1)));
  return SetElement{std::move(u), {members.begin(), members.end()}};
}

std::optional<SetElement> RandomEFChallenger::linked_set() {
  if (seen_.empty()) return std::nullopt;
  const SetElement b = seen_[uniform(rng_, 0, seen_.size() - 1)];
  const LayeredUniverse& c = *ab_->a.universe;
  std::vector<Ordinal> outside;
  std::set_difference(points_.begin(), points_.end(), b.layer.begin(), b.layer.end(), std::back_inserter(outside));
  const bool lift = b.layer.size() < max_layer_ && !outside.empty() && uniform(rng_, 0, 1) == 0;
  if (!lift) {
    LayerKey u;
    for (const auto& x : b.layer) {
      if (uniform(rng_, 0, 1) == 0) u.push_back(x);
    }
    return c.project(u, b.layer, b);
  }
  LayerKey v = b.layer;
  v.push_back(outside[uniform(rng_, 0, outside.size() - 1)]);
  v = make_layer_key(std::move(v));
  const auto upper = c.layer(v);
  const auto lower = c.layer(b.layer);
  // For each member of b pick a random extension to v.
  std::set<CatalogIndex> members;
  for (CatalogIndex g : b.members) {
    const PFunc target = lower->function(g);
    std::vector<CatalogIndex> extensions;
    for (CatalogIndex x = 0; x < upper->size(); ++x) {
      const PFunc h = upper->function(x);
      if (std::all_of(target.begin(), target.end(), [&](const auto& kv) { return h.at(kv.first) == kv.second; })) {
        extensions.push_back(x);
      }
    }
    if (extensions.empty()) return std::nullopt;
    members.insert(extensions[uniform(rng_, 0, extensions.size() - 1)]);
  }
  return SetElement{std::move(v), {members.begin(), members.end()}};
}

EFChallenge ScriptedEFChallenger::challenge(const PartialIso&, std::size_t round) {
  if (round < moves_.size()) return moves_[round];
  return {};
}

InteractiveEFChallenger::InteractiveEFChallenger(const ABPair& ab, std::vector<Ordinal> pool, std::size_t move_cap,
                                                 std::istream& in, std::ostream& out)
    : ab_(&ab), move_cap_(move_cap), in_(&in), out_(&out) {
  pool.insert(pool.end(), ab.base_u.begin(), ab.base_u.end());
  const LayerKey points = make_layer_key(std::move(pool));
  const LayeredUniverse& c = *ab.a.universe;
  menu_.push_back(ab.a.constant);
  menu_.push_back(ab.b.constant);
  for (const auto& xi : points) menu_.push_back(xi);
  for (const auto& xi : points) {
    const LayerKey u{xi};
    menu_.push_back(c.empty_of(u));
    const auto lay = c.layer(u);
    for (CatalogIndex x = 0; x < std::min<std::size_t>(lay->size(), 2); ++x) menu_.push_back(SetElement{u, {x}});
  }
}

EFChallenge InteractiveEFChallenger::challenge(const PartialIso& position, std::size_t round) {
  if (quit_) return {};
  *out_ << "position (" << position.size() << " pairs)\n";
  for (const auto& [x, y] : position) *out_ << "  " << to_string(x) << " -> " << to_string(y) << "\n";
  *out_ << "menu:\n";
  for (std::size_t k = 0; k < menu_.size(); ++k) *out_ << "  [" << k << "] " << to_string(menu_[k]) << "\n";
  std::string line;
  while (true) {
    *out_ << "round " << round << ": picks like 'a0 b2' (at most " << move_cap_
          << " per side), empty to pass, quit to stop> " << std::flush;
    if (!std::getline(*in_, line) || line == "quit") {
      quit_ = true;
      return {};
    }
    std::istringstream tokens(line);
    std::string tok;
    EFChallenge ch;
    bool ok = true;
    while (tokens >> tok) {
      std::size_t k = 0;
      std::size_t used = 0;
      try {
        k = std::stoul(tok.substr(1), &used);
      } catch (const std::exception&) {
        ok = false;
        break;
      }
      if ((tok[0] != 'a' && tok[0] != 'b') || used + 1 != tok.size() || k >= menu_.size()) {
        ok = false;
        break;
      }
      (tok[0] == 'a' ? ch.from_a : ch.from_b).push_back(menu_[k]);
    }
    if (ok && ch.from_a.size() <= move_cap_ && ch.from_b.size() <= move_cap_) return ch;
    *out_ << "illegal move\n";
  }
}

}  // namespace morasslab
