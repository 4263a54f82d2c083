#include "morasslab/sampling.hpp"

namespace morasslab {

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

Ordinal random_ordinal_below(const Ordinal& theta, Rng& rng) {
  if (theta.is_zero()) throw std::invalid_argument("random_ordinal_below: nothing below 0");
  const auto& terms = theta.terms();
  const std::size_t k = uniform(rng, 0, terms.size() - 1);
  std::vector<CnfTerm> prefix(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(k));
  Ordinal out = Ordinal::from_terms(std::move(prefix));
  const CnfTerm& t = terms[k];
  out += Ordinal::omega_power(t.exponent, uniform(rng, 0, std::min<std::uint64_t>(t.coefficient - 1, 1000)));
  for (std::uint32_t e = t.exponent; e-- > 0;) out += Ordinal::omega_power(e, uniform(rng, 0, e == 0 ? 9 : 3));
  return out;
}

Ordinal random_sibling(const MorassFragment& frag, const Ordinal& xi, LevelIndex alpha, Rng& rng) {
  const LevelIndex h = frag.height();
  if (alpha >= h) return xi;
  Ordinal x = predecessor(frag, alpha, xi);
  for (LevelIndex b = alpha; b < h; ++b) {
    const auto& fam = frag.successor_family(b);
    x = fam[uniform(rng, 0, fam.size() - 1)](x);
  }
  return x;
}

Ordinal random_element(const MorassFragment& frag, const std::vector<Ordinal>& seen, Rng& rng) {
  if (!seen.empty() && uniform(rng, 0, 1) == 0) {
    const Ordinal& base = seen[uniform(rng, 0, seen.size() - 1)];
    return random_sibling(frag, base, static_cast<LevelIndex>(uniform(rng, 0, frag.height())), rng);
  }
  return random_ordinal_below(frag.top_theta(), rng);
}

std::vector<BlockPoint> random_tasks(const TaskShape& shape, Rng& rng) {
  std::vector<BlockPoint> tasks(uniform(rng, 1, shape.max_tasks));
  for (auto& t : tasks) {
    t.block = static_cast<BlockIndex>(uniform(rng, 0, shape.block_limit - 1));
    t.xi = random_ordinal_below(shape.xi_limit, rng);
  }
  return tasks;
}

}  // namespace morasslab
