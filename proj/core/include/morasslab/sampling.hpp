#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "morasslab/forcing.hpp"
#include "morasslab/morass.hpp"
#include "morasslab/ordinal.hpp"

namespace morasslab {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi);

/// A random ordinal below theta (theta > 0). Every CNF position of theta is
/// equally likely to be the first one where the sample falls short, and the
/// lower-order tail is filled with small coefficients.
Ordinal random_ordinal_below(const Ordinal& theta, Rng& rng);

/// An element whose level-alpha predecessor equals that of xi, obtained by
/// pushing the predecessor up through random successor maps.
Ordinal random_sibling(const MorassFragment& frag, const Ordinal& xi, LevelIndex alpha, Rng& rng);

/// A random universe element, half of the time a sibling of one of `seen`.
Ordinal random_element(const MorassFragment& frag, const std::vector<Ordinal>& seen, Rng& rng);

struct TaskShape {
  std::uint32_t max_tasks = 6;
  BlockIndex block_limit = 8;  // blocks < block_limit
  Ordinal xi_limit = Ordinal::omega_power(1, 4);
};

std::vector<BlockPoint> random_tasks(const TaskShape& shape, Rng& rng);

}  // namespace morasslab
