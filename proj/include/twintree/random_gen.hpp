#pragma once

#include <cstdint>

#include "twintree/finite_tree.hpp"
#include "twintree/scheme.hpp"

namespace twintree {

// Mix a base seed with stream and index into an independent per-case seed
// (splitmix-style finalizer), so suites can draw case i of stream s without
// coupling the cases.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

// Uniform random parent assignment parent[v] in [0, v) over a shuffled
// vertex order; every rooted shape on n vertices has positive probability.
// Deterministic per seed.
RootedFiniteTree random_rooted_tree(int n, std::uint64_t seed);

// Random valid scheme: a reachability skeleton first (state i hangs off an
// earlier state), then extra entries; multiplicities uniform in 1..max_mult,
// each independently turned into omega with probability omega_prob.
// Deterministic per seed.
Scheme random_scheme(int states, std::uint64_t max_mult, double omega_prob, std::uint64_t seed);

}  // namespace twintree
