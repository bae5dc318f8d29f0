#include "twintree/random_gen.hpp"

#include <algorithm>
#include <random>

#include "twintree/errors.hpp"

namespace twintree {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1) + 0xbf58476d1ce4e5b9ull * (index + 1);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

RootedFiniteTree random_rooted_tree(int n, std::uint64_t seed) {
  if (n < 1) throw BadParams("a tree needs at least one vertex");
  std::mt19937_64 rng(seed);
  // assign parents in a shuffled order so that the root's children are not
  // biased toward low indices
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[draw(rng, i + 1)]);
  // order[0] becomes the root; each later vertex hangs off an earlier one
  std::vector<int> parent(n, -1);
  for (int i = 1; i < n; ++i) {
    int v = order[i];
    parent[v] = order[draw(rng, i)];
  }
  // re-root at vertex 0 for a stable presentation: relabel so the root is 0
  std::vector<int> relabel(n);
  relabel[order[0]] = 0;
  int next = 1;
  for (int v = 0; v < n; ++v)
    if (v != order[0]) relabel[v] = next++;
  std::vector<int> parent2(n, -1);
  for (int v = 0; v < n; ++v)
    if (parent[v] != -1) parent2[relabel[v]] = relabel[parent[v]];
  return RootedFiniteTree(parent2);
}

Scheme random_scheme(int states, std::uint64_t max_mult, double omega_prob,
                     std::uint64_t seed) {
  if (states < 1) throw BadParams("a scheme needs at least one state");
  if (max_mult < 1) throw BadParams("multiplicities are positive");
  std::mt19937_64 rng(seed);
  std::uint64_t omega_threshold = static_cast<std::uint64_t>(omega_prob * 1e6 + 0.5);
  auto draw_mult = [&]() {
    if (draw(rng, 1'000'000) < omega_threshold) return Multiplicity::omega();
    return Multiplicity::finite(1 + draw(rng, max_mult));
  };

  Scheme s;
  s.name = "rnd";
  s.root = 0;
  for (int q = 0; q < states; ++q) s.states.push_back("q" + std::to_string(q));
  s.children.assign(states, {});

  // skeleton: state q > 0 hangs off some earlier state, so everything is
  // reachable from state 0
  std::vector<std::vector<char>> has(states, std::vector<char>(states, 0));
  for (int q = 1; q < states; ++q) {
    int from = static_cast<int>(draw(rng, q));
    has[from][q] = 1;
    s.children[from].push_back({q, draw_mult()});
  }
  // extra edges anywhere, including back edges and self-loops
  int extra = states >= 2 ? static_cast<int>(draw(rng, 2 * states)) : static_cast<int>(draw(rng, 2));
  for (int e = 0; e < extra; ++e) {
    int from = static_cast<int>(draw(rng, states));
    int to = static_cast<int>(draw(rng, states));
    if (has[from][to]) continue;
    has[from][to] = 1;
    s.children[from].push_back({to, draw_mult()});
  }
  for (auto& row : s.children)
    std::sort(row.begin(), row.end(),
              [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
  return s;
}

}  // namespace twintree
