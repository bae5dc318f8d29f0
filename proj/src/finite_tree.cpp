#include "twintree/finite_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace twintree {

RootedFiniteTree::RootedFiniteTree(std::vector<int> parent) : parent_(std::move(parent)) {
  int n = static_cast<int>(parent_.size());
  if (n == 0) throw ValidationError("tree needs at least one vertex");
  root_ = -1;
  for (int v = 0; v < n; ++v) {
    if (parent_[v] == -1) {
      if (root_ != -1) throw ValidationError("more than one root");
      root_ = v;
    } else if (parent_[v] < 0 || parent_[v] >= n) {
      throw ValidationError("parent index out of range");
    }
  }
  if (root_ == -1) throw ValidationError("no root (no -1 entry in parent array)");

  children_.assign(n, {});
  for (int v = 0; v < n; ++v)
    if (v != root_) children_[parent_[v]].push_back(v);

  // depths via BFS from the root; every vertex must be reached
  depth_.assign(n, -1);
  depth_[root_] = 0;
  std::queue<int> q;
  q.push(root_);
  int seen = 0;
  height_ = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ++seen;
    height_ = std::max(height_, depth_[v]);
    for (int c : children_[v]) {
      depth_[c] = depth_[v] + 1;
      q.push(c);
    }
  }
  if (seen != n) throw ValidationError("parent array contains a cycle");
}

RootedFiniteTree RootedFiniteTree::single_vertex() { return RootedFiniteTree({-1}); }

FiniteTree::FiniteTree(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ <= 0) throw ValidationError("tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != n_ - 1)
    throw ValidationError("a tree on n vertices has exactly n-1 edges");
  adj_.assign(n_, {});
  for (auto [u, v] : edges_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v)
      throw ValidationError("bad edge endpoints");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  // connectivity
  std::vector<char> vis(n_, 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  int seen = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ++seen;
    for (int w : adj_[v])
      if (!vis[w]) {
        vis[w] = 1;
        q.push(w);
      }
  }
  if (seen != n_) throw ValidationError("edge set is not connected");
}

FiniteTree FiniteTree::single_vertex() { return FiniteTree(1, {}); }

namespace {

// codes for every vertex, children sorted so equal shapes get equal strings
std::vector<std::string> vertex_codes(const RootedFiniteTree& t) {
  int n = t.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return t.depth(a) > t.depth(b); });
  std::vector<std::string> code(n);
  for (int v : order) {
    std::vector<std::string> parts;
    parts.reserve(t.children(v).size());
    for (int c : t.children(v)) parts.push_back(code[c]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    s += ")";
    code[v] = std::move(s);
  }
  return code;
}

}  // namespace

CanonicalCode ahu_code(const RootedFiniteTree& t) {
  return CanonicalCode{vertex_codes(t)[t.root()]};
}

namespace {

// rebuild the subtree rooted at v as a standalone tree, original vertex
// order preserved
RootedFiniteTree extract_subtree(const RootedFiniteTree& t, int v) {
  std::vector<int> verts;
  std::queue<int> q;
  q.push(v);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    verts.push_back(u);
    for (int c : t.children(u)) q.push(c);
  }
  std::sort(verts.begin(), verts.end());
  std::vector<int> newid(t.n(), -1);
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) newid[verts[i]] = i;
  std::vector<int> parent(verts.size());
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
    int u = verts[i];
    parent[i] = (u == v) ? -1 : newid[t.parent(u)];
  }
  return RootedFiniteTree(parent);
}

}  // namespace

std::vector<RootedFiniteTree> branches(const RootedFiniteTree& t) {
  std::vector<RootedFiniteTree> out;
  for (int c : t.children(t.root())) out.push_back(extract_subtree(t, c));
  return out;
}

bool iso_rooted(const RootedFiniteTree& a, const RootedFiniteTree& b) {
  if (a.n() != b.n()) return false;
  return ahu_code(a) == ahu_code(b);
}

RootedFiniteTree rooted_at(const FiniteTree& t, int r) {
  std::vector<int> parent(t.n(), -2);
  parent[r] = -1;
  std::queue<int> q;
  q.push(r);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : t.neighbors(v))
      if (parent[w] == -2) {
        parent[w] = v;
        q.push(w);
      }
  }
  return RootedFiniteTree(parent);
}

FiniteTree to_unrooted(const RootedFiniteTree& t) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < t.n(); ++v)
    if (v != t.root()) edges.push_back({t.parent(v), v});
  return FiniteTree(t.n(), edges);
}

std::vector<int> tree_centers(const FiniteTree& t) {
  int n = t.n();
  if (n == 1) return {0};
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = t.degree(v);
  std::vector<int> layer;
  std::vector<char> removed(n, 0);
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) layer.push_back(v);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = 1;
      --remaining;
      for (int w : t.neighbors(v))
        if (!removed[w] && --deg[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) centers.push_back(v);
  return centers;
}

bool iso_unrooted(const FiniteTree& a, const FiniteTree& b) {
  if (a.n() != b.n()) return false;
  auto ca = tree_centers(a);
  auto cb = tree_centers(b);
  if (ca.size() != cb.size()) return false;
  CanonicalCode code_a = ahu_code(rooted_at(a, ca[0]));
  for (int c : cb)
    if (code_a == ahu_code(rooted_at(b, c))) return true;
  return false;
}

namespace {

// Kuhn's augmenting-path matching on a small bipartite graph given as
// adjacency lists left -> right.
struct Matcher {
  const std::vector<std::vector<int>>& adj;
  int n_right;
  std::vector<int> match_right;  // right -> left or -1
  std::vector<char> used;

  Matcher(const std::vector<std::vector<int>>& a, int nr)
      : adj(a), n_right(nr), match_right(nr, -1) {}

  bool try_augment(int l) {
    for (int r : adj[l]) {
      if (used[r]) continue;
      used[r] = 1;
      if (match_right[r] == -1 || try_augment(match_right[r])) {
        match_right[r] = l;
        return true;
      }
    }
    return false;
  }

  // true iff every left vertex can be matched
  bool saturates_left() {
    for (int l = 0; l < static_cast<int>(adj.size()); ++l) {
      used.assign(n_right, 0);
      if (!try_augment(l)) return false;
    }
    return true;
  }
};

bool complete_matching_exists(const std::vector<std::vector<int>>& adj, int n_right) {
  for (auto& row : adj)
    if (row.empty()) return false;
  Matcher m(adj, n_right);
  return m.saturates_left();
}

// feasibility table can[v][w]: subtree of s at v embeds into subtree of t at w
std::vector<std::vector<char>> embed_table(const RootedFiniteTree& s, const RootedFiniteTree& t) {
  std::vector<std::vector<char>> can(s.n(), std::vector<char>(t.n(), 0));
  std::vector<int> order(s.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return s.depth(a) > s.depth(b); });
  for (int v : order) {
    for (int w = 0; w < t.n(); ++w) {
      const auto& cs = s.children(v);
      const auto& ct = t.children(w);
      if (cs.size() > ct.size()) continue;
      if (cs.empty()) {
        can[v][w] = 1;
        continue;
      }
      std::vector<std::vector<int>> adj(cs.size());
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < ct.size(); ++j)
          if (can[cs[i]][ct[j]]) adj[i].push_back(static_cast<int>(j));
      can[v][w] = complete_matching_exists(adj, static_cast<int>(ct.size())) ? 1 : 0;
    }
  }
  return can;
}

// assign source children to target children; each source child takes the
// lowest-indexed target child that keeps the rest completable
std::vector<int> lexicographic_child_assignment(const std::vector<std::vector<int>>& adj,
                                                int n_right) {
  int k = static_cast<int>(adj.size());
  std::vector<int> chosen(k, -1);
  std::vector<char> taken(n_right, 0);
  for (int i = 0; i < k; ++i) {
    for (int r : adj[i]) {
      if (taken[r]) continue;
      // check the remaining children still have a complete matching
      std::vector<std::vector<int>> rest;
      for (int j = i + 1; j < k; ++j) {
        std::vector<int> row;
        for (int x : adj[j])
          if (!taken[x] && x != r) row.push_back(x);
        rest.push_back(std::move(row));
      }
      if (complete_matching_exists(rest, n_right)) {
        chosen[i] = r;
        taken[r] = 1;
        break;
      }
    }
    if (chosen[i] == -1) throw Error("internal: assignment extraction failed");
  }
  return chosen;
}

}  // namespace

std::optional<VertexMap> embed_rooted(const RootedFiniteTree& s, const RootedFiniteTree& t) {
  auto can = embed_table(s, t);
  if (!can[s.root()][t.root()]) return std::nullopt;
  VertexMap m;
  m.image.assign(s.n(), -1);
  m.image[s.root()] = t.root();
  std::queue<int> q;
  q.push(s.root());
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    int w = m.image[v];
    const auto& cs = s.children(v);
    const auto& ct = t.children(w);
    if (cs.empty()) continue;
    std::vector<std::vector<int>> adj(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = 0; j < ct.size(); ++j)
        if (can[cs[i]][ct[j]]) adj[i].push_back(static_cast<int>(j));
    auto chosen = lexicographic_child_assignment(adj, static_cast<int>(ct.size()));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      m.image[cs[i]] = ct[chosen[i]];
      q.push(cs[i]);
    }
  }
  return m;
}

std::optional<VertexMap> embed_unrooted(const FiniteTree& s, const FiniteTree& t) {
  if (s.n() > t.n()) return std::nullopt;
  // an embedding sending vertex 0 of s to b is exactly a root-preserving
  // embedding of (s,0) into (t,b), so trying every b is complete
  RootedFiniteTree rs = rooted_at(s, 0);
  for (int b = 0; b < t.n(); ++b) {
    auto m = embed_rooted(rs, rooted_at(t, b));
    if (m) return m;
  }
  return std::nullopt;
}

bool is_root_embedding(const RootedFiniteTree& s, const RootedFiniteTree& t, const VertexMap& m) {
  if (static_cast<int>(m.image.size()) != s.n()) return false;
  std::vector<char> hit(t.n(), 0);
  for (int v = 0; v < s.n(); ++v) {
    int w = m.image[v];
    if (w < 0 || w >= t.n() || hit[w]) return false;
    hit[w] = 1;
  }
  if (m.image[s.root()] != t.root()) return false;
  for (int v = 0; v < s.n(); ++v) {
    if (v == s.root()) continue;
    int pv = s.parent(v);
    int w = m.image[v];
    // edges must map to edges; with the root fixed this forces the parent
    // relation to be preserved
    if (t.parent(w) != m.image[pv] && t.parent(m.image[pv]) != w) return false;
  }
  return true;
}

namespace {

// Depth preservation means a root-preserving embedding sends children of v
// to children of image[v], so walking vertices in BFS order the candidates
// for v are exactly the unused children of its parent's image.
void enumerate_maps(const RootedFiniteTree& t, const std::vector<int>& order, std::size_t oi,
                    std::vector<int>& image, std::vector<char>& taken, std::size_t cap,
                    std::vector<VertexMap>& out) {
  if (oi == order.size()) {
    if (out.size() >= cap) throw CapExceeded("self-embedding count exceeds cap");
    out.push_back(VertexMap{image});
    return;
  }
  int v = order[oi];
  for (int c : t.children(image[t.parent(v)])) {
    if (taken[c]) continue;
    image[v] = c;
    taken[c] = 1;
    enumerate_maps(t, order, oi + 1, image, taken, cap, out);
    taken[c] = 0;
    image[v] = -1;
  }
}

}  // namespace

std::vector<VertexMap> enumerate_root_self_embeddings(const RootedFiniteTree& t, std::size_t cap) {
  std::vector<int> order;  // BFS order, root excluded
  std::queue<int> q;
  q.push(t.root());
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v != t.root()) order.push_back(v);
    for (int c : t.children(v)) q.push(c);
  }
  std::vector<VertexMap> out;
  std::vector<int> image(t.n(), -1);
  std::vector<char> taken(t.n(), 0);
  image[t.root()] = t.root();
  taken[t.root()] = 1;
  enumerate_maps(t, order, 0, image, taken, cap, out);
  return out;
}

FiniteTree remove_leaf(const FiniteTree& t, int v) {
  if (v < 0 || v >= t.n()) throw BadIndex("vertex out of range");
  if (t.n() == 1) throw LastVertex("cannot remove the only vertex");
  if (t.degree(v) != 1) throw NotALeaf("vertex has degree != 1");
  std::vector<std::pair<int, int>> edges;
  auto shift = [&](int u) { return u > v ? u - 1 : u; };
  for (auto [a, b] : t.edges()) {
    if (a == v || b == v) continue;
    edges.push_back({shift(a), shift(b)});
  }
  return FiniteTree(t.n() - 1, edges);
}

std::vector<RootedFiniteTree> all_rooted_trees(int n) {
  if (n < 1) throw BadParams("n must be >= 1");
  std::vector<RootedFiniteTree> reps;
  std::map<std::string, bool> seen;
  std::vector<int> parent(n);
  parent[0] = -1;
  // odometer over parent[v] in [0, v)
  std::vector<int> counter(n, 0);
  while (true) {
    for (int v = 1; v < n; ++v) parent[v] = counter[v];
    RootedFiniteTree t(parent);
    auto code = ahu_code(t).text;
    if (!seen.count(code)) {
      seen[code] = true;
      reps.push_back(std::move(t));
    }
    int v = n - 1;
    while (v >= 1) {
      if (++counter[v] < v) break;
      counter[v] = 0;
      --v;
    }
    if (v < 1) break;
  }
  return reps;
}

}  // namespace twintree
