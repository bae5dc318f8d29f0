#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twintree/errors.hpp"

namespace twintree {

// Finite tree with a distinguished root, stored as a parent array.
// parent[root] == -1; every other vertex's parent chain reaches the root.
class RootedFiniteTree {
 public:
  explicit RootedFiniteTree(std::vector<int> parent);
  static RootedFiniteTree single_vertex();

  int n() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int depth(int v) const { return depth_[v]; }
  int height() const { return height_; }

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
  int root_ = 0;
  int height_ = 0;
};

// Finite unrooted tree on vertices 0..n-1 with exactly n-1 edges, connected.
class FiniteTree {
 public:
  FiniteTree(int n, std::vector<std::pair<int, int>> edges);
  static FiniteTree single_vertex();

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// Canonical name of a rooted tree: equal text iff the trees are isomorphic.
// Children are grouped by identical sub-code; finite groups render as
// repetition, omega groups (only reachable via schemes) render as "*w".
struct CanonicalCode {
  std::string text;
  friend bool operator==(const CanonicalCode& a, const CanonicalCode& b) { return a.text == b.text; }
  friend bool operator!=(const CanonicalCode& a, const CanonicalCode& b) { return a.text != b.text; }
  friend bool operator<(const CanonicalCode& a, const CanonicalCode& b) { return a.text < b.text; }
};

// Injective vertex map; image[v] is the target vertex assigned to source v.
struct VertexMap {
  std::vector<int> image;
};

CanonicalCode ahu_code(const RootedFiniteTree& t);

// Subtrees hanging off the root, one per root child, in child order.
std::vector<RootedFiniteTree> branches(const RootedFiniteTree& t);

bool iso_rooted(const RootedFiniteTree& a, const RootedFiniteTree& b);
bool iso_unrooted(const FiniteTree& a, const FiniteTree& b);

// Root-preserving injective homomorphism s -> t, if one exists. Such maps
// necessarily preserve depth, so the search matches children level by level;
// ties are resolved toward the lowest target child index.
std::optional<VertexMap> embed_rooted(const RootedFiniteTree& s, const RootedFiniteTree& t);

std::optional<VertexMap> embed_unrooted(const FiniteTree& s, const FiniteTree& t);

// All root-preserving self-embeddings of t. Throws CapExceeded when more
// than cap maps exist.
std::vector<VertexMap> enumerate_root_self_embeddings(const RootedFiniteTree& t, std::size_t cap);

// Remove a leaf; remaining vertices are reindexed preserving their order.
FiniteTree remove_leaf(const FiniteTree& t, int v);

// helpers shared by tests, the CLI and the check suites
RootedFiniteTree rooted_at(const FiniteTree& t, int r);
FiniteTree to_unrooted(const RootedFiniteTree& t);
std::vector<int> tree_centers(const FiniteTree& t);
bool is_root_embedding(const RootedFiniteTree& s, const RootedFiniteTree& t, const VertexMap& m);

// Every rooted tree shape on exactly n vertices (n >= 1), one representative
// per isomorphism class, found by exhausting parent arrays with parent[v] < v
// and deduplicating on the canonical code.
std::vector<RootedFiniteTree> all_rooted_trees(int n);

}  // namespace twintree
