#include "twintree/scheme.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "twintree/decide.hpp"

namespace twintree {

std::optional<std::string> validate_error(const Scheme& s) {
  int n = s.n_states();
  if (n == 0) return "scheme has no states";
  if (static_cast<int>(s.children.size()) != n)
    return "children table size does not match state count";
  if (s.root < 0 || s.root >= n) return "root state index out of range";
  std::set<std::string> names;
  for (int q = 0; q < n; ++q) {
    if (s.states[q].empty()) return "state " + std::to_string(q) + " has an empty name";
    if (!names.insert(s.states[q]).second)
      return "duplicate state name '" + s.states[q] + "'";
  }
  for (int q = 0; q < n; ++q) {
    const auto& list = s.children[q];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].target < 0 || list[i].target >= n)
        return "state '" + s.states[q] + "' has a child target out of range";
      if (i > 0 && list[i].target == list[i - 1].target)
        return "state '" + s.states[q] + "' lists target '" + s.states[list[i].target] +
               "' twice";
      if (i > 0 && list[i].target < list[i - 1].target)
        return "children of state '" + s.states[q] + "' are not sorted by target";
    }
  }
  auto reach = reachable_states(s);
  if (static_cast<int>(reach.size()) != n) {
    std::vector<char> in(n, 0);
    for (int q : reach) in[q] = 1;
    for (int q = 0; q < n; ++q)
      if (!in[q]) return "state '" + s.states[q] + "' is unreachable from the root";
  }
  return std::nullopt;
}

bool validate(const Scheme& s) { return !validate_error(s).has_value(); }

std::vector<int> reachable_states(const Scheme& s) {
  std::vector<char> seen(s.n_states(), 0);
  std::vector<int> out;
  std::queue<int> q;
  if (s.root < 0 || s.root >= s.n_states()) return out;
  q.push(s.root);
  seen[s.root] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    out.push_back(v);
    for (const auto& e : s.children[v])
      if (e.target >= 0 && e.target < s.n_states() && !seen[e.target]) {
        seen[e.target] = 1;
        q.push(e.target);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Multiplicity child_sum(const Scheme& s, int q) {
  bool any = false;
  Multiplicity total = Multiplicity::finite(1);
  for (const auto& e : s.children[q]) {
    total = any ? total + e.mult : e.mult;
    any = true;
  }
  return any ? total : Multiplicity::finite(1);  // callers check for leaves first
}

bool is_leaf(const Scheme& s, int q) { return s.children[q].empty(); }

// cycle through q, as the state sequence q -> ... -> q, or empty if none
std::vector<int> cycle_through(const Scheme& s, int q) {
  int n = s.n_states();
  std::vector<int> from(n, -1);   // predecessor on the BFS tree out of q
  std::vector<char> seen(n, 0);
  std::queue<int> bfs;
  for (const auto& e : s.children[q]) {
    if (e.target == q) return {q};  // self-loop
    if (!seen[e.target]) {
      seen[e.target] = 1;
      from[e.target] = q;
      bfs.push(e.target);
    }
  }
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (const auto& e : s.children[v]) {
      if (e.target == q) {
        std::vector<int> path = {q};
        for (int w = v; w != q; w = from[w]) path.push_back(w);
        std::reverse(path.begin() + 1, path.end());
        return path;
      }
      if (!seen[e.target]) {
        seen[e.target] = 1;
        from[e.target] = v;
        bfs.push(e.target);
      }
    }
  }
  return {};
}

}  // namespace

ClassificationReport classify(const Scheme& s) {
  ClassificationReport r;
  auto reach = reachable_states(s);

  r.locally_finite = true;
  for (int q : reach) {
    for (const auto& e : s.children[q])
      if (e.mult.is_omega()) {
        r.locally_finite = false;
        if (!r.omega_state) r.omega_state = q;
        break;
      }
    if (r.omega_state) break;
  }

  // a reachable cycle is exactly an infinite root path, i.e. a ray
  r.rayless = true;
  for (int q : reach) {
    auto cyc = cycle_through(s, q);
    if (!cyc.empty()) {
      r.rayless = false;
      r.cycle = cyc;
      break;
    }
  }

  // Comb rule: some reachable cycle passes through a state with child
  // multiplicity sum >= 2. Each revisit of that state along the cyclic ray
  // sprouts a disjoint nonempty subtree (a tooth); conversely, cycles of
  // sum-1 states are bare rays with nothing attached beyond a finite prefix.
  r.contains_comb = false;
  for (int q : reach) {
    if (is_leaf(s, q)) continue;
    Multiplicity total = child_sum(s, q);
    bool fat = total.is_omega() || total.count() >= 2;
    if (!fat) continue;
    auto cyc = cycle_through(s, q);
    if (!cyc.empty()) {
      r.contains_comb = true;
      r.comb_cycle = cyc;
      r.comb_state = q;
      break;
    }
  }

  r.finite = r.rayless && r.locally_finite;
  r.nearly_finite = r.locally_finite && !r.contains_comb;
  return r;
}

namespace {

std::string unique_name(std::set<std::string>& used, std::string base) {
  while (used.count(base)) base += "_x";
  used.insert(base);
  return base;
}

}  // namespace

Scheme truncate(const Scheme& s, int n) {
  if (n < 0) throw BadParams("truncation depth must be >= 0");
  Scheme out;
  out.name = s.name + "_trunc" + std::to_string(n);
  std::map<std::pair<int, int>, int> id;  // (state, depth) -> new index
  std::set<std::string> used;
  std::vector<std::pair<int, int>> of_new;
  std::queue<std::pair<int, int>> bfs;

  auto intern = [&](int state, int depth) {
    auto key = std::make_pair(state, depth);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    int idx = static_cast<int>(of_new.size());
    id[key] = idx;
    of_new.push_back(key);
    out.states.push_back(unique_name(used, s.states[state] + "_" + std::to_string(depth)));
    bfs.push(key);
    return idx;
  };

  out.root = intern(s.root, 0);
  while (!bfs.empty()) {
    auto [state, depth] = bfs.front();
    bfs.pop();
    std::vector<SchemeEntry> list;
    if (depth < n)
      for (const auto& e : s.children[state])
        list.push_back({intern(e.target, depth + 1), e.mult});
    std::sort(list.begin(), list.end(),
              [](const SchemeEntry& a, const SchemeEntry& b) { return a.target < b.target; });
    out.children.push_back(std::move(list));
  }
  // queue order and children order agree: children rows were appended in the
  // same BFS order that assigned the indices
  return out;
}

std::optional<std::uint64_t> finite_unfolding_size(const Scheme& s) {
  auto cls = classify(s);
  if (!cls.finite) return std::nullopt;
  // acyclic here, so plain memoized recursion terminates
  std::vector<std::optional<Multiplicity>> memo(s.n_states());
  auto size_of = [&](auto&& self, int q) -> Multiplicity {
    if (memo[q]) return *memo[q];
    Multiplicity total = Multiplicity::finite(1);
    for (const auto& e : s.children[q]) total = total + e.mult * self(self, e.target);
    memo[q] = total;
    return total;
  };
  Multiplicity total = size_of(size_of, s.root);
  std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max() - 1;
  if (total.is_omega() || total.count() >= saturated) return std::nullopt;
  return total.count();
}

std::optional<int> finite_unfolding_height(const Scheme& s) {
  auto cls = classify(s);
  if (!cls.rayless) return std::nullopt;
  std::vector<int> memo(s.n_states(), -1);
  auto height_of = [&](auto&& self, int q) -> int {
    if (memo[q] >= 0) return memo[q];
    int h = 0;
    for (const auto& e : s.children[q]) h = std::max(h, 1 + self(self, e.target));
    memo[q] = h;
    return h;
  };
  return height_of(height_of, s.root);
}

RootedFiniteTree materialize(const Scheme& s, std::size_t cap) {
  auto cls = classify(s);
  if (!cls.rayless)
    throw InfiniteUnfolding("unfolding of '" + s.name + "' has an infinite path");
  if (!cls.locally_finite)
    throw InfiniteUnfolding("unfolding of '" + s.name + "' has an omega-degree vertex");
  auto size = finite_unfolding_size(s);
  if (!size || *size > cap)
    throw CapExceeded("unfolding of '" + s.name + "' exceeds the materialization cap");

  std::vector<int> parent = {-1};
  std::vector<int> state_of = {s.root};
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (const auto& e : s.children[state_of[v]]) {
      for (std::uint64_t c = 0; c < e.mult.count(); ++c) {
        parent.push_back(v);
        state_of.push_back(e.target);
        bfs.push(static_cast<int>(parent.size()) - 1);
      }
    }
  }
  return RootedFiniteTree(std::move(parent));
}

bool address_valid(const Scheme& s, const VertexAddress& a) {
  int cur = s.root;
  for (const auto& step : a.steps) {
    const SchemeEntry* found = nullptr;
    for (const auto& e : s.children[cur])
      if (e.target == step.state) {
        found = &e;
        break;
      }
    if (!found) return false;
    if (!found->mult.is_omega() && step.copy >= found->mult.count()) return false;
    cur = step.state;
  }
  return true;
}

Scheme reroot(const Scheme& s, const VertexAddress& a) {
  // walk the address, remembering each ancestor and the entry taken out of it
  int cur = s.root;
  std::vector<int> anc = {cur};
  std::vector<int> taken_target;
  for (const auto& step : a.steps) {
    const SchemeEntry* found = nullptr;
    for (const auto& e : s.children[cur])
      if (e.target == step.state) {
        found = &e;
        break;
      }
    if (!found)
      throw BadAddress("no child entry with state '" +
                       (step.state >= 0 && step.state < s.n_states() ? s.states[step.state]
                                                                     : std::string("?")) +
                       "' at this point of the address");
    if (!found->mult.is_omega() && step.copy >= found->mult.count())
      throw BadAddress("copy index " + std::to_string(step.copy) + " exceeds multiplicity " +
                       found->mult.str());
    taken_target.push_back(step.state);
    cur = step.state;
    anc.push_back(cur);
  }
  std::size_t d = a.steps.size();
  if (d == 0) return s;

  Scheme out;
  out.name = s.name + "_reroot";
  out.states = s.states;
  out.children = s.children;
  std::set<std::string> used(out.states.begin(), out.states.end());

  // context state k: ancestor anc[k] as seen from below, its used child slot
  // freed (multiplicity decremented, omega staying omega) and its own parent
  // attached underneath (k >= 1)
  std::vector<int> ctx(d);
  for (std::size_t k = 0; k < d; ++k) {
    ctx[k] = out.n_states();
    out.states.push_back(
        unique_name(used, s.states[anc[k]] + "_ctx" + std::to_string(k)));
    std::vector<SchemeEntry> list;
    for (const auto& e : s.children[anc[k]]) {
      if (e.target == taken_target[k]) {
        bool still;
        std::uint64_t rest = e.mult.decremented_count_or_omega(&still);
        if (still)
          list.push_back({e.target, Multiplicity::omega()});
        else if (rest > 0)
          list.push_back({e.target, Multiplicity::finite(rest)});
      } else {
        list.push_back(e);
      }
    }
    if (k > 0) list.push_back({ctx[k - 1], Multiplicity::finite(1)});
    out.children.push_back(std::move(list));
  }

  int fresh_root = out.n_states();
  out.states.push_back(unique_name(used, s.states[anc[d]] + "_root"));
  std::vector<SchemeEntry> root_list = s.children[anc[d]];
  root_list.push_back({ctx[d - 1], Multiplicity::finite(1)});
  out.children.push_back(std::move(root_list));
  out.root = fresh_root;

  // prune states no longer reachable; the order-preserving reindex keeps
  // every child list sorted
  auto keep = reachable_states(out);
  std::vector<int> newid(out.n_states(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) newid[keep[i]] = static_cast<int>(i);
  Scheme pruned;
  pruned.name = out.name;
  pruned.root = newid[out.root];
  for (int q : keep) {
    pruned.states.push_back(out.states[q]);
    std::vector<SchemeEntry> list;
    for (const auto& e : out.children[q]) list.push_back({newid[e.target], e.mult});
    pruned.children.push_back(std::move(list));
  }
  return pruned;
}

CanonicalCode scheme_code(const Scheme& s, std::uint64_t rep_cap) {
  auto cls = classify(s);
  if (!cls.rayless)
    throw InfiniteUnfolding("canonical codes exist only for unfoldings without infinite paths");
  std::vector<std::optional<std::string>> memo(s.n_states());
  auto code_of = [&](auto&& self, int q) -> const std::string& {
    if (memo[q]) return *memo[q];
    std::map<std::string, Multiplicity> groups;  // sub-code -> total copies
    for (const auto& e : s.children[q]) {
      const std::string& sub = self(self, e.target);
      auto it = groups.find(sub);
      if (it == groups.end())
        groups.emplace(sub, e.mult);
      else
        it->second = it->second + e.mult;
    }
    std::string text = "(";
    for (const auto& [sub, m] : groups) {
      if (m.is_omega()) {
        text += sub;
        text += "*w";
      } else {
        if (m.count() > rep_cap)
          throw CapExceeded("code repetition exceeds cap");
        for (std::uint64_t i = 0; i < m.count(); ++i) text += sub;
      }
    }
    text += ")";
    memo[q] = std::move(text);
    return *memo[q];
  };
  return CanonicalCode{code_of(code_of, s.root)};
}

std::optional<int> local_iso_up_to(const Scheme& a, const Scheme& b, int max_depth) {
  for (int n = 0; n <= max_depth; ++n) {
    auto cert = scheme_iso_rooted(truncate(a, n), truncate(b, n));
    if (cert.verdict != Verdict::Yes) return n;
  }
  return std::nullopt;
}

Multiplicity truncation_size(const Scheme& s, int n) {
  // sz[q] holds the size of the depth-k truncation below a state-q vertex
  std::vector<Multiplicity> sz(s.n_states(), Multiplicity::finite(1));
  for (int k = 1; k <= n; ++k) {
    std::vector<Multiplicity> next(s.n_states(), Multiplicity::finite(1));
    for (int q = 0; q < s.n_states(); ++q)
      for (const auto& e : s.children[q]) next[q] = next[q] + e.mult * sz[e.target];
    sz = std::move(next);
  }
  return sz[s.root];
}

AddressEnumeration enumerate_addresses(const Scheme& s, int max_depth, std::size_t cap) {
  AddressEnumeration out;
  std::queue<VertexAddress> bfs;
  bfs.push(VertexAddress{});
  while (!bfs.empty()) {
    if (out.addresses.size() >= cap) return out;  // complete stays false
    VertexAddress a = std::move(bfs.front());
    bfs.pop();
    int state = a.steps.empty() ? s.root : a.steps.back().state;
    if (static_cast<int>(a.depth()) < max_depth)
      for (const auto& e : s.children[state]) {
        VertexAddress child = a;
        child.steps.push_back({e.target, 0});
        bfs.push(std::move(child));
      }
    out.addresses.push_back(std::move(a));
  }
  out.complete = true;
  return out;
}

std::vector<std::pair<Multiplicity, Multiplicity>> degree_histogram(const Scheme& s, bool* exact) {
  *exact = true;
  auto reach = reachable_states(s);
  int n = s.n_states();

  // states with infinitely many occurrences: those fed by a cycle, or
  // reached along a path through an omega entry
  std::vector<char> infinite(n, 0);
  for (int q : reach)
    if (!cycle_through(s, q).empty()) infinite[q] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int q : reach)
      for (const auto& e : s.children[q]) {
        bool taint = infinite[q] || e.mult.is_omega();
        if (taint && !infinite[e.target]) {
          infinite[e.target] = 1;
          changed = true;
        }
      }
  }

  // Exact occurrence counts for the rest. Every path from the root to a
  // non-infinite state stays within non-infinite states (anything downstream
  // of an infinite state is infinite), so that part is a DAG rooted at the
  // root and a topological pass counts path products. If the root itself is
  // infinite then every state is, and this pass is empty.
  const std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max() - 1;
  std::vector<Multiplicity> cnt(n, Multiplicity::finite(1));
  std::vector<char> has(n, 0);
  {
    std::vector<int> indeg(n, 0);
    for (int q : reach)
      if (!infinite[q])
        for (const auto& e : s.children[q])
          if (!infinite[e.target]) ++indeg[e.target];
    std::queue<int> topo;
    for (int q : reach)
      if (!infinite[q] && indeg[q] == 0) topo.push(q);
    if (!infinite[s.root]) has[s.root] = 1;
    while (!topo.empty()) {
      int q = topo.front();
      topo.pop();
      for (const auto& e : s.children[q]) {
        if (infinite[e.target]) continue;
        if (has[q]) {
          Multiplicity more = cnt[q] * e.mult;
          cnt[e.target] = has[e.target] ? cnt[e.target] + more : more;
          has[e.target] = 1;
        }
        if (--indeg[e.target] == 0) topo.push(e.target);
      }
    }
  }

  std::map<std::uint64_t, Multiplicity> hist;  // degree -> occurrences
  const std::uint64_t omega_key = std::numeric_limits<std::uint64_t>::max();
  auto bump = [&](std::uint64_t deg, Multiplicity c) {
    if (deg == 0) return;  // only the one-vertex tree; its histogram is empty
    auto it = hist.find(deg);
    if (it == hist.end())
      hist.emplace(deg, c);
    else
      it->second = it->second + c;
  };
  auto degree_key = [&](int q, bool has_parent) -> std::uint64_t {
    bool any = false;
    Multiplicity sum = Multiplicity::finite(1);
    for (const auto& e : s.children[q]) {
      sum = any ? sum + e.mult : e.mult;
      any = true;
    }
    if (!any) return has_parent ? 1 : 0;
    if (sum.is_omega()) return omega_key;
    if (sum.count() >= saturated) *exact = false;
    return sum.count() + (has_parent ? 1 : 0);
  };

  bump(degree_key(s.root, false), Multiplicity::finite(1));  // the root vertex
  for (int q : reach) {
    Multiplicity occ;
    if (infinite[q]) {
      occ = Multiplicity::omega();
    } else {
      occ = cnt[q];
      if (occ.count() >= saturated) {
        *exact = false;  // overflowed, contribution dropped
        continue;
      }
    }
    // all occurrences of q except the root vertex itself have a parent
    if (q == s.root && !occ.is_omega()) {
      if (occ.count() == 1) continue;
      occ = Multiplicity::finite(occ.count() - 1);
    }
    bump(degree_key(q, true), occ);
  }

  std::vector<std::pair<Multiplicity, Multiplicity>> out;
  for (const auto& [deg, c] : hist)
    out.push_back({deg == omega_key ? Multiplicity::omega() : Multiplicity::finite(deg), c});
  return out;
}

}  // namespace twintree
