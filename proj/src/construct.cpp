#include "twintree/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "twintree/errors.hpp"

namespace twintree {

int ToothPattern::bit(std::size_t i) const {
  if (i < preperiod.size()) return preperiod[i];
  return period[(i - preperiod.size()) % period.size()];
}

bool ToothPattern::operator==(const ToothPattern& other) const {
  return preperiod == other.preperiod && period == other.period;
}

bool ToothPattern::same_sequence(const ToothPattern& other) const {
  // two eventually periodic sequences agree everywhere iff they agree past
  // both preperiods for a full common period
  std::size_t pre = std::max(preperiod.size(), other.preperiod.size());
  std::size_t l = std::lcm(period.size(), other.period.size());
  for (std::size_t i = 0; i < pre + l; ++i)
    if (bit(i) != other.bit(i)) return false;
  return true;
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t k) {
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

namespace {

void check_pattern(const ToothPattern& p) {
  for (int b : p.preperiod)
    if (b != 0 && b != 1) throw BadParams("pattern bits must be 0 or 1");
  if (p.period.empty()) throw BadParams("pattern period must be nonempty");
  bool has_one = false;
  for (int b : p.period) {
    if (b != 0 && b != 1) throw BadParams("pattern bits must be 0 or 1");
    has_one = has_one || b == 1;
  }
  if (!has_one) throw BadParams("pattern period needs a 1");
}

std::string uniquify(std::set<std::string>& used, std::string base) {
  while (used.count(base)) base += "_x";
  used.insert(base);
  return base;
}

// append the states of `other` to `dst`, renaming on clashes; returns the
// index offset of the appended block
int append_states(Scheme& dst, const Scheme& other) {
  std::set<std::string> used(dst.states.begin(), dst.states.end());
  int offset = dst.n_states();
  for (const auto& nm : other.states) dst.states.push_back(uniquify(used, nm));
  for (const auto& row : other.children) {
    auto shifted = row;
    for (auto& e : shifted) e.target += offset;
    dst.children.push_back(std::move(shifted));
  }
  return offset;
}

Scheme prune_unreachable(const Scheme& s) {
  auto reach = reachable_states(s);
  if (static_cast<int>(reach.size()) == s.n_states()) return s;
  std::vector<int> new_index(s.n_states(), -1);
  for (std::size_t i = 0; i < reach.size(); ++i) new_index[reach[i]] = static_cast<int>(i);
  Scheme out;
  out.name = s.name;
  out.root = new_index[s.root];
  for (int q : reach) {
    out.states.push_back(s.states[q]);
    auto row = s.children[q];
    for (auto& e : row) e.target = new_index[e.target];
    std::sort(row.begin(), row.end(),
              [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
    out.children.push_back(std::move(row));
  }
  return out;
}

// sub-scheme presenting the subtree of unfold(t) at any vertex of state q
Scheme branch_at(const Scheme& t, int q, const std::string& name) {
  Scheme b = t;
  b.name = name;
  b.root = q;
  return prune_unreachable(b);
}

// root with an omega bundle of `absorber` copies and one `branch` copy
// alongside; with branch_is_absorber the two entries merge (omega plus one
// is omega)
Scheme absorber_member(const std::string& name, const Scheme& absorber, const Scheme& branch,
                       bool branch_is_absorber) {
  Scheme m;
  m.name = name;
  m.states = {"r"};
  m.root = 0;
  m.children.emplace_back();
  int a_off = append_states(m, absorber);
  if (branch_is_absorber) {
    m.children[0] = {{a_off + absorber.root, Multiplicity::omega()}};
  } else {
    int b_off = append_states(m, branch);
    m.children[0] = {{a_off + absorber.root, Multiplicity::omega()},
                     {b_off + branch.root, Multiplicity::finite(1)}};
    std::sort(m.children[0].begin(), m.children[0].end(),
              [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
  }
  return prune_unreachable(m);
}

}  // namespace

Scheme make_single() {
  Scheme s;
  s.name = "single";
  s.states = {"v"};
  s.root = 0;
  s.children = {{}};
  return s;
}

Scheme make_ray() {
  Scheme s;
  s.name = "ray";
  s.states = {"r"};
  s.root = 0;
  s.children = {{{0, Multiplicity::finite(1)}}};
  return s;
}

Scheme make_d_ary(int d) {
  if (d < 1) throw BadParams("branching degree must be at least 1");
  Scheme s;
  s.name = "ary" + std::to_string(d);
  s.states = {"b"};
  s.root = 0;
  s.children = {{{0, Multiplicity::finite(static_cast<std::uint64_t>(d))}}};
  return s;
}

Scheme make_caterpillar() {
  Scheme s;
  s.name = "cat";
  s.states = {"s", "l"};
  s.root = 0;
  s.children = {{{0, Multiplicity::finite(1)}, {1, Multiplicity::finite(1)}}, {}};
  return s;
}

Scheme make_caterpillar_minus(int k) {
  if (k < 0) throw BadParams("cannot remove a negative number of leaves");
  if (k == 0) {
    Scheme s = make_caterpillar();
    s.name = "cat_minus0";
    return s;
  }
  Scheme s;
  s.name = "cat_minus" + std::to_string(k);
  s.root = 0;
  // k bare spine states, then the caterpillar proper
  for (int i = 0; i < k; ++i) {
    s.states.push_back("p" + std::to_string(i));
    s.children.push_back({{i + 1, Multiplicity::finite(1)}});
  }
  int spine = k, leaf = k + 1;
  s.states.push_back("s");
  s.children.push_back({{spine, Multiplicity::finite(1)}, {leaf, Multiplicity::finite(1)}});
  s.states.push_back("l");
  s.children.push_back({});
  return s;
}

Scheme make_comb(const ToothPattern& p) {
  check_pattern(p);
  Scheme s;
  s.name = "comb";
  s.root = 0;
  int a = static_cast<int>(p.preperiod.size());
  int b = static_cast<int>(p.period.size());
  int tooth = a + b;
  for (int i = 0; i < a + b; ++i) {
    s.states.push_back("c" + std::to_string(i));
    int next = (i < a + b - 1) ? i + 1 : a;  // the last period state wraps
    std::vector<SchemeEntry> row = {{next, Multiplicity::finite(1)}};
    int bit = (i < a) ? p.preperiod[i] : p.period[i - a];
    if (bit) row.push_back({tooth, Multiplicity::finite(1)});
    s.children.push_back(std::move(row));
  }
  s.states.push_back("t");
  s.children.push_back({});
  return s;
}

Scheme make_cherry() {
  Scheme s;
  s.name = "cherry";
  s.states = {"r", "l"};
  s.root = 0;
  s.children = {{{1, Multiplicity::finite(2)}}, {}};
  return s;
}

void validate_twin_family(const TwinFamily& f) {
  std::size_t k = f.members.size();
  std::size_t pairs = k * (k - 1) / 2;
  if (f.twin.size() != pairs || f.iso.size() != pairs)
    throw CertificateFailure("family certificate count does not match the member count");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      std::size_t idx = pair_index(i, j, k);
      const auto& tc = f.twin[idx];
      if (tc.verdict != Verdict::Yes)
        throw CertificateFailure("family pair is not certified as twins");
      if (!tc.forward || !tc.backward)
        throw CertificateFailure("twin certificate is missing a direction");
      Scheme fwd_target =
          tc.forward_reroot ? reroot(f.members[j], *tc.forward_reroot) : f.members[j];
      if (tc.forward->verdict != Verdict::Yes)
        throw CertificateFailure("forward embedding certificate is not a yes");
      verify_embed_certificate(f.members[i], fwd_target, *tc.forward);
      Scheme bwd_target =
          tc.backward_reroot ? reroot(f.members[i], *tc.backward_reroot) : f.members[i];
      if (tc.backward->verdict != Verdict::Yes)
        throw CertificateFailure("backward embedding certificate is not a yes");
      verify_embed_certificate(f.members[j], bwd_target, *tc.backward);

      const auto& ic = f.iso[idx];
      if (ic.verdict != Verdict::No)
        throw CertificateFailure("family pair is not certified as non-isomorphic");
      verify_iso_certificate(f.members[i], f.members[j], ic);
    }
  if (f.failure_depths) {
    if (f.failure_depths->size() != (k >= 1 ? k - 1 : 0))
      throw CertificateFailure("failure depth list length does not match the members");
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const auto& ic = f.iso[pair_index(i, i + 1, k)];
      if (!ic.failure_depth || *ic.failure_depth != (*f.failure_depths)[i])
        throw CertificateFailure("failure depth list disagrees with the certificates");
      if (i > 0 && (*f.failure_depths)[i] <= (*f.failure_depths)[i - 1])
        throw CertificateFailure("failure depths are not strictly increasing");
    }
  }
}

TwinFamily caterpillar_family(int K) {
  if (K < 1) throw BadParams("family needs at least one member");
  TwinFamily f;
  for (int i = 0; i < K; ++i) f.members.push_back(make_caterpillar_minus(i));
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j) {
      // member j is a subtree of member i as rooted, and member i slides
      // onto the spine of member j after rerooting, so the unrooted engine
      // certifies both directions within depth K
      f.twin.push_back(twin_unrooted(f.members[i], f.members[j], K));
      f.iso.push_back(scheme_iso_rooted(f.members[i], f.members[j]));
    }
  std::vector<int> depths;
  for (int i = 0; i + 1 < K; ++i) {
    const auto& ic = f.iso[pair_index(i, i + 1, K)];
    if (!ic.failure_depth) throw CertificateFailure("consecutive members look isomorphic");
    depths.push_back(*ic.failure_depth);
  }
  if (K >= 2) f.failure_depths = depths;
  validate_twin_family(f);
  return f;
}

TwinFamily comb_tooth_family(const std::vector<ToothPattern>& patterns) {
  if (patterns.empty()) throw BadParams("family needs at least one pattern");
  for (const auto& p : patterns) check_pattern(p);
  TwinFamily f;
  Scheme cat = make_caterpillar();
  for (std::size_t i = 0; i < patterns.size(); ++i)
    f.members.push_back(
        absorber_member("tooth" + std::to_string(i), cat, make_comb(patterns[i]), false));
  std::size_t k = patterns.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      // the omega caterpillar bundle hosts the other member's comb branch,
      // so both embeddings are root-preserving
      f.twin.push_back(twin_rooted(f.members[i], f.members[j]));
      f.iso.push_back(scheme_iso_rooted(f.members[i], f.members[j]));
    }
  bool all_distinct = true;
  std::vector<int> depths;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const auto& ic = f.iso[pair_index(i, i + 1, k)];
    if (!ic.failure_depth) all_distinct = false;
    else depths.push_back(*ic.failure_depth);
  }
  if (all_distinct && k >= 2) f.failure_depths = depths;
  return f;
}

Scheme star_of_paths_truncation(int n, bool with_ray) {
  if (n < 1) throw BadParams("path lengths start at 1");
  Scheme s;
  s.name = with_ray ? "star_cut" : "star";
  s.root = 0;
  s.states.push_back("r");
  s.children.emplace_back();
  // shared suffixes: state p_k heads the path of length k
  for (int kk = 1; kk <= n; ++kk) {
    s.states.push_back("p" + std::to_string(kk));
    if (kk == 1)
      s.children.push_back({});
    else
      s.children.push_back({{kk - 1, Multiplicity::finite(1)}});
    s.children[0].push_back({kk, Multiplicity::omega()});
  }
  if (with_ray) {
    // a separate length-n chain for the single cut copy
    for (int kk = 1; kk <= n; ++kk) {
      s.states.push_back("q" + std::to_string(kk));
      if (kk == 1)
        s.children.push_back({});
      else
        s.children.push_back({{n + kk - 1, Multiplicity::finite(1)}});
    }
    s.children[0].push_back({2 * n, Multiplicity::finite(1)});
  }
  return s;
}

Scheme replace_twin_branches(const Scheme& t, int pivot, const Scheme& replacement) {
  if (pivot < 0 || pivot >= static_cast<int>(t.children[t.root].size()))
    throw BadIndex("pivot does not name a root child entry");
  Scheme pivot_branch = branch_at(t, t.children[t.root][pivot].target, "pivot");

  Scheme out = t;
  int r_off = append_states(out, replacement);
  int r_root = r_off + replacement.root;

  std::map<int, Multiplicity> merged;
  for (const auto& e : t.children[t.root]) {
    Scheme b = branch_at(t, e.target, "branch");
    int target = twin_rooted(b, pivot_branch).verdict == Verdict::Yes ? r_root : e.target;
    auto it = merged.find(target);
    if (it == merged.end())
      merged.emplace(target, e.mult);
    else
      it->second = it->second + e.mult;
  }
  out.children[out.root].clear();
  for (auto& [target, mult] : merged) out.children[out.root].push_back({target, mult});
  return prune_unreachable(out);
}

TwinFamily sandwich_family(const Scheme& spine, int p, const Scheme& component, int K) {
  if (p < 1) throw BadParams("attachment step must be at least 1");
  if (K < 1) throw BadParams("family needs at least one member");
  if (auto err = validate_error(spine)) throw BadParams("spine: " + *err);
  if (auto err = validate_error(component)) throw BadParams("component: " + *err);

  // B_m: the spine with a depth counter modulo p*m, the component attached
  // wherever the counter reads zero
  auto make_b = [&](int m) {
    int mod = p * m;
    Scheme b;
    b.name = "b" + std::to_string(m);
    int ns = spine.n_states();
    for (int c = 0; c < mod; ++c)
      for (int q = 0; q < ns; ++q) {
        b.states.push_back(spine.states[q] + "_c" + std::to_string(c));
        b.children.emplace_back();
      }
    int c_off = append_states(b, component);
    auto idx = [&](int q, int c) { return c * ns + q; };
    for (int c = 0; c < mod; ++c)
      for (int q = 0; q < ns; ++q) {
        auto& row = b.children[idx(q, c)];
        for (const auto& e : spine.children[q])
          row.push_back({idx(e.target, (c + 1) % mod), e.mult});
        if (c == 0) row.push_back({c_off + component.root, Multiplicity::finite(1)});
        std::sort(row.begin(), row.end(),
                  [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
      }
    b.root = idx(spine.root, 0);
    return prune_unreachable(b);
  };

  Scheme b1 = make_b(1);
  TwinFamily f;
  for (int m = 1; m <= K; ++m)
    f.members.push_back(absorber_member("sandwich" + std::to_string(m), b1,
                                        m == 1 ? b1 : make_b(m), m == 1));
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j) {
      f.twin.push_back(twin_rooted(f.members[i], f.members[j]));
      f.iso.push_back(scheme_iso_rooted(f.members[i], f.members[j]));
    }
  bool all_distinct = true;
  std::vector<int> depths;
  for (int i = 0; i + 1 < K; ++i) {
    const auto& ic = f.iso[pair_index(i, i + 1, K)];
    if (!ic.failure_depth) all_distinct = false;
    else depths.push_back(*ic.failure_depth);
  }
  if (all_distinct && K >= 2) f.failure_depths = depths;
  return f;
}

}  // namespace twintree
