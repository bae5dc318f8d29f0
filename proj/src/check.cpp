#include "twintree/check.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "twintree/construct.hpp"
#include "twintree/decide.hpp"
#include "twintree/dsl.hpp"
#include "twintree/errors.hpp"
#include "twintree/random_gen.hpp"

namespace twintree {

namespace {

void fail_case(CheckReport& r, std::string name,
               std::vector<std::pair<std::string, std::string>> inputs, std::string expected,
               std::string got) {
  r.failures.push_back({std::move(name), std::move(inputs), std::move(expected), std::move(got)});
}

CanonicalCode trunc_code(const Scheme& s, int d) {
  return ahu_code(materialize(truncate(s, d)));
}

std::uint64_t factorial(std::uint64_t k) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// independent AHU route for the self-embedding suite: computes the code by
// direct recursion and the rooted automorphism count from the equal-subtree
// groups along the way
std::string local_code(const RootedFiniteTree& t, int v, std::uint64_t& aut) {
  std::vector<std::string> cs;
  for (int c : t.children(v)) cs.push_back(local_code(t, c, aut));
  std::sort(cs.begin(), cs.end());
  std::string out = "(";
  std::size_t i = 0;
  while (i < cs.size()) {
    std::size_t j = i;
    while (j < cs.size() && cs[j] == cs[i]) ++j;
    aut *= factorial(j - i);
    for (std::size_t k = i; k < j; ++k) out += cs[k];
    i = j;
  }
  out += ")";
  return out;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

// ---- unfolding-preserving and unfolding-growing mutations -------------------

Scheme permute_states(const Scheme& s, std::mt19937_64& rng) {
  int n = s.n_states();
  std::vector<int> pi(n);
  for (int i = 0; i < n; ++i) pi[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(pi[i], pi[draw(rng, i + 1)]);
  Scheme t;
  t.name = s.name;
  t.root = pi[s.root];
  t.states.resize(n);
  t.children.resize(n);
  for (int q = 0; q < n; ++q) {
    t.states[pi[q]] = s.states[q];
    auto row = s.children[q];
    for (auto& e : row) e.target = pi[e.target];
    std::sort(row.begin(), row.end(),
              [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
    t.children[pi[q]] = std::move(row);
  }
  return t;
}

// split one entry (t, m) into (t, m1) plus (t', m2) against a fresh clone t'
// of the target state; the unfolding is unchanged
Scheme split_entry(const Scheme& s, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> eligible;
  for (int q = 0; q < s.n_states(); ++q)
    for (int k = 0; k < static_cast<int>(s.children[q].size()); ++k) {
      const auto& e = s.children[q][k];
      if (e.mult.is_omega() || e.mult.count() >= 2) eligible.push_back({q, k});
    }
  if (eligible.empty()) return permute_states(s, rng);
  auto [q, k] = eligible[draw(rng, eligible.size())];

  Scheme t = s;
  SchemeEntry e = t.children[q][static_cast<std::size_t>(k)];
  std::set<std::string> used(t.states.begin(), t.states.end());
  std::string clone_name = t.states[e.target];
  while (used.count(clone_name)) clone_name += "_x";
  int clone = t.n_states();
  t.states.push_back(clone_name);
  t.children.push_back(s.children[e.target]);

  auto& row = t.children[q];
  row.erase(row.begin() + k);
  if (e.mult.is_omega()) {
    row.push_back({e.target, Multiplicity::omega()});
    row.push_back({clone, Multiplicity::omega()});
  } else {
    std::uint64_t m1 = 1 + draw(rng, e.mult.count() - 1);
    row.push_back({e.target, Multiplicity::finite(m1)});
    row.push_back({clone, Multiplicity::finite(e.mult.count() - m1)});
  }
  std::sort(row.begin(), row.end(),
            [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
  return t;
}

Scheme mutate_iso(const Scheme& s, std::mt19937_64& rng) {
  Scheme t = s;
  int ops = 1 + static_cast<int>(draw(rng, 3));
  for (int i = 0; i < ops; ++i) t = draw(rng, 2) ? split_entry(t, rng) : permute_states(t, rng);
  return t;
}

// grow the unfolding while keeping the original inside it root-preservingly
Scheme grow_super(const Scheme& s, std::mt19937_64& rng) {
  Scheme t = s;
  int ops = 1 + static_cast<int>(draw(rng, 3));
  for (int i = 0; i < ops; ++i) {
    switch (draw(rng, 3)) {
      case 0: {  // fresh leaf branch somewhere
        std::set<std::string> used(t.states.begin(), t.states.end());
        std::string name = "x";
        while (used.count(name)) name += "x";
        int leaf = t.n_states();
        int q = static_cast<int>(draw(rng, leaf));
        t.states.push_back(name);
        t.children.push_back({});
        t.children[q].push_back({leaf, Multiplicity::finite(1 + draw(rng, 2))});
        break;
      }
      case 1: {  // raise one multiplicity
        std::vector<std::pair<int, int>> all;
        for (int q = 0; q < t.n_states(); ++q)
          for (int k = 0; k < static_cast<int>(t.children[q].size()); ++k) all.push_back({q, k});
        if (all.empty()) break;
        auto [q, k] = all[draw(rng, all.size())];
        auto& e = t.children[q][static_cast<std::size_t>(k)];
        e.mult = e.mult + Multiplicity::finite(1);
        break;
      }
      default: {  // extra entry toward an existing state
        int q = static_cast<int>(draw(rng, t.n_states()));
        int to = static_cast<int>(draw(rng, t.n_states()));
        bool present = false;
        for (const auto& e : t.children[q]) present = present || e.target == to;
        if (present) break;
        t.children[q].push_back({to, Multiplicity::finite(1 + draw(rng, 2))});
        std::sort(t.children[q].begin(), t.children[q].end(),
                  [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
        break;
      }
    }
  }
  return t;
}

bool size_ok(const Scheme& s, int depth, std::uint64_t cap) {
  Multiplicity sz = truncation_size(s, depth);
  return !sz.is_omega() && sz.count() <= cap;
}

// ---- suites -----------------------------------------------------------------

CheckReport suite_lemma6(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "lemma6";
  for (int n = 1; n <= opt.max_n; ++n) {
    auto trees = all_rooted_trees(n);
    for (std::size_t idx = 0; idx < trees.size(); ++idx) {
      const auto& t = trees[idx];
      ++r.cases;
      std::string name = "n" + std::to_string(n) + "_t" + std::to_string(idx);
      std::uint64_t aut = 1;
      std::string code = local_code(t, t.root(), aut);
      if (code != ahu_code(t).text) {
        fail_case(r, name, {{"tree", ahu_code(t).text}}, "codes from both routes equal",
                  "independent recursion got " + code);
        continue;
      }
      std::vector<VertexMap> maps;
      try {
        maps = enumerate_root_self_embeddings(t, 100000);
      } catch (const Error& e) {
        fail_case(r, name, {{"tree", code}}, "enumeration succeeds", e.what());
        continue;
      }
      if (maps.size() != aut) {
        fail_case(r, name, {{"tree", code}},
                  "exactly " + std::to_string(aut) + " self-embeddings",
                  std::to_string(maps.size()));
        continue;
      }
      for (const auto& m : maps) {
        std::vector<int> sorted = m.image;
        std::sort(sorted.begin(), sorted.end());
        bool bijective = true;
        for (int v = 0; v < t.n(); ++v) bijective = bijective && sorted[v] == v;
        if (!bijective || !is_root_embedding(t, t, m)) {
          fail_case(r, name, {{"tree", code}},
                    "every enumerated map is a root-preserving automorphism",
                    "a map fails the replay");
          break;
        }
      }
    }
  }
  return r;
}

CheckReport suite_mutual_finite(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "mutual-finite";
  int cases = opt.cases > 0 ? opt.cases : 1000;
  for (int i = 0; i < cases; ++i) {
    ++r.cases;
    std::mt19937_64 rng(derive_seed(opt.seed, 2, i));
    int na = 2 + static_cast<int>(draw(rng, 9));
    int nb = 2 + static_cast<int>(draw(rng, 9));
    RootedFiniteTree a = random_rooted_tree(na, rng());
    RootedFiniteTree b = random_rooted_tree(nb, rng());
    auto fwd = embed_rooted(a, b);
    auto bwd = embed_rooted(b, a);
    bool iso = iso_rooted(a, b);
    std::string name = "pair" + std::to_string(i);
    auto inputs = [&]() {
      return std::vector<std::pair<std::string, std::string>>{{"a", ahu_code(a).text},
                                                              {"b", ahu_code(b).text}};
    };
    if (fwd && !is_root_embedding(a, b, *fwd)) {
      fail_case(r, name, inputs(), "returned forward map replays", "replay failed");
      continue;
    }
    if (bwd && !is_root_embedding(b, a, *bwd)) {
      fail_case(r, name, inputs(), "returned backward map replays", "replay failed");
      continue;
    }
    bool mutual = fwd.has_value() && bwd.has_value();
    if (mutual != iso) {
      fail_case(r, name, inputs(), "mutual embedding exactly when isomorphic",
                std::string("mutual=") + (mutual ? "true" : "false") + " iso=" +
                    (iso ? "true" : "false"));
    }
  }
  return r;
}

CheckReport suite_iso_oracle(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "iso-oracle";
  int cases = opt.cases > 0 ? opt.cases : 500;
  for (int i = 0; i < cases; ++i) {
    ++r.cases;
    Scheme a = make_single(), b = make_single();
    int depth_cap = 0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::mt19937_64 rng(derive_seed(opt.seed, 3, static_cast<std::uint64_t>(i) * 64 + attempt));
      Scheme ca = random_scheme(1 + static_cast<int>(draw(rng, 5)), 3, 0.0, rng());
      Scheme cb = draw(rng, 2) ? mutate_iso(ca, rng)
                               : random_scheme(1 + static_cast<int>(draw(rng, 5)), 3, 0.0, rng());
      int d = ca.n_states() + cb.n_states() + 1;
      if (size_ok(ca, d, 20000) && size_ok(cb, d, 20000)) {
        a = std::move(ca);
        b = std::move(cb);
        depth_cap = d;
        break;
      }
    }
    if (depth_cap == 0) depth_cap = a.n_states() + b.n_states() + 1;

    std::string name = "pair" + std::to_string(i);
    auto inputs = [&]() {
      return std::vector<std::pair<std::string, std::string>>{{"a", serialize_dsl(a)},
                                                              {"b", serialize_dsl(b)}};
    };
    IsoCertificate cert = scheme_iso_rooted(a, b);
    try {
      verify_iso_certificate(a, b, cert);
    } catch (const CertificateFailure& e) {
      fail_case(r, name, inputs(), "certificate replays", e.what());
      continue;
    }
    bool truth = trunc_code(a, depth_cap) == trunc_code(b, depth_cap);
    bool engine = cert.verdict == Verdict::Yes;
    if (engine != truth) {
      fail_case(r, name, inputs(), std::string("verdict ") + (truth ? "yes" : "no"),
                to_string(cert.verdict));
      continue;
    }
    if (!engine) {
      int fd = cert.failure_depth.value_or(-1);
      if (fd < 1 || fd > depth_cap) {
        fail_case(r, name, inputs(), "failure depth in range", std::to_string(fd));
        continue;
      }
      bool differ_at_fd = trunc_code(a, fd) != trunc_code(b, fd);
      bool equal_below = fd == 1 || trunc_code(a, fd - 1) == trunc_code(b, fd - 1);
      if (!differ_at_fd || !equal_below)
        fail_case(r, name, inputs(), "failure depth tight against truncation codes",
                  "depth " + std::to_string(fd) + (differ_at_fd ? " not minimal" : " not failing"));
    }
  }
  return r;
}

CheckReport suite_embed_oracle(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "embed-oracle";
  int cases = opt.cases > 0 ? opt.cases : 300;
  for (int i = 0; i < cases; ++i) {
    ++r.cases;
    Scheme a = make_single(), b = make_single();
    EmbedCertificate cert;
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      std::mt19937_64 rng(derive_seed(opt.seed, 4, static_cast<std::uint64_t>(i) * 64 + attempt));
      Scheme ca = random_scheme(1 + static_cast<int>(draw(rng, 4)), 2, 0.0, rng());
      Scheme cb;
      switch (draw(rng, 3)) {
        case 0: cb = random_scheme(1 + static_cast<int>(draw(rng, 4)), 2, 0.0, rng()); break;
        case 1: cb = grow_super(ca, rng); break;
        default: cb = mutate_iso(ca, rng); break;
      }
      if (!size_ok(ca, opt.depth, 800) || !size_ok(cb, opt.depth, 2000)) continue;
      EmbedCertificate c = scheme_embed_rooted(ca, cb);
      if (c.verdict == Verdict::No) {
        int fd = c.failure_depth.value_or(-1);
        if (fd < 1) continue;
        if (!size_ok(ca, fd, 20000) || !size_ok(cb, fd, 20000)) continue;
      }
      a = std::move(ca);
      b = std::move(cb);
      cert = std::move(c);
      found = true;
    }
    if (!found) cert = scheme_embed_rooted(a, b);

    std::string name = "pair" + std::to_string(i);
    auto inputs = [&]() {
      return std::vector<std::pair<std::string, std::string>>{{"a", serialize_dsl(a)},
                                                              {"b", serialize_dsl(b)}};
    };
    try {
      verify_embed_certificate(a, b, cert);
    } catch (const CertificateFailure& e) {
      fail_case(r, name, inputs(), "certificate replays", e.what());
      continue;
    }
    if (cert.verdict == Verdict::Yes) {
      bool ok = true;
      for (int d = 1; d <= opt.depth && ok; ++d)
        if (!oracle_embed_trunc(a, b, d)) {
          fail_case(r, name, inputs(), "oracle true at depth " + std::to_string(d),
                    "oracle false");
          ok = false;
        }
    } else {
      int fd = *cert.failure_depth;
      if (oracle_embed_trunc(a, b, fd)) {
        fail_case(r, name, inputs(), "oracle false at failure depth " + std::to_string(fd),
                  "oracle true");
        continue;
      }
      if (fd > 1 && !oracle_embed_trunc(a, b, fd - 1))
        fail_case(r, name, inputs(), "oracle true below failure depth", "oracle false");
    }
  }
  return r;
}

CheckReport suite_comb_oracle(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "comb-oracle";
  int cases = opt.cases > 0 ? opt.cases : 200;
  for (int i = 0; i < cases; ++i) {
    ++r.cases;
    Scheme s = make_ray();
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::mt19937_64 rng(derive_seed(opt.seed, 5, static_cast<std::uint64_t>(i) * 256 + attempt));
      Scheme cs = random_scheme(1 + static_cast<int>(draw(rng, 6)), 2, 0.0, rng());
      if (size_ok(cs, 6 * cs.n_states(), 50000)) {
        s = std::move(cs);
        break;
      }
    }
    int S = s.n_states();
    bool claimed = classify(s).contains_comb;
    RootedFiniteTree t = materialize(truncate(s, 6 * S));
    int lo = 0, hi = 0;
    for (int v = 0; v < t.n(); ++v) {
      int deg = static_cast<int>(t.children(v).size()) + (v == t.root() ? 0 : 1);
      if (deg < 3) continue;
      if (t.depth(v) <= 2 * S) ++lo;
      if (t.depth(v) <= 6 * S - 1) ++hi;
    }
    bool oracle = hi > lo;
    if (claimed != oracle) {
      fail_case(r, "case" + std::to_string(i), {{"s", serialize_dsl(s)}},
                std::string("comb=") + (oracle ? "true" : "false") + " per vertex growth",
                claimed ? "true" : "false");
    }
  }
  return r;
}

CheckReport suite_lemma7(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "lemma7-example";
  for (int n = 1; n <= opt.max_n; ++n) {
    ++r.cases;
    Scheme x = star_of_paths_truncation(n, false);
    Scheme y = star_of_paths_truncation(n, true);
    std::string name = "n" + std::to_string(n);
    auto inputs = [&]() {
      return std::vector<std::pair<std::string, std::string>>{{"x", serialize_dsl(x)},
                                                              {"y", serialize_dsl(y)}};
    };
    IsoCertificate cert = scheme_iso_rooted(x, y);
    if (cert.verdict != Verdict::Yes) {
      fail_case(r, name, inputs(), "the cut-path variant is isomorphic", to_string(cert.verdict));
      continue;
    }
    try {
      verify_iso_certificate(x, y, cert);
    } catch (const CertificateFailure& e) {
      fail_case(r, name, inputs(), "certificate replays", e.what());
      continue;
    }
    if (scheme_code(x) != scheme_code(y))
      fail_case(r, name, inputs(), "canonical codes agree", "codes differ");
  }
  return r;
}

CheckReport suite_caterpillar_family(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "caterpillar-family";
  int K = 6;
  TwinFamily f;
  ++r.cases;
  try {
    f = caterpillar_family(K);
  } catch (const Error& e) {
    fail_case(r, "construct", {}, "family construction validates", e.what());
    return r;
  }
  std::vector<int> want = {1, 2, 3, 4, 5};
  if (!f.failure_depths || *f.failure_depths != want) {
    fail_case(r, "depths", {}, "failure depths 1,2,3,4,5", "different");
    return r;
  }
  for (int t = 0; t < 3; ++t) {
    ++r.cases;
    std::mt19937_64 rng(derive_seed(opt.seed, 6, t));
    int i = static_cast<int>(draw(rng, K - 1));
    int j = i + 1 + static_cast<int>(draw(rng, K - 1 - i));
    const Scheme& mi = f.members[i];
    const Scheme& mj = f.members[j];
    std::string name = "pair_" + std::to_string(i) + "_" + std::to_string(j);
    auto inputs = [&]() {
      return std::vector<std::pair<std::string, std::string>>{{"a", serialize_dsl(mi)},
                                                              {"b", serialize_dsl(mj)}};
    };
    int fd = f.iso[pair_index(i, j, K)].failure_depth.value_or(-1);
    if (fd < 1) {
      fail_case(r, name, inputs(), "iso failure depth present", "absent");
      continue;
    }
    if (trunc_code(mi, fd) == trunc_code(mj, fd) ||
        (fd > 1 && trunc_code(mi, fd - 1) != trunc_code(mj, fd - 1))) {
      fail_case(r, name, inputs(), "iso failure depth tight against truncation codes", "not tight");
      continue;
    }
    // the later member is a rooted subtree of the earlier one
    if (!oracle_embed_trunc(mj, mi, opt.depth)) {
      fail_case(r, name, inputs(), "backward direction embeds at depth " + std::to_string(opt.depth),
                "oracle false");
      continue;
    }
    // the rooted forward direction fails exactly at the engine's depth
    EmbedCertificate ec = scheme_embed_rooted(mi, mj);
    if (ec.verdict != Verdict::No || !ec.failure_depth ||
        oracle_embed_trunc(mi, mj, *ec.failure_depth) ||
        (*ec.failure_depth > 1 && !oracle_embed_trunc(mi, mj, *ec.failure_depth - 1))) {
      fail_case(r, name, inputs(), "rooted forward failure depth tight", "mismatch");
    }
  }
  return r;
}

CheckReport suite_tooth_family(const SuiteOptions& opt) {
  CheckReport r;
  r.suite = "tooth-family";
  std::vector<ToothPattern> patterns = {
      {{}, {1}}, {{}, {1, 0}}, {{}, {1, 0, 0}}, {{}, {1, 0, 0, 0}}, {{}, {1, 0, 0, 0, 0}}};
  TwinFamily f;
  ++r.cases;
  try {
    f = comb_tooth_family(patterns);
    validate_twin_family(f);
  } catch (const Error& e) {
    fail_case(r, "construct", {}, "family construction validates", e.what());
    return r;
  }
  std::vector<int> want = {3, 4, 5, 6};
  if (!f.failure_depths || *f.failure_depths != want) {
    fail_case(r, "depths", {}, "failure depths 3,4,5,6", "different");
    return r;
  }
  std::size_t k = f.members.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    ++r.cases;
    const Scheme& mi = f.members[i];
    const Scheme& mj = f.members[i + 1];
    int fd = (*f.failure_depths)[i];
    std::string name = "consecutive" + std::to_string(i);
    // independent route: canonical codes of the truncations
    if (scheme_code(truncate(mi, fd)) == scheme_code(truncate(mj, fd)) ||
        scheme_code(truncate(mi, fd - 1)) != scheme_code(truncate(mj, fd - 1))) {
      fail_case(r, name,
                {{"a", serialize_dsl(mi)}, {"b", serialize_dsl(mj)}},
                "failure depth tight against truncation codes", "not tight");
    }
  }
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    ++r.cases;
    // the absorbing mechanism: every comb sits inside the caterpillar
    if (!oracle_embed_trunc(make_comb(patterns[i]), make_caterpillar(), opt.depth))
      fail_case(r, "absorb" + std::to_string(i), {}, "comb embeds into the caterpillar",
                "oracle false");
  }
  return r;
}

CheckReport suite_sandwich_family(const SuiteOptions&) {
  CheckReport r;
  r.suite = "sandwich-family";
  TwinFamily f;
  ++r.cases;
  try {
    f = sandwich_family(make_ray(), 1, make_cherry(), 5);
    validate_twin_family(f);
  } catch (const Error& e) {
    fail_case(r, "construct", {}, "family construction validates", e.what());
    return r;
  }
  std::vector<int> want = {3, 4, 5, 6};
  if (!f.failure_depths || *f.failure_depths != want) {
    fail_case(r, "depths", {}, "failure depths 3,4,5,6", "different");
    return r;
  }
  std::size_t k = f.members.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    ++r.cases;
    const Scheme& mi = f.members[i];
    const Scheme& mj = f.members[i + 1];
    int fd = (*f.failure_depths)[i];
    if (scheme_code(truncate(mi, fd)) == scheme_code(truncate(mj, fd)) ||
        scheme_code(truncate(mi, fd - 1)) != scheme_code(truncate(mj, fd - 1))) {
      fail_case(r, "consecutive" + std::to_string(i),
                {{"a", serialize_dsl(mi)}, {"b", serialize_dsl(mj)}},
                "failure depth tight against truncation codes", "not tight");
    }
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma6",        "mutual-finite",      "iso-oracle",   "embed-oracle",
      "comb-oracle",   "lemma7-example",     "caterpillar-family",
      "tooth-family",  "sandwich-family"};
  return names;
}

CheckReport run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "lemma6") return suite_lemma6(opt);
  if (name == "mutual-finite") return suite_mutual_finite(opt);
  if (name == "iso-oracle") return suite_iso_oracle(opt);
  if (name == "embed-oracle") return suite_embed_oracle(opt);
  if (name == "comb-oracle") return suite_comb_oracle(opt);
  if (name == "lemma7-example") return suite_lemma7(opt);
  if (name == "caterpillar-family") return suite_caterpillar_family(opt);
  if (name == "tooth-family") return suite_tooth_family(opt);
  if (name == "sandwich-family") return suite_sandwich_family(opt);
  throw UnknownSuite("no suite named '" + name + "'");
}

std::string report_json(const CheckReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["cases"] = r.cases;
  j["passed"] = r.passed();
  ordered_json fs = ordered_json::array();
  for (const auto& f : r.failures) {
    ordered_json fj;
    fj["case"] = f.case_name;
    ordered_json inputs = ordered_json::array();
    for (const auto& [label, value] : f.inputs)
      inputs.push_back(ordered_json{{"label", label}, {"value", value}});
    fj["inputs"] = inputs;
    fj["expected"] = f.expected;
    fj["got"] = f.got;
    fs.push_back(fj);
  }
  j["failures"] = fs;
  return j.dump(2) + "\n";
}

}  // namespace twintree
