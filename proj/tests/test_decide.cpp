#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "twintree/construct.hpp"
#include "twintree/decide.hpp"
#include "twintree/errors.hpp"
#include "twintree/finite_tree.hpp"
#include "twintree/random_gen.hpp"
#include "twintree/scheme.hpp"

using namespace twintree;

namespace {

Scheme mk(std::vector<std::string> states, int root,
          std::vector<std::vector<SchemeEntry>> children) {
  Scheme s;
  s.name = "t";
  s.states = std::move(states);
  s.root = root;
  s.children = std::move(children);
  return s;
}

SchemeEntry e(int target, std::uint64_t k) { return {target, Multiplicity::finite(k)}; }
SchemeEntry ew(int target) { return {target, Multiplicity::omega()}; }

// omega bundle of caterpillars
Scheme cat_bundle() {
  return mk({"r", "s", "l"}, 0, {{ew(1)}, {e(1, 1), e(2, 1)}, {}});
}

// omega bundle of caterpillars plus one bare leaf branch
Scheme cat_bundle_plus_leaf() {
  return mk({"r", "s", "l"}, 0, {{ew(1), e(2, 1)}, {e(1, 1), e(2, 1)}, {}});
}

// star with three paths of length 2 (the subdivided 3-star)
Scheme subdivided_star3() {
  return mk({"r", "m", "l"}, 0, {{e(1, 3)}, {e(2, 1)}, {}});
}

}  // namespace

TEST_CASE("rooted isomorphism on finite unfoldings agrees with canonical tree codes") {
  for (int i = 0; i < 150; ++i) {
    auto a = random_scheme(2 + i % 3, 3, 0.0, 400 + i);
    auto b = (i % 4 == 0) ? a : random_scheme(2 + (i + 1) % 3, 3, 0.0, 9900 + i);
    int d = 1 + i % 5;
    auto ta = truncate(a, d);
    auto tb = truncate(b, d);
    bool expected = ahu_code(materialize(ta)) == ahu_code(materialize(tb));
    auto cert = scheme_iso_rooted(ta, tb);
    CAPTURE(i);
    CHECK((cert.verdict == Verdict::Yes) == expected);
    CHECK_NOTHROW(verify_iso_certificate(ta, tb, cert));
  }
}

TEST_CASE("rooted isomorphism failure depth is the first separating truncation depth") {
  for (int i = 0; i < 120; ++i) {
    auto a = random_scheme(2 + i % 3, 3, 0.15, 6200 + i);
    auto b = random_scheme(2 + (i + 1) % 4, 3, 0.15, 7300 + i);
    auto cert = scheme_iso_rooted(a, b);
    int big = a.n_states() + b.n_states() + 2;
    CAPTURE(i);
    if (cert.verdict == Verdict::Yes) {
      CHECK(local_iso_up_to(a, b, big) == std::nullopt);
    } else {
      REQUIRE(cert.failure_depth);
      int fd = *cert.failure_depth;
      CHECK(local_iso_up_to(a, b, big) == fd);
      // canonical codes are an independent route to the same separation
      CHECK(scheme_code(truncate(a, fd)) != scheme_code(truncate(b, fd)));
      CHECK(scheme_code(truncate(a, fd - 1)) == scheme_code(truncate(b, fd - 1)));
    }
    CHECK_NOTHROW(verify_iso_certificate(a, b, cert));
  }
}

TEST_CASE("isomorphism is reflexive under state renaming and symmetric") {
  for (int i = 0; i < 60; ++i) {
    auto a = random_scheme(2 + i % 4, 4, 0.2, 31 + i);
    auto b = a;
    std::reverse(b.states.begin(), b.states.end());  // names are irrelevant
    for (auto& nm : b.states) nm += "_y";
    CHECK(scheme_iso_rooted(a, b).verdict == Verdict::Yes);
    auto c = random_scheme(2 + (i + 2) % 4, 4, 0.2, 77 + i);
    CHECK(scheme_iso_rooted(a, c).verdict == scheme_iso_rooted(c, a).verdict);
  }
}

TEST_CASE("iso certificate replay rejects tampering") {
  auto cat = make_caterpillar();
  auto cert = scheme_iso_rooted(cat, cat);
  REQUIRE(cert.verdict == Verdict::Yes);
  CHECK_NOTHROW(verify_iso_certificate(cat, cat, cert));

  auto flipped = cert;
  flipped.verdict = Verdict::No;
  flipped.failure_depth = 1;
  CHECK_THROWS_AS(verify_iso_certificate(cat, cat, flipped), CertificateFailure);

  auto merged = cert;
  std::fill(merged.class_of_a.begin(), merged.class_of_a.end(), 0);
  std::fill(merged.class_of_b.begin(), merged.class_of_b.end(), 0);
  CHECK_THROWS_AS(verify_iso_certificate(cat, cat, merged), CertificateFailure);

  auto truncated = cert;
  truncated.class_of_b.pop_back();
  CHECK_THROWS_AS(verify_iso_certificate(cat, cat, truncated), CertificateFailure);

  auto real_no = scheme_iso_rooted(cat, make_caterpillar_minus(1));
  REQUIRE(real_no.verdict == Verdict::No);
  auto bad_depth = real_no;
  bad_depth.failure_depth = 99;  // beyond the refinement rounds
  CHECK_THROWS_AS(verify_iso_certificate(cat, make_caterpillar_minus(1), bad_depth),
                  CertificateFailure);
}

TEST_CASE("rooted embedding agrees with the truncation oracle") {
  for (int i = 0; i < 150; ++i) {
    auto a = random_scheme(2 + i % 3, 2, 0.0, 1200 + i);
    auto b = random_scheme(2 + (i + 1) % 3, 3, 0.0, 3400 + i);
    auto cert = scheme_embed_rooted(a, b);
    CAPTURE(i);
    if (cert.verdict == Verdict::Yes) {
      for (int d = 1; d <= 6; ++d) CHECK(oracle_embed_trunc(a, b, d));
    } else {
      REQUIRE(cert.failure_depth);
      CHECK(oracle_embed_trunc(a, b, *cert.failure_depth - 1));
      CHECK(!oracle_embed_trunc(a, b, *cert.failure_depth));
    }
    CHECK_NOTHROW(verify_embed_certificate(a, b, cert));
  }
}

TEST_CASE("embedding goldens") {
  CHECK(scheme_embed_rooted(make_ray(), make_d_ary(2)).verdict == Verdict::Yes);
  CHECK(scheme_embed_rooted(make_caterpillar_minus(3), make_caterpillar()).verdict ==
        Verdict::Yes);
  CHECK(scheme_embed_rooted(make_caterpillar(), make_ray()).verdict == Verdict::No);

  auto wide = scheme_embed_rooted(make_d_ary(3), make_d_ary(2));
  CHECK(wide.verdict == Verdict::No);
  CHECK(wide.failure_depth == 1);

  auto deep = scheme_embed_rooted(star_of_paths_truncation(4, false),
                                  star_of_paths_truncation(3, false));
  CHECK(deep.verdict == Verdict::No);
  CHECK(deep.failure_depth == 4);

  // the caterpillar into its own leaf-stripped variant: the stripped root
  // has one child where the full root needs room for two
  auto slide = scheme_embed_rooted(make_caterpillar(), make_caterpillar_minus(1));
  CHECK(slide.verdict == Verdict::No);
  CHECK(slide.failure_depth == 1);
  CHECK(!oracle_embed_trunc(make_caterpillar(), make_caterpillar_minus(1), 1));
  CHECK(oracle_embed_trunc(make_caterpillar_minus(1), make_caterpillar(), 8));
}

TEST_CASE("omega demands embed only into omega capacities") {
  // omega star into a huge finite star: no; into an omega star: yes
  auto wstar = mk({"r", "l"}, 0, {{ew(1)}, {}});
  auto big = mk({"r", "l"}, 0, {{e(1, 1000)}, {}});
  CHECK(scheme_embed_rooted(wstar, big).verdict == Verdict::No);
  CHECK(scheme_embed_rooted(big, wstar).verdict == Verdict::Yes);
  CHECK(scheme_embed_rooted(wstar, wstar).verdict == Verdict::Yes);

  // two omega bundles of incomparable branch types need two omega targets;
  // a cherry is too wide for the path and the path too deep for the cherry
  auto two = mk({"r", "c", "cl", "p", "q", "l"}, 0,
                {{ew(1), ew(3)}, {e(2, 2)}, {}, {e(4, 1)}, {e(5, 1)}, {}});
  auto one = mk({"r", "c", "cl", "p", "q", "l"}, 0,
                {{ew(1), e(3, 1)}, {e(2, 2)}, {}, {e(4, 1)}, {e(5, 1)}, {}});
  CHECK(scheme_embed_rooted(two, one).verdict == Verdict::No);
  CHECK(scheme_embed_rooted(one, two).verdict == Verdict::Yes);
}

TEST_CASE("embed certificate replay rejects tampering") {
  auto cat = make_caterpillar();
  auto cert = scheme_embed_rooted(cat, cat);
  REQUIRE(cert.verdict == Verdict::Yes);
  CHECK_NOTHROW(verify_embed_certificate(cat, cat, cert));

  // the spine pair's matching carries one line per child entry
  auto spine_matching = [&](EmbedCertificate& c) -> PairMatching& {
    for (auto& m : c.matchings)
      if (m.source_state == 0 && m.target_state == 0) return m;
    REQUIRE(false);
    return c.matchings.front();
  };

  auto inflated = cert;
  REQUIRE(!spine_matching(inflated).lines.empty());
  spine_matching(inflated).lines[0].amount = Multiplicity::finite(2);
  CHECK_THROWS_AS(verify_embed_certificate(cat, cat, inflated), CertificateFailure);

  auto starved = cert;
  spine_matching(starved).lines.clear();
  CHECK_THROWS_AS(verify_embed_certificate(cat, cat, starved), CertificateFailure);

  auto rootless = cert;
  rootless.relation.erase(
      std::remove(rootless.relation.begin(), rootless.relation.end(), std::make_pair(0, 0)),
      rootless.relation.end());
  CHECK_THROWS_AS(verify_embed_certificate(cat, cat, rootless), CertificateFailure);

  // overload one target entry: route the leaf line into the spine entry too
  auto overloaded = cert;
  for (auto& line : spine_matching(overloaded).lines) line.target_entry = 0;
  CHECK_THROWS_AS(verify_embed_certificate(cat, cat, overloaded), CertificateFailure);

  // understating an omega demand is caught by the coverage check
  auto wstar = mk({"r", "l"}, 0, {{ew(1)}, {}});
  auto wcert = scheme_embed_rooted(wstar, wstar);
  REQUIRE(wcert.verdict == Verdict::Yes);
  auto misrouted = wcert;
  bool found = false;
  for (auto& m : misrouted.matchings)
    for (auto& line : m.lines)
      if (line.amount.is_omega()) {
        line.amount = Multiplicity::finite(3);
        found = true;
      }
  REQUIRE(found);
  CHECK_THROWS_AS(verify_embed_certificate(wstar, wstar, misrouted), CertificateFailure);
}

TEST_CASE("rooted twins that are not isomorphic") {
  auto x = cat_bundle();
  auto y = cat_bundle_plus_leaf();

  auto tw = twin_rooted(x, y);
  REQUIRE(tw.verdict == Verdict::Yes);
  REQUIRE(tw.forward);
  REQUIRE(tw.backward);
  CHECK_NOTHROW(verify_embed_certificate(x, y, *tw.forward));
  CHECK_NOTHROW(verify_embed_certificate(y, x, *tw.backward));

  auto iso = scheme_iso_rooted(x, y);
  CHECK(iso.verdict == Verdict::No);
  CHECK(iso.failure_depth == 2);
}

TEST_CASE("twin goldens") {
  CHECK(twin_rooted(make_ray(), make_ray()).verdict == Verdict::Yes);
  CHECK(twin_rooted(make_d_ary(2), make_d_ary(3)).verdict == Verdict::No);
  CHECK(twin_rooted(star_of_paths_truncation(3, false), star_of_paths_truncation(4, false))
            .verdict == Verdict::No);
  // isomorphic schemes are twins with empty-reroot-free rooted certificates
  auto tw = twin_rooted(star_of_paths_truncation(3, false), star_of_paths_truncation(3, true));
  CHECK(tw.verdict == Verdict::Yes);
}

TEST_CASE("unrooted isomorphism finds witnesses across presentations") {
  auto ray = make_ray();
  auto ray2 = mk({"a", "b"}, 0, {{e(1, 1)}, {e(0, 1)}});  // same ray, two states
  auto r = scheme_iso_unrooted(ray, ray2, 4);
  CHECK(r.verdict == Verdict::Yes);

  auto moved = reroot(make_d_ary(2), VertexAddress{{AddressStep{0, 0}}});
  auto r2 = scheme_iso_unrooted(make_d_ary(2), moved, 4);
  REQUIRE(r2.verdict == Verdict::Yes);
  REQUIRE(r2.reroot_b);
  REQUIRE(r2.cert);
  CHECK_NOTHROW(
      verify_iso_certificate(make_d_ary(2), reroot(moved, *r2.reroot_b), *r2.cert));
}

TEST_CASE("unrooted isomorphism refutes via invariants or stays unknown") {
  // distinct degree histograms: every tooth position filled vs every third
  auto dense = make_comb(ToothPattern{{}, {1}});
  auto sparse = make_comb(ToothPattern{{}, {1, 0, 0}});
  CHECK(scheme_iso_unrooted(dense, sparse, 4).verdict == Verdict::No);

  // finite vs infinite
  CHECK(scheme_iso_unrooted(make_cherry(), make_ray(), 4).verdict == Verdict::No);

  // rayless targets make bounded rerooting exhaustive, so this no is exact
  CHECK(scheme_iso_unrooted(star_of_paths_truncation(3, false),
                            star_of_paths_truncation(4, false), 4)
            .verdict == Verdict::No);

  // same flags, same histogram, not actually isomorphic: the engine says so
  // honestly instead of guessing
  auto a = make_comb(ToothPattern{{}, {1, 1, 0}});
  auto b = make_comb(ToothPattern{{}, {1, 0, 0}});
  CHECK(scheme_iso_unrooted(a, b, 3).verdict == Verdict::Unknown);
}

TEST_CASE("unrooted embedding: yes with a replayable witness") {
  // a path of five vertices slides into the caterpillar spine
  auto p5 = mk({"r", "m", "l"}, 0, {{e(1, 1)}, {e(2, 1)}, {}});
  auto res = scheme_embed_unrooted(p5, make_caterpillar(), 4);
  REQUIRE(res.verdict == Verdict::Yes);
  REQUIRE(res.cert);
  REQUIRE(res.reroot_b);
  CHECK_NOTHROW(verify_embed_certificate(p5, reroot(make_caterpillar(), *res.reroot_b),
                                         *res.cert));
}

TEST_CASE("unrooted embedding: exact no from rayless bounds") {
  // the target is rayless with height 3, so three levels of rerootings are
  // exhaustive; the length-4 paths then have nowhere to go
  auto res = scheme_embed_unrooted(star_of_paths_truncation(4, false),
                                   star_of_paths_truncation(3, false), 1);
  CHECK(res.verdict == Verdict::No);

  // rayless source, cyclic target: the pumping bound is exhaustive. The
  // subdivided 3-star needs a degree-3 vertex with three length-2 arms, and
  // the caterpillar has none.
  auto res2 = scheme_embed_unrooted(subdivided_star3(), make_caterpillar(), 1);
  CHECK(res2.verdict == Verdict::No);

  // control: with only two arms it is a path and slides in
  auto p = mk({"r", "m", "l"}, 0, {{e(1, 2)}, {e(2, 1)}, {}});
  CHECK(scheme_embed_unrooted(p, make_caterpillar(), 4).verdict == Verdict::Yes);
}

TEST_CASE("unrooted embedding: refutation battery and honest unknowns") {
  // a ray cannot go into a rayless tree
  CHECK(scheme_embed_unrooted(make_ray(), star_of_paths_truncation(5, false), 4).verdict ==
        Verdict::No);
  // a comb cannot go into a bare ray
  CHECK(scheme_embed_unrooted(make_caterpillar(), make_ray(), 4).verdict == Verdict::No);
  // omega branching cannot go into a locally finite tree
  auto wstar = mk({"r", "l"}, 0, {{ew(1)}, {}});
  CHECK(scheme_embed_unrooted(wstar, make_d_ary(3), 4).verdict == Verdict::No);
  // degree 5 cannot go into degree 4
  CHECK(scheme_embed_unrooted(make_d_ary(4), make_d_ary(3), 4).verdict == Verdict::No);
  // an infinite tree cannot go into a finite one
  CHECK(scheme_embed_unrooted(make_ray(), make_cherry(), 4).verdict == Verdict::No);

  // dense teeth into sparse teeth: impossible, but every invariant above
  // agrees between the two, so the semi-decision reports unknown
  auto dense = make_comb(ToothPattern{{}, {1, 1, 0}});
  auto sparse = make_comb(ToothPattern{{}, {1, 0, 0}});
  CHECK(scheme_embed_unrooted(dense, sparse, 3).verdict == Verdict::Unknown);
  // the converse direction embeds outright
  CHECK(scheme_embed_unrooted(sparse, dense, 3).verdict == Verdict::Yes);
}

TEST_CASE("unrooted twins by sliding") {
  auto tw = twin_unrooted(make_caterpillar(), make_caterpillar_minus(2), 4);
  REQUIRE(tw.verdict == Verdict::Yes);
  REQUIRE(tw.forward);
  REQUIRE(tw.backward);
  // at least one direction needs a genuine slide
  CHECK((tw.forward_reroot || tw.backward_reroot));

  auto a = make_caterpillar();
  auto b = make_caterpillar_minus(2);
  if (tw.forward_reroot)
    CHECK_NOTHROW(verify_embed_certificate(a, reroot(b, *tw.forward_reroot), *tw.forward));
  else
    CHECK_NOTHROW(verify_embed_certificate(a, b, *tw.forward));
  if (tw.backward_reroot)
    CHECK_NOTHROW(verify_embed_certificate(b, reroot(a, *tw.backward_reroot), *tw.backward));
  else
    CHECK_NOTHROW(verify_embed_certificate(b, a, *tw.backward));

  // sliding cannot fix a genuine asymmetry
  CHECK(twin_unrooted(make_d_ary(2), make_d_ary(3), 4).verdict == Verdict::No);
}

TEST_CASE("finite pairs are decided exactly in the unrooted mode") {
  auto cherry = make_cherry();  // a 3-vertex path, once the root is forgotten
  auto p4 = mk({"r", "m", "m2", "l"}, 0, {{e(1, 1)}, {e(2, 1)}, {e(3, 1)}, {}});
  auto r = scheme_iso_unrooted(cherry, p4, 4);
  CHECK(r.verdict == Verdict::No);  // 3 vertices vs 4
  auto emb = scheme_embed_unrooted(cherry, p4, 4);
  CHECK(emb.verdict == Verdict::Yes);
  auto emb2 = scheme_embed_unrooted(p4, cherry, 4);
  CHECK(emb2.verdict == Verdict::No);

  // the cherry is the 3-vertex path seen from its middle
  auto p3 = mk({"r", "m", "l"}, 0, {{e(1, 1)}, {e(2, 1)}, {}});
  CHECK(scheme_iso_rooted(cherry, p3).verdict == Verdict::No);
  CHECK(scheme_iso_unrooted(cherry, p3, 4).verdict == Verdict::Yes);

  // unrooted iso across a reroot of a finite tree
  auto moved = reroot(p4, VertexAddress{{AddressStep{1, 0}}});
  CHECK(scheme_iso_rooted(p4, moved).verdict == Verdict::No);
  CHECK(scheme_iso_unrooted(p4, moved, 4).verdict == Verdict::Yes);
}

TEST_CASE("truncation oracle sanity against the finite embed search") {
  for (int i = 0; i < 80; ++i) {
    auto a = random_scheme(2 + i % 3, 2, 0.0, 880 + i);
    auto b = random_scheme(2 + (i + 1) % 3, 2, 0.0, 990 + i);
    int d = 1 + i % 4;
    bool via_oracle = oracle_embed_trunc(a, b, d);
    auto ma = materialize(truncate(a, d));
    auto mb = materialize(truncate(b, d));
    bool via_search = embed_rooted(ma, mb).has_value();
    CAPTURE(i);
    CHECK(via_oracle == via_search);
  }
}
