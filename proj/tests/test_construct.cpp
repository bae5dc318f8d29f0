#include <doctest.h>

#include <cstdint>
#include <vector>

#include "twintree/construct.hpp"
#include "twintree/decide.hpp"
#include "twintree/errors.hpp"
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

}  // namespace

TEST_CASE("tooth patterns index an eventually periodic sequence") {
  ToothPattern p{{1, 0}, {0, 1, 1}};
  CHECK(p.bit(0) == 1);
  CHECK(p.bit(1) == 0);
  CHECK(p.bit(2) == 0);
  CHECK(p.bit(3) == 1);
  CHECK(p.bit(4) == 1);
  CHECK(p.bit(5) == 0);  // period wraps
  CHECK(p.bit(6) == 1);
  CHECK(p.bit(302) == 0);  // (302 - 2) % 3 == 0, the period's first bit

  ToothPattern a{{}, {1}};
  ToothPattern b{{1}, {1}};
  CHECK(!(a == b));
  CHECK(a.same_sequence(b));
  ToothPattern c{{}, {1, 0}};
  ToothPattern d{{1}, {0, 1}};
  CHECK(c.same_sequence(d));
  CHECK(!c.same_sequence(a));
}

TEST_CASE("comb construction validates its pattern") {
  CHECK_THROWS_AS(make_comb(ToothPattern{{}, {}}), BadParams);
  CHECK_THROWS_AS(make_comb(ToothPattern{{}, {0}}), BadParams);
  CHECK_THROWS_AS(make_comb(ToothPattern{{2}, {1}}), BadParams);
  CHECK_THROWS_AS(make_comb(ToothPattern{{}, {1, 7}}), BadParams);
  CHECK(validate(make_comb(ToothPattern{{0, 1}, {1, 0}})));
}

TEST_CASE("basic builders produce valid schemes with the advertised shapes") {
  CHECK(validate(make_single()));
  CHECK(validate(make_ray()));
  CHECK(validate(make_d_ary(5)));
  CHECK(validate(make_caterpillar()));
  CHECK(validate(make_cherry()));
  CHECK_THROWS_AS(make_d_ary(0), BadParams);
  CHECK_THROWS_AS(make_caterpillar_minus(-1), BadParams);

  // the all-teeth comb is the caterpillar
  CHECK(scheme_iso_rooted(make_comb(ToothPattern{{}, {1}}), make_caterpillar()).verdict ==
        Verdict::Yes);
  // stripping zero leaves changes nothing
  CHECK(scheme_iso_rooted(make_caterpillar_minus(0), make_caterpillar()).verdict ==
        Verdict::Yes);
  // a 1-ary tree is a ray
  CHECK(scheme_iso_rooted(make_d_ary(1), make_ray()).verdict == Verdict::Yes);
}

TEST_CASE("pair_index walks unordered pairs in row-major order") {
  CHECK(pair_index(0, 1, 4) == 0);
  CHECK(pair_index(0, 2, 4) == 1);
  CHECK(pair_index(0, 3, 4) == 2);
  CHECK(pair_index(1, 2, 4) == 3);
  CHECK(pair_index(1, 3, 4) == 4);
  CHECK(pair_index(2, 3, 4) == 5);
  CHECK(pair_index(0, 1, 2) == 0);
}

TEST_CASE("caterpillar family: consecutive failure depths 1..K-1") {
  auto fam = caterpillar_family(6);
  CHECK(fam.members.size() == 6);
  CHECK(fam.twin.size() == 15);
  CHECK(fam.iso.size() == 15);
  REQUIRE(fam.failure_depths);
  CHECK(*fam.failure_depths == std::vector<int>{1, 2, 3, 4, 5});
  CHECK_NOTHROW(validate_twin_family(fam));

  for (const auto& m : fam.members) CHECK(validate(m));
  // every twin certificate replays against its pair
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
      const auto& tw = fam.twin[pair_index(i, j, fam.members.size())];
      REQUIRE(tw.verdict == Verdict::Yes);
      const auto& a = fam.members[i];
      const auto& b = fam.members[j];
      REQUIRE(tw.forward);
      REQUIRE(tw.backward);
      if (tw.forward_reroot)
        CHECK_NOTHROW(verify_embed_certificate(a, reroot(b, *tw.forward_reroot), *tw.forward));
      else
        CHECK_NOTHROW(verify_embed_certificate(a, b, *tw.forward));
      if (tw.backward_reroot)
        CHECK_NOTHROW(
            verify_embed_certificate(b, reroot(a, *tw.backward_reroot), *tw.backward));
      else
        CHECK_NOTHROW(verify_embed_certificate(b, a, *tw.backward));
    }

  CHECK_THROWS_AS(caterpillar_family(0), BadParams);
  CHECK(caterpillar_family(1).members.size() == 1);
}

TEST_CASE("tooth family: distinct sequences stay apart, equal sequences collapse") {
  std::vector<ToothPattern> ps = {{{}, {1}}, {{}, {1, 0}}};  // 111... vs 1010...
  auto fam = comb_tooth_family(ps);
  CHECK(fam.members.size() == 2);
  REQUIRE(fam.failure_depths);
  CHECK(fam.failure_depths->size() == 1);
  CHECK_NOTHROW(validate_twin_family(fam));

  // equal sequences give members the engine proves isomorphic, which the
  // family contract rejects
  std::vector<ToothPattern> same = {{{}, {1}}, {{1}, {1}}};
  auto collapsed = comb_tooth_family(same);
  CHECK(collapsed.iso[0].verdict == Verdict::Yes);
  CHECK_THROWS_AS(validate_twin_family(collapsed), CertificateFailure);

  CHECK_THROWS_AS(comb_tooth_family({}), BadParams);
}

TEST_CASE("tooth family members absorb each other through the omega bundle") {
  std::vector<ToothPattern> ps = {{{}, {1}}, {{1, 0}, {1}}};
  auto fam = comb_tooth_family(ps);
  for (const auto& m : fam.members) {
    auto r = classify(m);
    CHECK(!r.locally_finite);  // the omega bundle
    CHECK(r.contains_comb);    // the comb branch
    CHECK(!r.rayless);
  }
  const auto& tw = fam.twin[0];
  REQUIRE(tw.verdict == Verdict::Yes);
  // rooted twinning, no rerooting involved
  CHECK(!tw.forward_reroot);
  CHECK(!tw.backward_reroot);
}

TEST_CASE("sandwich family between the bundle and the full tree") {
  auto fam = sandwich_family(make_ray(), 1, make_cherry(), 3);
  CHECK(fam.members.size() == 3);
  REQUIRE(fam.failure_depths);
  CHECK(fam.failure_depths->size() == 2);
  CHECK((*fam.failure_depths)[0] < (*fam.failure_depths)[1]);
  CHECK_NOTHROW(validate_twin_family(fam));
  for (const auto& m : fam.members) CHECK(validate(m));

  CHECK_THROWS_AS(sandwich_family(make_ray(), 0, make_cherry(), 3), BadParams);
  CHECK_THROWS_AS(sandwich_family(make_ray(), 1, make_cherry(), 0), BadParams);
}

TEST_CASE("family validation notices tampering") {
  auto fam = caterpillar_family(3);

  auto wrong_iso = fam;
  wrong_iso.iso[0].verdict = Verdict::Yes;
  CHECK_THROWS_AS(validate_twin_family(wrong_iso), CertificateFailure);

  auto wrong_twin = fam;
  wrong_twin.twin[0].verdict = Verdict::No;
  CHECK_THROWS_AS(validate_twin_family(wrong_twin), CertificateFailure);

  auto missing = fam;
  missing.twin.pop_back();
  CHECK_THROWS_AS(validate_twin_family(missing), CertificateFailure);

  auto bad_depths = fam;
  REQUIRE(bad_depths.failure_depths);
  (*bad_depths.failure_depths)[0] = 7;
  CHECK_THROWS_AS(validate_twin_family(bad_depths), CertificateFailure);
}

TEST_CASE("star of truncated paths: the cut ray is invisible") {
  for (int n = 1; n <= 5; ++n) {
    auto plain = star_of_paths_truncation(n, false);
    auto cut = star_of_paths_truncation(n, true);
    CHECK(validate(plain));
    CHECK(validate(cut));
    CHECK(finite_unfolding_height(plain) == n);
    CHECK(finite_unfolding_height(cut) == n);
    CHECK(scheme_iso_rooted(plain, cut).verdict == Verdict::Yes);
    auto r = classify(plain);
    CHECK(r.rayless);
    CHECK(!r.locally_finite);
  }
  CHECK(scheme_iso_rooted(star_of_paths_truncation(2, false), star_of_paths_truncation(3, false))
            .verdict == Verdict::No);
  CHECK_THROWS_AS(star_of_paths_truncation(0, false), BadParams);
}

TEST_CASE("replace_twin_branches swaps exactly the twinned branches") {
  // root carries an omega bundle of caterpillars and one bare leaf
  auto t = mk({"r", "s", "l"}, 0, {{ew(1), e(2, 1)}, {e(1, 1), e(2, 1)}, {}});
  auto cherry = make_cherry();

  // pivot 0 is the caterpillar bundle; only it twins with itself
  auto swapped = replace_twin_branches(t, 0, cherry);
  CHECK(validate(swapped));
  auto expected = mk({"r", "c", "cl", "l"}, 0, {{ew(1), e(3, 1)}, {e(2, 2)}, {}, {}});
  CHECK(scheme_iso_rooted(swapped, expected).verdict == Verdict::Yes);

  // pivot 1 is the bare leaf; the caterpillars stay
  auto swapped2 = replace_twin_branches(t, 1, cherry);
  auto expected2 = mk({"r", "s", "l", "c", "cl"}, 0,
                      {{ew(1), e(3, 1)}, {e(1, 1), e(2, 1)}, {}, {e(4, 2)}, {}});
  CHECK(scheme_iso_rooted(swapped2, expected2).verdict == Verdict::Yes);

  CHECK_THROWS_AS(replace_twin_branches(t, 5, cherry), BadIndex);
  CHECK_THROWS_AS(replace_twin_branches(t, -1, cherry), BadIndex);
}

TEST_CASE("replace_twin_branches replaces twinned distinct branches together") {
  // the two branches are the omega caterpillar bundle with and without a
  // pendant leaf: distinct trees, but rooted twins of each other
  auto t = mk({"r", "x", "y", "s", "l"}, 0,
              {{e(1, 1), e(2, 1)},  // r -> [x, y]
               {ew(3)},             // x: omega caterpillars
               {ew(3), e(4, 1)},    // y: omega caterpillars plus a leaf
               {e(3, 1), e(4, 1)},  // s: caterpillar spine
               {}});
  REQUIRE(validate(t));

  auto swapped = replace_twin_branches(t, 0, make_cherry());
  // both branches were twins of pivot 0, so both become cherries
  auto expected = mk({"r", "c", "cl"}, 0, {{e(1, 2)}, {e(2, 2)}, {}});
  CHECK(scheme_iso_rooted(swapped, expected).verdict == Verdict::Yes);

  // with a non-twin branch alongside, only the twins are touched
  auto t2 = mk({"r", "x", "y", "s", "l"}, 0,
               {{e(1, 1), e(2, 1), e(4, 1)},  // r -> [x, y, l]
                {ew(3)},
                {ew(3), e(4, 1)},
                {e(3, 1), e(4, 1)},
                {}});
  auto swapped2 = replace_twin_branches(t2, 0, make_cherry());
  auto expected2 = mk({"r", "c", "cl", "l"}, 0, {{e(1, 2), e(3, 1)}, {e(2, 2)}, {}, {}});
  CHECK(scheme_iso_rooted(swapped2, expected2).verdict == Verdict::Yes);
}
