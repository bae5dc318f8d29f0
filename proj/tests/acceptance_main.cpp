// Acceptance gate: one line per criterion, each with its own case-count and
// wall-time budget. Exits nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "twintree/check.hpp"
#include "twintree/construct.hpp"
#include "twintree/decide.hpp"
#include "twintree/dsl.hpp"
#include "twintree/errors.hpp"
#include "twintree/random_gen.hpp"
#include "twintree/scheme.hpp"

using namespace twintree;

namespace {

int g_failures = 0;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

void line(const char* id, bool pass, const std::string& what, double secs, double limit,
          const std::string& detail) {
  std::printf("%s %s  %s  (%.2fs of %.0fs)%s%s\n", id, pass ? "PASS" : "FAIL", what.c_str(),
              secs, limit, detail.empty() ? "" : "  ", detail.c_str());
  if (!pass) ++g_failures;
}

// criterion backed by one check suite with pinned case count and time budget
void suite_criterion(const char* id, const std::string& suite, int want_cases, double limit,
                     const std::string& what) {
  SuiteOptions opt;  // pinned defaults: seed 0, full case counts
  double t0 = now_seconds();
  std::string detail;
  bool pass = false;
  int cases = 0;
  try {
    CheckReport r = run_suite(suite, opt);
    cases = r.cases;
    if (!r.passed()) {
      const auto& f = r.failures.front();
      detail = std::to_string(r.failures.size()) + " failed, first: " + f.case_name +
               " expected " + f.expected + ", got " + f.got;
    } else if (r.cases != want_cases) {
      detail = "expected " + std::to_string(want_cases) + " cases, ran " +
               std::to_string(r.cases);
    } else {
      pass = true;
    }
  } catch (const Error& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = now_seconds() - t0;
  if (pass && secs > limit) {
    pass = false;
    detail = "over time budget";
  }
  line(id, pass, what + " [" + suite + ", " + std::to_string(cases) + " cases]", secs, limit,
       detail);
}

void criterion_a10() {
  double t0 = now_seconds();
  std::string detail;
  bool pass = true;
  try {
    auto ray = classify(make_ray());
    auto cat = classify(make_caterpillar());
    auto b2 = classify(make_d_ary(2));
    auto b3 = classify(make_d_ary(3));
    if (!ray.nearly_finite) { pass = false; detail = "ray not nearly finite"; }
    else if (!cat.contains_comb) { pass = false; detail = "caterpillar comb missed"; }
    else if (!b2.contains_comb || b2.nearly_finite) { pass = false; detail = "binary tree flags wrong"; }
    else if (!b3.contains_comb || b3.nearly_finite) { pass = false; detail = "ternary tree flags wrong"; }
  } catch (const Error& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = now_seconds() - t0;
  if (pass && secs > 1.0) { pass = false; detail = "over time budget"; }
  line("A10", pass, "classification spot checks [4 cases]", secs, 1.0, detail);
}

void criterion_a11() {
  double t0 = now_seconds();
  std::string detail;
  bool pass = true;
  int done = 0;
  try {
    for (int i = 0; i < 100; ++i) {
      Scheme s = random_scheme(1 + i % 6, 5, 0.25, derive_seed(0, 11, i));
      std::string text = serialize_dsl(s);
      Scheme back = parse_scheme_doc(text);
      if (serialize_dsl(back) != text) {
        pass = false;
        detail = "case " + std::to_string(i) + ": re-serialization differs";
        break;
      }
      if (scheme_iso_rooted(s, back).verdict != Verdict::Yes) {
        pass = false;
        detail = "case " + std::to_string(i) + ": parsed scheme not isomorphic";
        break;
      }
      ++done;
    }
  } catch (const Error& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = now_seconds() - t0;
  if (pass && secs > 10.0) { pass = false; detail = "over time budget"; }
  line("A11", pass, "serialize/parse round trips [" + std::to_string(done) + " cases]", secs,
       10.0, detail);
}

}  // namespace

int main() {
  suite_criterion("A1", "lemma6", 200, 60,
                  "self-embeddings of every rooted tree shape up to 8 vertices");
  suite_criterion("A2", "mutual-finite", 1000, 30,
                  "mutual embedding implies isomorphism on finite pairs");
  suite_criterion("A3", "iso-oracle", 500, 60,
                  "isomorphism verdicts and failure depths against truncation codes");
  suite_criterion("A4", "embed-oracle", 300, 120,
                  "embedding verdicts and failure depths against the truncation oracle");
  suite_criterion("A5", "comb-oracle", 200, 60,
                  "comb detection against the growth-window oracle");
  suite_criterion("A6", "caterpillar-family", 4, 10,
                  "caterpillar family of 6: depths 1..5 and oracle spot checks");
  suite_criterion("A7", "lemma7-example", 8, 5,
                  "path stars with and without the cut ray are isomorphic");
  suite_criterion("A8", "tooth-family", 10, 20,
                  "five tooth layouts: pairwise twins, pairwise non-isomorphic");
  suite_criterion("A9", "sandwich-family", 5, 30,
                  "sandwich family of 5: strictly increasing failure depths");
  criterion_a10();
  criterion_a11();

  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 11 criteria FAILED\n", g_failures);
  return 1;
}
