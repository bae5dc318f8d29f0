#pragma once

#include <optional>
#include <vector>

#include "twintree/decide.hpp"
#include "twintree/scheme.hpp"

namespace twintree {

// Tooth layout of a comb as an eventually periodic 0/1 sequence: bit i says
// whether spine position i carries a length-1 tooth. The period must contain
// a 1 so that infinitely many teeth remain.
struct ToothPattern {
  std::vector<int> preperiod;
  std::vector<int> period;

  int bit(std::size_t i) const;
  bool operator==(const ToothPattern& other) const;
  // true when the two patterns agree bitwise from position 0 on
  bool same_sequence(const ToothPattern& other) const;
};

// A list of schemes that are pairwise twins yet pairwise non-isomorphic,
// together with the certificates that show it. iso covers unordered pairs
// (i < j, row-major); twin likewise. failure_depths, when present, hold the
// iso failure depth of each consecutive member pair and must be strictly
// increasing.
struct TwinFamily {
  std::vector<Scheme> members;
  std::vector<TwinCertificate> twin;   // pair (i,j), i<j, row-major order
  std::vector<IsoCertificate> iso;     // same order
  std::optional<std::vector<int>> failure_depths;
};

// index of the (i,j) entry, i < j, in the row-major pair order used above
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t k);

// Re-checks every certificate of the family against its members and the
// family contract (twins yes, iso no, depths increasing). Throws
// CertificateFailure on any mismatch.
void validate_twin_family(const TwinFamily& f);

Scheme make_single();
Scheme make_ray();
Scheme make_d_ary(int d);
Scheme make_caterpillar();
// caterpillar with the leaves at the first k spine positions removed
Scheme make_caterpillar_minus(int k);
// ray with a length-1 tooth at position i iff pattern bit i is 1
Scheme make_comb(const ToothPattern& p);
Scheme make_cherry();

// Members: caterpillar_minus(0..K-1). Consecutive pairs certify strictly
// increasing iso failure depths; twinning is witnessed by spine slides, so
// the twin certificates are unrooted ones.
TwinFamily caterpillar_family(int K);

// Members: an omega bundle of caterpillars with one comb(pattern) branch
// alongside. The bundle absorbs either member's branches into the other, so
// all pairs are rooted twins, while distinct tooth sequences keep the comb
// branches, and hence the members, non-isomorphic. Pairwise iso verdicts are
// recorded as computed; the caller selects (equal sequences give iso yes).
TwinFamily comb_tooth_family(const std::vector<ToothPattern>& patterns);

// Acyclic scheme: a root with omega paths of every length 1..n attached;
// with_ray adds one more multiplicity-1 path of length n (the cut of the
// infinite path). The two variants unfold isomorphically at every depth.
Scheme star_of_paths_truncation(int n, bool with_ray);

// Replace every root branch that is rooted-twinned with the pivot branch
// (decided by the embedding engine) by a copy of `replacement`. pivot is an
// index into the root's child entries. Throws BadIndex.
Scheme replace_twin_branches(const Scheme& t, int pivot, const Scheme& replacement);

// Members: an omega bundle of copies of B_1 with one B_m branch alongside,
// where B_m is `spine` with `component` attached to every vertex at depth
// divisible by p*m. Each member sits between the bundle and the full tree,
// which forces pairwise twinning; the sparser attachment schedules keep the
// members non-isomorphic with strictly increasing failure depths.
TwinFamily sandwich_family(const Scheme& spine, int p, const Scheme& component, int K);

}  // namespace twintree
