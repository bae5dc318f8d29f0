#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twintree/scheme.hpp"

namespace twintree {

enum class Verdict { Yes, No, Unknown };

std::string to_string(Verdict v);

// Result of the partition-refinement isomorphism decision. class_of_a and
// class_of_b assign every state of either scheme its block in the stable
// partition (blocks refined over the disjoint union of the state sets).
// On yes the roots share a block; on no failure_depth is the smallest depth
// whose truncations are non-isomorphic.
struct IsoCertificate {
  Verdict verdict = Verdict::No;
  std::vector<int> class_of_a;
  std::vector<int> class_of_b;
  int rounds = 0;
  std::optional<int> failure_depth;
};

// One line of a child matching: `amount` copies of source entry
// `source_entry` are hosted by target entry `target_entry`.
struct MatchLine {
  int source_entry = 0;
  int target_entry = 0;
  Multiplicity amount;
};

// How the children of one related state pair are matched.
struct PairMatching {
  int source_state = 0;
  int target_state = 0;
  std::vector<MatchLine> lines;
};

// Result of the greatest-fixpoint embedding decision. relation holds the
// surviving (source state, target state) pairs; on yes every pair carries a
// capacity-respecting matching of child entries that uses only surviving
// pairs, and replaying the matchings top-down yields the embedding. On no
// failure_depth is the smallest depth whose truncations do not embed.
struct EmbedCertificate {
  Verdict verdict = Verdict::No;
  std::vector<std::pair<int, int>> relation;
  std::vector<PairMatching> matchings;
  int rounds = 0;
  std::optional<int> failure_depth;
};

// Mutual embeddability. For the unrooted variant a direction may be
// certified against a rerooting of the other tree; the address used is then
// recorded next to that direction's certificate.
struct TwinCertificate {
  Verdict verdict = Verdict::No;
  std::optional<EmbedCertificate> forward;
  std::optional<EmbedCertificate> backward;
  std::optional<VertexAddress> forward_reroot;   // a embeds into reroot(b, .)
  std::optional<VertexAddress> backward_reroot;  // b embeds into reroot(a, .)
  std::string reason;
};

IsoCertificate scheme_iso_rooted(const Scheme& a, const Scheme& b);
EmbedCertificate scheme_embed_rooted(const Scheme& a, const Scheme& b);
TwinCertificate twin_rooted(const Scheme& a, const Scheme& b);

// Depth-bounded semi-decisions for the unrooted questions. Yes comes with a
// witness address of depth <= bound; no comes from an invariant that rules
// out every rooting (or, for finite unfoldings, from the exact finite
// check); otherwise unknown.
struct UnrootedIsoResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<VertexAddress> reroot_b;
  std::optional<IsoCertificate> cert;
  std::string reason;
};

struct UnrootedEmbedResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<VertexAddress> reroot_b;
  std::optional<EmbedCertificate> cert;
  std::string reason;
};

UnrootedIsoResult scheme_iso_unrooted(const Scheme& a, const Scheme& b, int bound);
UnrootedEmbedResult scheme_embed_unrooted(const Scheme& a, const Scheme& b, int bound);
TwinCertificate twin_unrooted(const Scheme& a, const Scheme& b, int bound);

// Certificate replay. Both return normally when the certificate is
// internally consistent for the given schemes and throw CertificateFailure
// otherwise; they re-derive nothing, they only check.
void verify_iso_certificate(const Scheme& a, const Scheme& b, const IsoCertificate& c);
void verify_embed_certificate(const Scheme& a, const Scheme& b, const EmbedCertificate& c);

// Independent ground truth at one depth: materialize both truncations and
// search for a root-preserving embedding by plain memoized backtracking
// (no matching machinery shared with the engine).
bool oracle_embed_trunc(const Scheme& a, const Scheme& b, int n);

}  // namespace twintree
