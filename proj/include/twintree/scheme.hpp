#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twintree/finite_tree.hpp"
#include "twintree/multiplicity.hpp"

namespace twintree {

// One child group of a state: mult copies of the subtree presented by target.
struct SchemeEntry {
  int target = 0;
  Multiplicity mult;
  friend bool operator==(const SchemeEntry& a, const SchemeEntry& b) {
    return a.target == b.target && a.mult == b.mult;
  }
};

// Finite presentation of a (possibly infinite) rooted tree. The unfolding
// starts with one vertex of the root state; a vertex of state q gets, per
// entry (q', m), m children of state q'. Invariants (see validate_error):
// every state reachable from the root, children sorted by target index,
// targets distinct within one list, names nonempty and unique.
struct Scheme {
  std::string name = "s";
  std::vector<std::string> states;
  int root = 0;
  std::vector<std::vector<SchemeEntry>> children;

  int n_states() const { return static_cast<int>(states.size()); }
};

// Vertex of an unfolding, identified by the path from the root: at each step
// pick a child entry by its target state and a copy index below the entry's
// multiplicity (any natural under omega).
struct AddressStep {
  int state = 0;
  std::uint64_t copy = 0;
  friend bool operator==(const AddressStep& a, const AddressStep& b) {
    return a.state == b.state && a.copy == b.copy;
  }
};

struct VertexAddress {
  std::vector<AddressStep> steps;
  std::size_t depth() const { return steps.size(); }
  friend bool operator==(const VertexAddress& a, const VertexAddress& b) {
    return a.steps == b.steps;
  }
};

// Witness for a cycle-based flag: the states of one reachable cycle, and for
// the comb flag also the on-cycle state with child multiplicity sum >= 2.
struct ClassificationReport {
  bool finite = false;
  bool locally_finite = false;
  bool rayless = false;
  bool contains_comb = false;
  bool nearly_finite = false;
  std::optional<std::vector<int>> cycle;           // present iff !rayless
  std::optional<int> omega_state;                  // present iff !locally_finite
  std::optional<std::vector<int>> comb_cycle;      // present iff contains_comb
  std::optional<int> comb_state;                   // on comb_cycle, child sum >= 2
};

// First violated invariant as a message, or nullopt if the scheme is valid.
std::optional<std::string> validate_error(const Scheme& s);
bool validate(const Scheme& s);

std::vector<int> reachable_states(const Scheme& s);

ClassificationReport classify(const Scheme& s);

// Acyclic scheme presenting the depth-n truncation of unfold(s). States are
// (original state, depth) pairs, named "<state>_<depth>"; only pairs that
// actually occur are kept.
Scheme truncate(const Scheme& s, int n);

// Explicit unfolding of a scheme that presents a finite tree. Vertices are
// numbered breadth-first with children in stored entry order. Throws
// InfiniteUnfolding when a cycle is reachable or any multiplicity is omega,
// CapExceeded when the tree is finite but larger than cap.
RootedFiniteTree materialize(const Scheme& s, std::size_t cap = 2'000'000);

bool address_valid(const Scheme& s, const VertexAddress& a);

// Scheme presenting the same unrooted tree re-rooted at the addressed
// vertex. Adds one context state per ancestor (its used child entry
// decremented, omega staying omega) plus a fresh root state; unreachable
// states are pruned. Throws BadAddress.
Scheme reroot(const Scheme& s, const VertexAddress& a);

// Canonical code of an acyclic scheme's unfolding, compatible with
// ahu_code on materialized trees: child groups merge by sub-code, finite
// groups render by repetition and omega groups as "<code>*w". Throws
// InfiniteUnfolding on a reachable cycle, CapExceeded when a finite group
// would repeat a sub-code more than rep_cap times.
CanonicalCode scheme_code(const Scheme& s, std::uint64_t rep_cap = 100'000);

// Smallest depth n <= max_depth at which the depth-n truncations of the two
// unfoldings stop being isomorphic, or nullopt when none is found (a literal
// loop over depths, one isomorphism decision per depth).
std::optional<int> local_iso_up_to(const Scheme& a, const Scheme& b, int max_depth);

// Exact vertex count of the depth-n truncation, as a Multiplicity (omega
// when infinite; finite counts saturate just short of omega). Cheap size
// guard before materializing.
Multiplicity truncation_size(const Scheme& s, int n);

// Vertex count of the whole unfolding if it is finite and small enough to
// count exactly, nullopt otherwise.
std::optional<std::uint64_t> finite_unfolding_size(const Scheme& s);

// Height of a finite unfolding (longest root path), nullopt when infinite.
std::optional<int> finite_unfolding_height(const Scheme& s);

// Copy-index-0 addresses of unfold(s) in breadth-first order up to
// max_depth, capped at cap entries. Rerooting at equal-state siblings gives
// isomorphic results, so these addresses cover every rerooting class.
struct AddressEnumeration {
  std::vector<VertexAddress> addresses;
  bool complete = false;  // false when the cap cut the enumeration short
};
AddressEnumeration enumerate_addresses(const Scheme& s, int max_depth, std::size_t cap = 100'000);

// Occurrence counts of unrooted vertex degrees over the whole unfolding:
// pairs (degree, how many vertices), both in N u {omega}, sorted by degree.
// The multiset is invariant under rerooting, which makes it a sound
// refutation witness for unrooted isomorphism. Entries whose exact count
// overflowed are dropped and *exact is set false.
std::vector<std::pair<Multiplicity, Multiplicity>> degree_histogram(const Scheme& s, bool* exact);

}  // namespace twintree
