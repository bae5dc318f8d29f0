#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twintree/construct.hpp"
#include "twintree/decide.hpp"
#include "twintree/scheme.hpp"

namespace twintree {

using ordered_json = nlohmann::ordered_json;

// A `tree` document: explicit finite tree, optionally rooted.
struct TreeDoc {
  std::string name;
  int n = 1;
  std::vector<std::pair<int, int>> edges;
  std::optional<int> root;
};

// Result of parsing one document; exactly one member is set.
struct ParsedDoc {
  std::optional<Scheme> scheme;
  std::optional<TreeDoc> tree;
};

// Grammar:
//   scheme <id> { root <id>; <id> -> [<id>[*<int>|*w], ...]; ... }
//   tree <id> { edges (u,v) (u,v) ...; root u; }   (root clause optional)
// `#` starts a line comment; identifiers are [A-Za-z_][A-Za-z0-9_]*.
// Multiplicity omitted means 1. Every state referenced must appear as a
// rule head. Throws ParseError with position info; ValidationError when the
// parsed value violates scheme invariants (duplicate targets, unreachable
// states). Entry lists are stored sorted by target index.
ParsedDoc parse_dsl(const std::string& text);

// Convenience: parse and insist on a scheme, converting a rooted tree
// document (one state per vertex). Unrooted tree documents are rejected.
Scheme parse_scheme_doc(const std::string& text);

Scheme tree_doc_to_scheme(const TreeDoc& doc);

// Canonical DSL text; parse(serialize_dsl(s)) reproduces the scheme and
// re-serializes byte-identically.
std::string serialize_dsl(const Scheme& s);

std::uint64_t fnv1a(const std::string& text);
std::string content_hash(const Scheme& s);  // "fnv1a:<hex of serialized DSL>"

std::string address_str(const VertexAddress& a, const Scheme& s);
VertexAddress parse_address(const std::string& text, const Scheme& s);

// JSON forms (deterministic field order, schemes embedded as DSL strings)
ordered_json scheme_ref_json(const Scheme& s);
ordered_json json_of(const ClassificationReport& r, const Scheme& s);
ordered_json json_of(const IsoCertificate& c, const Scheme& a, const Scheme& b);
ordered_json json_of(const EmbedCertificate& c, const Scheme& a, const Scheme& b);
ordered_json json_of(const TwinCertificate& c, const Scheme& a, const Scheme& b);
ordered_json json_of(const UnrootedIsoResult& r, const Scheme& a, const Scheme& b);
ordered_json json_of(const UnrootedEmbedResult& r, const Scheme& a, const Scheme& b);
ordered_json json_of(const TwinFamily& f);

}  // namespace twintree
