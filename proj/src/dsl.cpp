#include "twintree/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "twintree/errors.hpp"

namespace twintree {

namespace {

struct Token {
  enum Kind { Id, Int, Sym, End } kind = End;
  std::string text;
  std::uint64_t value = 0;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (; k > 0; --k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Id;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance(1);
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Int;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        std::uint64_t d = static_cast<std::uint64_t>(src[i] - '0');
        if (t.value > (~std::uint64_t(0) - d) / 10)
          throw ParseError("number too large", t.line, t.col);
        t.value = t.value * 10 + d;
        t.text += src[i];
        advance(1);
      }
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Sym;
      t.text = "->";
      advance(2);
    } else if (std::string("{}[];,*()").find(c) != std::string::npos) {
      t.kind = Token::Sym;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  const Token& peek() const { return toks[at]; }
  Token take() { return toks[at == toks.size() - 1 ? at : at++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) {
    throw ParseError(msg, t.line, t.col);
  }

  Token expect_id() {
    Token t = take();
    if (t.kind != Token::Id) fail("expected an identifier", t);
    return t;
  }
  Token expect_int() {
    Token t = take();
    if (t.kind != Token::Int) fail("expected a number", t);
    return t;
  }
  Token expect_sym(const std::string& s) {
    Token t = take();
    if (t.kind != Token::Sym || t.text != s) fail("expected '" + s + "'", t);
    return t;
  }
  bool at_sym(const std::string& s) const {
    return peek().kind == Token::Sym && peek().text == s;
  }
  bool at_keyword(const std::string& s) const {
    return peek().kind == Token::Id && peek().text == s;
  }
};

struct RawEntry {
  std::string target;
  Multiplicity mult;
  int line, col;
};

}  // namespace

ParsedDoc parse_dsl(const std::string& text) {
  Parser p{lex(text), 0};
  Token head = p.expect_id();
  ParsedDoc doc;

  if (head.text == "scheme") {
    Scheme s;
    s.name = p.expect_id().text;
    p.expect_sym("{");
    Token rootkw = p.expect_id();
    if (rootkw.text != "root") p.fail("expected 'root'", rootkw);
    Token root_tok = p.expect_id();
    p.expect_sym(";");

    std::map<std::string, int> index_of;
    std::vector<std::vector<RawEntry>> raw;
    while (!p.at_sym("}")) {
      Token head_tok = p.expect_id();
      if (index_of.count(head_tok.text)) p.fail("duplicate rule for this state", head_tok);
      int idx = static_cast<int>(index_of.size());
      index_of.emplace(head_tok.text, idx);
      s.states.push_back(head_tok.text);
      p.expect_sym("->");
      p.expect_sym("[");
      std::vector<RawEntry> row;
      if (!p.at_sym("]")) {
        while (true) {
          Token target = p.expect_id();
          Multiplicity m = Multiplicity::finite(1);
          if (p.at_sym("*")) {
            p.expect_sym("*");
            Token mt = p.take();
            if (mt.kind == Token::Id && mt.text == "w") {
              m = Multiplicity::omega();
            } else if (mt.kind == Token::Int) {
              if (mt.value == 0) p.fail("multiplicity must be positive", mt);
              m = Multiplicity::finite(mt.value);
            } else {
              p.fail("expected a multiplicity (number or w)", mt);
            }
          }
          row.push_back({target.text, m, target.line, target.col});
          if (p.at_sym(",")) {
            p.expect_sym(",");
            continue;
          }
          break;
        }
      }
      p.expect_sym("]");
      p.expect_sym(";");
      raw.push_back(std::move(row));
    }
    p.expect_sym("}");
    Token end = p.take();
    if (end.kind != Token::End) p.fail("trailing input after the document", end);
    if (raw.empty()) throw ParseError("a scheme needs at least one rule", head.line, head.col);

    auto it = index_of.find(root_tok.text);
    if (it == index_of.end()) p.fail("root state has no rule", root_tok);
    s.root = it->second;
    for (auto& row : raw) {
      std::vector<SchemeEntry> entries;
      for (const auto& e : row) {
        auto t = index_of.find(e.target);
        if (t == index_of.end())
          throw ParseError("state '" + e.target + "' has no rule", e.line, e.col);
        entries.push_back({t->second, e.mult});
      }
      std::sort(entries.begin(), entries.end(),
                [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
      for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].target == entries[i - 1].target)
          throw ValidationError("duplicate target in one entry list");
      s.children.push_back(std::move(entries));
    }
    if (auto err = validate_error(s)) throw ValidationError(*err);
    doc.scheme = std::move(s);
    return doc;
  }

  if (head.text == "tree") {
    TreeDoc t;
    t.name = p.expect_id().text;
    p.expect_sym("{");
    Token kw = p.expect_id();
    if (kw.text != "edges") p.fail("expected 'edges'", kw);
    int max_vertex = -1;
    while (p.at_sym("(")) {
      p.expect_sym("(");
      Token u = p.expect_int();
      p.expect_sym(",");
      Token v = p.expect_int();
      p.expect_sym(")");
      if (u.value > 1'000'000'000 || v.value > 1'000'000'000)
        p.fail("vertex number out of range", u);
      int ui = static_cast<int>(u.value), vi = static_cast<int>(v.value);
      t.edges.push_back({ui, vi});
      max_vertex = std::max({max_vertex, ui, vi});
    }
    p.expect_sym(";");
    if (p.at_keyword("root")) {
      p.expect_id();
      Token r = p.expect_int();
      if (r.value > 1'000'000'000) p.fail("vertex number out of range", r);
      t.root = static_cast<int>(r.value);
      max_vertex = std::max(max_vertex, *t.root);
      p.expect_sym(";");
    }
    p.expect_sym("}");
    Token end = p.take();
    if (end.kind != Token::End) p.fail("trailing input after the document", end);
    if (max_vertex < 0)
      throw ValidationError("a tree document needs edges or a root to fix its vertices");
    t.n = max_vertex + 1;
    doc.tree = std::move(t);
    return doc;
  }

  throw ParseError("expected 'scheme' or 'tree'", head.line, head.col);
}

Scheme tree_doc_to_scheme(const TreeDoc& doc) {
  if (!doc.root) throw ValidationError("tree document has no root");
  if (*doc.root < 0 || *doc.root >= doc.n) throw ValidationError("tree root out of range");
  FiniteTree ft(doc.n, doc.edges);
  RootedFiniteTree rt = rooted_at(ft, *doc.root);
  Scheme s;
  s.name = doc.name;
  s.root = rt.root();
  for (int v = 0; v < rt.n(); ++v) {
    s.states.push_back("v" + std::to_string(v));
    std::vector<SchemeEntry> row;
    for (int c : rt.children(v)) row.push_back({c, Multiplicity::finite(1)});
    std::sort(row.begin(), row.end(),
              [](const SchemeEntry& x, const SchemeEntry& y) { return x.target < y.target; });
    s.children.push_back(std::move(row));
  }
  return s;
}

Scheme parse_scheme_doc(const std::string& text) {
  ParsedDoc doc = parse_dsl(text);
  if (doc.scheme) return *doc.scheme;
  return tree_doc_to_scheme(*doc.tree);
}

std::string serialize_dsl(const Scheme& s) {
  std::ostringstream out;
  out << "scheme " << s.name << " {\n";
  out << "  root " << s.states[s.root] << ";\n";
  for (int q = 0; q < s.n_states(); ++q) {
    out << "  " << s.states[q] << " -> [";
    for (std::size_t i = 0; i < s.children[q].size(); ++i) {
      const auto& e = s.children[q][i];
      if (i) out << ", ";
      out << s.states[e.target];
      if (e.mult != Multiplicity::finite(1)) out << "*" << e.mult.str();
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string content_hash(const Scheme& s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(serialize_dsl(s))));
  return std::string("fnv1a:") + buf;
}

std::string address_str(const VertexAddress& a, const Scheme& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (i) out << "/";
    out << s.states[a.steps[i].state] << "." << a.steps[i].copy;
  }
  return out.str();
}

VertexAddress parse_address(const std::string& text, const Scheme& s) {
  VertexAddress a;
  if (text.empty()) return a;
  std::map<std::string, int> index_of;
  for (int q = 0; q < s.n_states(); ++q) index_of.emplace(s.states[q], q);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t slash = text.find('/', pos);
    std::string part = text.substr(pos, slash == std::string::npos ? slash : slash - pos);
    std::size_t dot = part.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= part.size())
      throw BadAddress("address step '" + part + "' is not state.copy");
    std::string state = part.substr(0, dot);
    std::string copy = part.substr(dot + 1);
    auto it = index_of.find(state);
    if (it == index_of.end()) throw BadAddress("unknown state '" + state + "' in address");
    std::uint64_t c = 0;
    for (char ch : copy) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw BadAddress("copy index '" + copy + "' is not a number");
      std::uint64_t d = static_cast<std::uint64_t>(ch - '0');
      if (c > (~std::uint64_t(0) - d) / 10) throw BadAddress("copy index too large");
      c = c * 10 + d;
    }
    a.steps.push_back({it->second, c});
    if (slash == std::string::npos) break;
    pos = slash + 1;
  }
  return a;
}

namespace {

ordered_json mult_json(const Multiplicity& m) {
  if (m.is_omega()) return "w";
  return m.count();
}

ordered_json opt_int(const std::optional<int>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace

ordered_json scheme_ref_json(const Scheme& s) {
  ordered_json j;
  j["name"] = s.name;
  j["hash"] = content_hash(s);
  j["dsl"] = serialize_dsl(s);
  return j;
}

ordered_json json_of(const ClassificationReport& r, const Scheme& s) {
  ordered_json j;
  j["kind"] = "classification";
  j["scheme"] = scheme_ref_json(s);
  j["finite"] = r.finite;
  j["locally_finite"] = r.locally_finite;
  j["rayless"] = r.rayless;
  j["contains_comb"] = r.contains_comb;
  j["nearly_finite"] = r.nearly_finite;
  ordered_json w;
  if (r.cycle) {
    ordered_json c = ordered_json::array();
    for (int q : *r.cycle) c.push_back(s.states[q]);
    w["cycle"] = c;
  } else {
    w["cycle"] = nullptr;
  }
  w["omega_state"] = r.omega_state ? ordered_json(s.states[*r.omega_state]) : nullptr;
  if (r.comb_cycle) {
    ordered_json c = ordered_json::array();
    for (int q : *r.comb_cycle) c.push_back(s.states[q]);
    w["comb_cycle"] = c;
  } else {
    w["comb_cycle"] = nullptr;
  }
  w["comb_state"] = r.comb_state ? ordered_json(s.states[*r.comb_state]) : nullptr;
  j["witnesses"] = w;
  return j;
}

ordered_json json_of(const IsoCertificate& c, const Scheme& a, const Scheme& b) {
  ordered_json j;
  j["kind"] = "iso_rooted";
  j["verdict"] = to_string(c.verdict);
  j["inputs"] = ordered_json::array({scheme_ref_json(a), scheme_ref_json(b)});
  j["rounds"] = c.rounds;
  j["failure_depth"] = opt_int(c.failure_depth);
  j["classes"] = {{"a", c.class_of_a}, {"b", c.class_of_b}};
  return j;
}

ordered_json json_of(const EmbedCertificate& c, const Scheme& a, const Scheme& b) {
  ordered_json j;
  j["kind"] = "embed_rooted";
  j["verdict"] = to_string(c.verdict);
  j["inputs"] = ordered_json::array({scheme_ref_json(a), scheme_ref_json(b)});
  j["rounds"] = c.rounds;
  j["failure_depth"] = opt_int(c.failure_depth);
  ordered_json rel = ordered_json::array();
  for (auto [q, qq] : c.relation)
    rel.push_back(ordered_json::array({a.states[q], b.states[qq]}));
  j["relation"] = rel;
  ordered_json ms = ordered_json::array();
  for (const auto& m : c.matchings) {
    ordered_json mj;
    mj["source"] = a.states[m.source_state];
    mj["target"] = b.states[m.target_state];
    ordered_json lines = ordered_json::array();
    for (const auto& line : m.lines) {
      ordered_json lj;
      lj["source_entry"] = line.source_entry;
      lj["target_entry"] = line.target_entry;
      lj["amount"] = mult_json(line.amount);
      lines.push_back(lj);
    }
    mj["lines"] = lines;
    ms.push_back(mj);
  }
  j["matchings"] = ms;
  return j;
}

ordered_json json_of(const TwinCertificate& c, const Scheme& a, const Scheme& b) {
  ordered_json j;
  j["kind"] = "twin";
  j["verdict"] = to_string(c.verdict);
  j["inputs"] = ordered_json::array({scheme_ref_json(a), scheme_ref_json(b)});
  j["reason"] = c.reason;
  j["forward_reroot"] = c.forward_reroot ? ordered_json(address_str(*c.forward_reroot, b)) : nullptr;
  j["backward_reroot"] =
      c.backward_reroot ? ordered_json(address_str(*c.backward_reroot, a)) : nullptr;
  if (c.forward) {
    Scheme target = c.forward_reroot ? reroot(b, *c.forward_reroot) : b;
    j["forward"] = json_of(*c.forward, a, target);
  } else {
    j["forward"] = nullptr;
  }
  if (c.backward) {
    Scheme target = c.backward_reroot ? reroot(a, *c.backward_reroot) : a;
    j["backward"] = json_of(*c.backward, b, target);
  } else {
    j["backward"] = nullptr;
  }
  return j;
}

ordered_json json_of(const UnrootedIsoResult& r, const Scheme& a, const Scheme& b) {
  ordered_json j;
  j["kind"] = "iso_unrooted";
  j["verdict"] = to_string(r.verdict);
  j["inputs"] = ordered_json::array({scheme_ref_json(a), scheme_ref_json(b)});
  j["reason"] = r.reason;
  j["reroot_b"] = r.reroot_b ? ordered_json(address_str(*r.reroot_b, b)) : nullptr;
  if (r.cert) {
    Scheme target = r.reroot_b ? reroot(b, *r.reroot_b) : b;
    j["cert"] = json_of(*r.cert, a, target);
  } else {
    j["cert"] = nullptr;
  }
  return j;
}

ordered_json json_of(const UnrootedEmbedResult& r, const Scheme& a, const Scheme& b) {
  ordered_json j;
  j["kind"] = "embed_unrooted";
  j["verdict"] = to_string(r.verdict);
  j["inputs"] = ordered_json::array({scheme_ref_json(a), scheme_ref_json(b)});
  j["reason"] = r.reason;
  j["reroot_b"] = r.reroot_b ? ordered_json(address_str(*r.reroot_b, b)) : nullptr;
  if (r.cert) {
    Scheme target = r.reroot_b ? reroot(b, *r.reroot_b) : b;
    j["cert"] = json_of(*r.cert, a, target);
  } else {
    j["cert"] = nullptr;
  }
  return j;
}

ordered_json json_of(const TwinFamily& f) {
  ordered_json j;
  j["kind"] = "twin_family";
  ordered_json members = ordered_json::array();
  for (const auto& m : f.members) members.push_back(scheme_ref_json(m));
  j["members"] = members;
  if (f.failure_depths)
    j["failure_depths"] = *f.failure_depths;
  else
    j["failure_depths"] = nullptr;
  ordered_json pairs = ordered_json::array();
  std::size_t k = f.members.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t jj = i + 1; jj < k; ++jj) {
      std::size_t idx = pair_index(i, jj, k);
      ordered_json pj;
      pj["i"] = i;
      pj["j"] = jj;
      pj["twin"] = json_of(f.twin[idx], f.members[i], f.members[jj]);
      pj["iso"] = json_of(f.iso[idx], f.members[i], f.members[jj]);
      pairs.push_back(pj);
    }
  j["pairs"] = pairs;
  return j;
}

}  // namespace twintree
