#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "twintree/check.hpp"
#include "twintree/construct.hpp"
#include "twintree/decide.hpp"
#include "twintree/dsl.hpp"
#include "twintree/errors.hpp"

namespace tt = twintree;

namespace {

// exit codes: 0 yes/pass, 1 no/fail, 2 unknown, 3 usage or parse error

struct Input {
  std::string name;
  std::optional<tt::Scheme> scheme;
  std::optional<tt::TreeDoc> unrooted;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tt::BadParams("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Input load(const std::string& path) {
  Input r;
  r.name = path;
  tt::ParsedDoc doc = tt::parse_dsl(slurp(path));
  if (doc.scheme) {
    r.scheme = std::move(doc.scheme);
  } else if (doc.tree->root) {
    r.scheme = tt::tree_doc_to_scheme(*doc.tree);
  } else {
    r.unrooted = std::move(doc.tree);
  }
  return r;
}

tt::Scheme need_scheme(const Input& in) {
  if (!in.scheme)
    throw tt::BadParams("'" + in.name + "' is an unrooted tree; this command needs a root");
  return *in.scheme;
}

tt::FiniteTree to_finite(const tt::TreeDoc& d) { return tt::FiniteTree(d.n, d.edges); }

int verdict_code(tt::Verdict v) {
  switch (v) {
    case tt::Verdict::Yes: return 0;
    case tt::Verdict::No: return 1;
    default: return 2;
  }
}

void emit(const tt::ordered_json& j, bool json, const std::string& text) {
  if (json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string depth_line(const std::optional<int>& d) {
  return d ? "failure_depth: " + std::to_string(*d) + "\n" : "";
}

int cmd_iso(const std::string& pa, const std::string& pb, bool unrooted, int bound, bool json) {
  Input a = load(pa), b = load(pb);
  if (a.unrooted && b.unrooted) {
    bool yes = tt::iso_unrooted(to_finite(*a.unrooted), to_finite(*b.unrooted));
    tt::ordered_json j{{"kind", "iso_finite_unrooted"}, {"verdict", yes ? "yes" : "no"}};
    emit(j, json, std::string("verdict: ") + (yes ? "yes" : "no") + "\n");
    return yes ? 0 : 1;
  }
  if (a.unrooted || b.unrooted)
    throw tt::BadParams("cannot mix a rooted and an unrooted document");
  tt::Scheme sa = *a.scheme, sb = *b.scheme;
  if (unrooted) {
    auto r = tt::scheme_iso_unrooted(sa, sb, bound);
    emit(tt::json_of(r, sa, sb), json,
         "verdict: " + tt::to_string(r.verdict) + "\nreason: " + r.reason + "\n");
    return verdict_code(r.verdict);
  }
  auto cert = tt::scheme_iso_rooted(sa, sb);
  emit(tt::json_of(cert, sa, sb), json,
       "verdict: " + tt::to_string(cert.verdict) + "\n" + depth_line(cert.failure_depth));
  return verdict_code(cert.verdict);
}

int cmd_embed(const std::string& pa, const std::string& pb, bool unrooted, int bound, bool json) {
  Input a = load(pa), b = load(pb);
  if (a.unrooted && b.unrooted) {
    auto m = tt::embed_unrooted(to_finite(*a.unrooted), to_finite(*b.unrooted));
    bool yes = m.has_value();
    tt::ordered_json j{{"kind", "embed_finite_unrooted"}, {"verdict", yes ? "yes" : "no"}};
    emit(j, json, std::string("verdict: ") + (yes ? "yes" : "no") + "\n");
    return yes ? 0 : 1;
  }
  if (a.unrooted || b.unrooted)
    throw tt::BadParams("cannot mix a rooted and an unrooted document");
  tt::Scheme sa = *a.scheme, sb = *b.scheme;
  if (unrooted) {
    auto r = tt::scheme_embed_unrooted(sa, sb, bound);
    emit(tt::json_of(r, sa, sb), json,
         "verdict: " + tt::to_string(r.verdict) + "\nreason: " + r.reason + "\n");
    return verdict_code(r.verdict);
  }
  auto cert = tt::scheme_embed_rooted(sa, sb);
  emit(tt::json_of(cert, sa, sb), json,
       "verdict: " + tt::to_string(cert.verdict) + "\n" + depth_line(cert.failure_depth));
  return verdict_code(cert.verdict);
}

int cmd_twin(const std::string& pa, const std::string& pb, int bound, bool json) {
  Input a = load(pa), b = load(pb);
  if (a.unrooted && b.unrooted) {
    tt::FiniteTree fa = to_finite(*a.unrooted), fb = to_finite(*b.unrooted);
    bool yes = tt::embed_unrooted(fa, fb).has_value() && tt::embed_unrooted(fb, fa).has_value();
    tt::ordered_json j{{"kind", "twin_finite_unrooted"}, {"verdict", yes ? "yes" : "no"}};
    emit(j, json, std::string("verdict: ") + (yes ? "yes" : "no") + "\n");
    return yes ? 0 : 1;
  }
  if (a.unrooted || b.unrooted)
    throw tt::BadParams("cannot mix a rooted and an unrooted document");
  tt::Scheme sa = *a.scheme, sb = *b.scheme;
  tt::TwinCertificate rooted = tt::twin_rooted(sa, sb);
  if (rooted.verdict == tt::Verdict::Yes) {
    emit(tt::json_of(rooted, sa, sb), json, "verdict: yes\nreason: " + rooted.reason + "\n");
    return 0;
  }
  tt::TwinCertificate t = tt::twin_unrooted(sa, sb, bound);
  emit(tt::json_of(t, sa, sb), json,
       "verdict: " + tt::to_string(t.verdict) + "\nreason: " + t.reason + "\n");
  return verdict_code(t.verdict);
}

int cmd_classify(const std::string& path, bool json) {
  tt::Scheme s = need_scheme(load(path));
  auto rep = tt::classify(s);
  std::ostringstream text;
  text << "finite: " << (rep.finite ? "true" : "false") << "\n"
       << "locally_finite: " << (rep.locally_finite ? "true" : "false") << "\n"
       << "rayless: " << (rep.rayless ? "true" : "false") << "\n"
       << "contains_comb: " << (rep.contains_comb ? "true" : "false") << "\n"
       << "nearly_finite: " << (rep.nearly_finite ? "true" : "false") << "\n";
  emit(tt::json_of(rep, s), json, text.str());
  return 0;
}

int cmd_truncate(const std::string& path, int depth) {
  tt::Scheme s = need_scheme(load(path));
  std::cout << tt::serialize_dsl(tt::truncate(s, depth));
  return 0;
}

int cmd_reroot(const std::string& path, const std::string& address) {
  tt::Scheme s = need_scheme(load(path));
  tt::VertexAddress a = tt::parse_address(address, s);
  std::cout << tt::serialize_dsl(tt::reroot(s, a));
  return 0;
}

int cmd_localiso(const std::string& pa, const std::string& pb, int depth) {
  tt::Scheme a = need_scheme(load(pa));
  tt::Scheme b = need_scheme(load(pb));
  auto fail = tt::local_iso_up_to(a, b, depth);
  if (!fail) {
    std::cout << "locally isomorphic up to depth " << depth << "\n";
    return 0;
  }
  std::cout << "truncations first differ at depth " << *fail << "\n";
  return 1;
}

int cmd_family(const std::string& name, bool json) {
  tt::TwinFamily f;
  if (name == "caterpillar") {
    f = tt::caterpillar_family(6);
  } else if (name == "tooth") {
    f = tt::comb_tooth_family(
        {{{}, {1}}, {{}, {1, 0}}, {{}, {1, 0, 0}}, {{}, {1, 0, 0, 0}}, {{}, {1, 0, 0, 0, 0}}});
    tt::validate_twin_family(f);
  } else if (name == "sandwich") {
    f = tt::sandwich_family(tt::make_ray(), 1, tt::make_cherry(), 5);
    tt::validate_twin_family(f);
  } else {
    throw tt::BadParams("unknown family '" + name + "' (caterpillar, tooth, sandwich)");
  }
  std::ostringstream text;
  text << "members: " << f.members.size() << "\n";
  if (f.failure_depths) {
    text << "failure_depths:";
    for (int d : *f.failure_depths) text << " " << d;
    text << "\n";
  }
  text << "pairs: twin yes, iso no\n";
  emit(tt::json_of(f), json, text.str());
  return 0;
}

int cmd_check(const std::string& suite, const tt::SuiteOptions& opt, bool json) {
  auto start = std::chrono::steady_clock::now();
  tt::CheckReport rep = tt::run_suite(suite, opt);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cerr << "suite " << suite << " took " << ms << " ms\n";
  if (json) {
    std::cout << tt::report_json(rep);
  } else {
    std::cout << "suite " << rep.suite << ": " << rep.cases << " cases, " << rep.failures.size()
              << " failures\n";
    for (const auto& f : rep.failures) {
      std::cout << "  " << f.case_name << ": expected " << f.expected << ", got " << f.got << "\n";
      for (const auto& [label, value] : f.inputs)
        std::cout << "    " << label << ": " << value << "\n";
    }
  }
  return rep.passed() ? 0 : 1;
}

int cmd_oracle(const std::string& pa, const std::string& pb, int depth) {
  tt::Scheme a = need_scheme(load(pa));
  tt::Scheme b = need_scheme(load(pb));
  bool yes = tt::oracle_embed_trunc(a, b, depth);
  std::cout << (yes ? "true" : "false") << "\n";
  return yes ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"decision procedures for finitely presented trees"};
  app.require_subcommand(1);
  int code = 0;

  struct {
    std::string a, b, address, name;
    bool unrooted = false, json = false;
    int depth = 8, bound = 4;
    tt::SuiteOptions opt;
  } args;

  auto* iso = app.add_subcommand("iso", "rooted isomorphism of two documents");
  iso->add_option("a", args.a)->required();
  iso->add_option("b", args.b)->required();
  iso->add_flag("--unrooted", args.unrooted, "compare as unrooted trees");
  iso->add_option("--bound", args.bound, "rerooting depth for --unrooted");
  iso->add_flag("--json", args.json);
  iso->callback([&]() { code = cmd_iso(args.a, args.b, args.unrooted, args.bound, args.json); });

  auto* embed = app.add_subcommand("embed", "root-preserving embedding of a into b");
  embed->add_option("a", args.a)->required();
  embed->add_option("b", args.b)->required();
  embed->add_flag("--unrooted", args.unrooted, "compare as unrooted trees");
  embed->add_option("--bound", args.bound, "rerooting depth for --unrooted");
  embed->add_flag("--json", args.json);
  embed->callback(
      [&]() { code = cmd_embed(args.a, args.b, args.unrooted, args.bound, args.json); });

  auto* twin = app.add_subcommand("twin", "mutual embeddability, rooted first then unrooted");
  twin->add_option("a", args.a)->required();
  twin->add_option("b", args.b)->required();
  twin->add_option("--bound", args.bound, "rerooting depth for the unrooted fallback");
  twin->add_flag("--json", args.json);
  twin->callback([&]() { code = cmd_twin(args.a, args.b, args.bound, args.json); });

  auto* classify = app.add_subcommand("classify", "finiteness and comb flags of a scheme");
  classify->add_option("a", args.a)->required();
  classify->add_flag("--json", args.json);
  classify->callback([&]() { code = cmd_classify(args.a, args.json); });

  auto* trunc = app.add_subcommand("truncate", "depth-limited scheme of the unfolding");
  trunc->add_option("a", args.a)->required();
  trunc->add_option("--depth", args.depth, "truncation depth");
  trunc->callback([&]() { code = cmd_truncate(args.a, args.depth); });

  auto* rr = app.add_subcommand("reroot", "scheme of the tree rerooted at an address");
  rr->add_option("a", args.a)->required();
  rr->add_option("address", args.address, "steps like spine.0/leaf.2; empty keeps the root")
      ->required();
  rr->callback([&]() { code = cmd_reroot(args.a, args.address); });

  auto* li = app.add_subcommand("localiso", "isomorphism of all truncations up to a depth");
  li->add_option("a", args.a)->required();
  li->add_option("b", args.b)->required();
  li->add_option("--depth", args.depth, "largest truncation depth checked");
  li->callback([&]() { code = cmd_localiso(args.a, args.b, args.depth); });

  auto* fam = app.add_subcommand("family", "build and validate a twin family");
  fam->add_option("name", args.name, "caterpillar, tooth, or sandwich")->required();
  fam->add_flag("--json", args.json);
  fam->callback([&]() { code = cmd_family(args.name, args.json); });

  auto* check = app.add_subcommand("check", "run one verification suite");
  check->add_option("suite", args.name)->required();
  check->add_option("--seed", args.opt.seed)->envname("TWINTREE_SEED");
  check->add_option("--max-n", args.opt.max_n, "largest tree size for lemma6");
  check->add_option("--cases", args.opt.cases, "case count for randomized suites");
  check->add_option("--depth", args.opt.depth, "oracle depth");
  check->add_option("--bound", args.opt.bound, "rerooting depth");
  check->add_flag("--json", args.json);
  check->callback([&]() { code = cmd_check(args.name, args.opt, args.json); });

  auto* oracle = app.add_subcommand("oracle", "truncation embedding oracle");
  oracle->add_option("a", args.a)->required();
  oracle->add_option("b", args.b)->required();
  oracle->add_option("--depth", args.depth, "truncation depth");
  oracle->callback([&]() { code = cmd_oracle(args.a, args.b, args.depth); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e);
    return c == 0 ? 0 : 3;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const tt::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const tt::BadParams& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 3;
  } catch (const tt::BadAddress& e) {
    std::cerr << "bad address: " << e.what() << "\n";
    return 3;
  } catch (const tt::BadIndex& e) {
    std::cerr << "bad index: " << e.what() << "\n";
    return 3;
  } catch (const tt::UnknownSuite& e) {
    std::cerr << "unknown suite: " << e.what() << "\n";
    return 3;
  } catch (const tt::Error& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
}
