// Command-line front end: post, check, verify, prove and the bundled
// end-to-end examples. Exit codes: 0 pass, 1 logical failure, 2 parse error,
// 3 semantic error, 4 unsatisfied synthesis precondition.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "katlcl/loader.hpp"

using namespace katlcl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLogical = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitSynth = 4;

ConcreteKind kind_for(System sys) {
  return system_on_topp(sys) ? ConcreteKind::ToppCodomains : ConcreteKind::Tests;
}

struct Session {
  LoadedModel lm;
  System sys = System::LCK;
  std::optional<GaloisInsertion> domain;

  static Session open(const std::string &model_file,
                      const std::string &domain_file, const std::string &system) {
    Session s;
    s.lm = load_model_file(model_file);
    s.sys = system_from_name(system);
    if (!domain_file.empty())
      s.domain = load_domain_file(domain_file, s.lm.model, kind_for(s.sys));
    return s;
  }
};

void print_failures(const Verdict &v) {
  for (const auto &f : v.failures) {
    std::cout << "  " << f.condition;
    if (!f.path.empty())
      std::cout << " at " << f.path;
    if (!f.detail.empty())
      std::cout << ": " << f.detail;
    std::cout << "\n";
  }
}

int cmd_post(const std::string &model_file, const std::string &term_text,
             const std::string &pre_text, bool with_err) {
  LoadedModel lm = load_model_file(model_file);
  TermPtr t = parse_term(term_text, lm.sigma, lm.b);
  bool topp = pre_text.rfind("top{", 0) == 0;
  ConcreteKind kind = topp ? ConcreteKind::ToppCodomains : ConcreteKind::Tests;
  TestSet pre = parse_literal(lm.model, kind, pre_text);
  TestSet ok = topp ? top_post(lm.model, lm.eval, t, pre)
                    : post_ok(lm.model, lm.eval, t, pre);
  std::cout << "ok: " << print_literal(lm.model, kind, ok);
  if (with_err) {
    TestSet err = topp ? top_post_err(lm.model, lm.eval, t, pre)
                       : post_err(lm.model, lm.eval, t, pre);
    std::cout << " err: " << print_literal(lm.model, kind, err);
  }
  std::cout << "\n";
  return kExitOk;
}

int cmd_check(const Session &s, const std::string &triple_text) {
  Triple tr = parse_triple(s.lm, s.sys, triple_text);
  Verdict v = valid_triple(*s.domain, s.lm.model, s.lm.eval, tr);
  if (v.ok()) {
    std::cout << "valid\n";
    return kExitOk;
  }
  std::cout << "invalid\n";
  print_failures(v);
  return kExitLogical;
}

int cmd_verify(const Session &s, const std::string &deriv_file) {
  Derivation d = parse_derivation_file(s.lm, s.sys, deriv_file);
  Verdict v = verify(s.sys, *s.domain, s.lm.model, s.lm.eval, d);
  if (v.ok()) {
    std::cout << "accepted: " << show_triple(s.lm.model, d.conclusion) << "\n";
    return kExitOk;
  }
  std::cout << "rejected\n";
  print_failures(v);
  return kExitLogical;
}

int cmd_prove(const Session &s, const std::string &triple_text,
              const std::string &emit) {
  Triple tr = parse_triple(s.lm, s.sys, triple_text);
  Derivation d;
  try {
    d = synthesize(s.sys, *s.domain, s.lm.model, s.lm.eval, tr);
  } catch (const SynthError &e) {
    if (e.kind == SynthError::Kind::InvalidTriple) {
      std::cout << "invalid\n";
      print_failures(e.verdict);
      return kExitLogical;
    }
    if (e.kind == SynthError::Kind::IncompleteAtom) {
      std::cout << "atom '" << e.atom
                << "' is not globally complete; witness " << e.witness << "\n";
      return kExitSynth;
    }
    std::cout << e.what() << "\n";
    return kExitSynth;
  }
  std::string text = print_derivation(s.lm.model, s.sys, d);
  if (!emit.empty()) {
    std::ofstream out(emit);
    if (!out)
      throw SemanticError("cannot write " + emit);
    out << text;
    std::cout << "proved: " << show_triple(s.lm.model, d.conclusion)
              << " -> " << emit << "\n";
  } else
    std::cout << text;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bundled examples

struct BundleResult {
  bool pass = true;
  void check(bool c, const std::string &what) {
    if (!c) {
      pass = false;
      std::cout << "    FAIL " << what << "\n";
    }
  }
};

void print_notes(const std::filesystem::path &dir) {
  std::ifstream notes(dir / "notes.txt");
  std::string line;
  while (std::getline(notes, line))
    std::cout << "    note: " << line << "\n";
}

bool bundle_gs_parity(const std::filesystem::path &dir) {
  LoadedModel lm = load_model_file(dir / "model.kat");
  GaloisInsertion dom =
      load_domain_file(dir / "domain.dom", lm.model, ConcreteKind::Tests);
  BundleResult r;

  auto lit = [&](const std::string &s) {
    return parse_literal(lm.model, ConcreteKind::Tests, s);
  };
  TestSet p = lit("{++,--}"), s = lit("{++,+-,--}"), spec = lit("{++,--}");
  TermPtr prog = parse_term("(u ; b1)*", lm.sigma, lm.b);

  Derivation d = parse_derivation_file(lm, System::LCK, dir / "deriv.sexp");
  Verdict vd = verify(System::LCK, dom, lm.model, lm.eval, d);
  r.check(vd.ok(), "derivation verifies");
  if (vd.ok())
    r.check(d.conclusion.pre == p && term_eq(d.conclusion.term, prog) &&
                d.conclusion.ok == std::optional<TestSet>(s),
            "derivation concludes the expected triple");

  Triple tr{System::LCK, p, prog, s, std::nullopt};
  r.check(valid_triple(dom, lm.model, lm.eval, tr).ok(), "triple is valid");

  TestSet post = post_ok(lm.model, lm.eval, prog, p);
  r.check(lm.model.test_leq(s, post) && lm.model.test_leq(post, dom.closure(s)),
          "post sits between s and A(s)");
  TestSet alert = lm.model.test_meet(s, lm.model.test_not(spec));
  r.check(print_literal(lm.model, ConcreteKind::Tests, alert) == "{+-}",
          "true alert is {+-}");
  return r.pass;
}

bool bundle_interval_il(const std::filesystem::path &dir) {
  LoadedModel lm = load_model_file(dir / "model.kat");
  GaloisInsertion dom =
      load_domain_file(dir / "domain.dom", lm.model, ConcreteKind::Tests);
  BundleResult r;

  auto lit = [&](const std::string &s) {
    return parse_literal(lm.model, ConcreteKind::Tests, s);
  };
  TestSet p0 = lit("{0,2}"), all = lit("{0..11}");
  TermPtr prog = parse_term("(inc + error)*", lm.sigma, lm.b);

  Derivation d = parse_derivation_file(lm, System::LCIL, dir / "deriv.sexp");
  Verdict vd = verify(System::LCIL, dom, lm.model, lm.eval, d);
  r.check(vd.ok(), "derivation verifies");

  PostPair pp = post_pair(lm.model, lm.eval, prog, p0);
  r.check(pp.ok == all && pp.err == all, "ok and err posts reach {0..11}");
  PostPair op = oracle_post(lm.model, lm.eval, prog, p0);
  r.check(op.ok == pp.ok && op.err == pp.err, "oracle agrees");

  Triple tr{System::LCIL, p0, prog, all, all};
  r.check(valid_triple(dom, lm.model, lm.eval, tr).ok(), "pair triple is valid");

  // err specification 0 is genuinely violated: Int(s) is not below it
  TestSet spec_err = lit("{}");
  r.check(!lm.model.test_leq(dom.closure(all), spec_err),
          "err clause of the specification fails");
  return r.pass;
}

bool bundle_sign_topkat(const std::filesystem::path &dir) {
  LoadedModel lm = load_model_file(dir / "model.kat");
  GaloisInsertion dom = load_domain_file(dir / "domain.dom", lm.model,
                                         ConcreteKind::ToppCodomains);
  BundleResult r;

  auto lit = [&](const std::string &s) {
    return parse_literal(lm.model, ConcreteKind::ToppCodomains, s);
  };
  TestSet p = lit("top{0,8}"), none = lit("top{}");
  TermPtr prog = parse_term("(geq0 ; inc)* ; lt0", lm.sigma, lm.b);

  Derivation d = parse_derivation_file(lm, System::LCTK, dir / "deriv.sexp");
  Verdict vd = verify(System::LCTK, dom, lm.model, lm.eval, d);
  r.check(vd.ok(), "derivation verifies");

  r.check(top_post(lm.model, lm.eval, prog, p) == none,
          "program image from top{0,8} is empty");
  Triple tr{System::LCTK, p, prog, none, std::nullopt};
  r.check(valid_triple(dom, lm.model, lm.eval, tr).ok(), "triple is valid");
  return r.pass;
}

std::uint64_t g_seed = 0x5eed;

bool bundle_a3(const std::filesystem::path &dir) {
  LoadedModel lm = load_model_file(dir / "model.kat");
  BundleResult r;
  AxiomReport rep = lm.model.check_kat_axioms(g_seed);
  r.check(rep.all_pass(), "algebra axioms hold");

  // T.1.a = a, yet no test q satisfies T.q = a
  const auto &names = lm.model.table_names();
  int a_id = -1;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == "a")
      a_id = static_cast<int>(i);
  Elem a{Elem::Kind::TableId, {}, {}, a_id};
  Elem top = *lm.model.top_elem();
  Elem t1a = lm.model.seq(lm.model.seq(top, lm.model.one_elem()), a);
  r.check(lm.model.elem_eq(t1a, a), "top;1;a equals a");
  TestSet cod = lm.model.top_mul(a);
  r.check(!lm.model.top_representable_as_test(cod).has_value(),
          "no test q with top;q = a");
  return r.pass;
}

int cmd_examples(const std::string &data_dir, const std::string &only) {
  struct B {
    const char *name;
    bool (*run)(const std::filesystem::path &);
  };
  const B bundles[] = {
      {"gs-parity", bundle_gs_parity},
      {"interval-il", bundle_interval_il},
      {"sign-topkat", bundle_sign_topkat},
      {"a3", bundle_a3},
  };
  bool all = true;
  for (const auto &b : bundles) {
    if (!only.empty() && only != b.name)
      continue;
    std::filesystem::path dir = std::filesystem::path(data_dir) / b.name;
    bool pass = false;
    try {
      pass = b.run(dir);
    } catch (const std::exception &e) {
      std::cout << "    error: " << e.what() << "\n";
    }
    std::cout << "bundle " << b.name << ": " << (pass ? "PASS" : "FAIL") << "\n";
    print_notes(dir);
    all = all && pass;
  }
  return all ? kExitOk : kExitLogical;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"local completeness proof checking on Kleene algebra with tests"};
  app.require_subcommand(1);

  std::string model_file, domain_file, system = "lck", triple_text, deriv_file,
              emit_file, term_text, pre_text, data_dir = "data", only;
  bool with_err = false;
  app.add_option("--seed", g_seed, "seed for sampled suites");

  auto *post = app.add_subcommand("post", "strongest postcondition of a term");
  post->add_option("--model", model_file)->required();
  post->add_flag("--err", with_err, "also print the erroneous-termination post");
  post->add_option("term", term_text)->required();
  post->add_option("pre", pre_text)->required();

  auto *check = app.add_subcommand("check", "triple validity");
  check->add_option("--model", model_file)->required();
  check->add_option("--domain", domain_file)->required();
  check->add_option("--system", system)->required();
  check->add_option("--triple", triple_text)->required();

  auto *verify_cmd = app.add_subcommand("verify", "check a derivation file");
  verify_cmd->add_option("--model", model_file)->required();
  verify_cmd->add_option("--domain", domain_file)->required();
  verify_cmd->add_option("--system", system)->required();
  verify_cmd->add_option("--derivation", deriv_file)->required();

  auto *prove = app.add_subcommand("prove", "synthesize a derivation");
  prove->add_option("--model", model_file)->required();
  prove->add_option("--domain", domain_file)->required();
  prove->add_option("--system", system)->required();
  prove->add_option("--triple", triple_text)->required();
  prove->add_option("--emit", emit_file);

  auto *examples = app.add_subcommand("examples", "run the bundled examples");
  examples->add_option("--data", data_dir, "bundle directory");
  examples->add_option("--only", only, "run a single bundle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (post->parsed())
      return cmd_post(model_file, term_text, pre_text, with_err);
    if (examples->parsed())
      return cmd_examples(data_dir, only);
    Session s = Session::open(model_file, domain_file, system);
    if (check->parsed())
      return cmd_check(s, triple_text);
    if (verify_cmd->parsed())
      return cmd_verify(s, deriv_file);
    if (prove->parsed())
      return cmd_prove(s, triple_text, emit_file);
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SemanticError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitOk;
}
