// Negative coverage: tampered derivations and out-of-bounds relaxations must
// be rejected, and synthesis must hold up at a domain where the transfer side
// conditions are not vacuous.
#include <doctest.h>

#include "helpers.hpp"

using namespace katlcl;
using namespace katlcl::testing;

namespace {

TestSet lit(const Model &m, const std::string &s,
            ConcreteKind k = ConcreteKind::Tests) {
  return parse_literal(m, k, s);
}

// 0..5 with a saturating successor: the shift preserves interval hulls, so
// inc and error are globally complete for the interval domain and the
// canonical construction applies beyond the one-point abstraction
LoadedModel sat_lm() {
  return load_model_text(
      "model relational\n"
      "carrier 0 5\n"
      "action inc ok pairs (0,1)(1,2)(2,3)(3,4)(4,5)(5,5)\n"
      "action error ok empty err full\n",
      "sat");
}

// every node of a derivation, in preorder
void collect(Derivation &d, std::vector<Derivation *> &out) {
  out.push_back(&d);
  for (auto &ch : d.children)
    collect(ch, out);
}

} // namespace

TEST_CASE("tampering with bundled derivations is caught") {
  LoadedModel gs = gs2();
  GaloisInsertion parity = GaloisInsertion::parity(gs.model);
  std::string text = "(rec\n"
                     "  (seq (transfer u {++,--})\n"
                     "       (transfer b1 {++,+-,-+,--}))\n"
                     "  (iterate\n"
                     "    (seq (transfer u {++,+-,--})\n"
                     "         (transfer b1 {++,+-,-+,--}))))\n";
  Derivation good = parse_derivation_text(gs, System::LCK, text);
  REQUIRE(verify(System::LCK, parity, gs.model, gs.eval, good).ok());

  // flip every transfer precondition in turn; each mutation must break a
  // premise chain or a side condition somewhere
  std::vector<Derivation *> nodes;
  collect(good, nodes);
  int mutated = 0;
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    if (nodes[idx]->rule != "transfer")
      continue;
    for (const char *repl : {"{-+}", "{}", "{++,+-,-+,--}", "{++}"}) {
      TestSet t = lit(gs.model, repl);
      if (t == *nodes[idx]->side_pre)
        continue;
      Derivation copy = good;
      std::vector<Derivation *> cnodes;
      collect(copy, cnodes);
      cnodes[idx]->side_pre = t;
      Verdict v = verify(System::LCK, parity, gs.model, gs.eval, copy);
      ++mutated;
      CHECK(!v.ok());
      if (!v.ok())
        CHECK(!v.failures[0].path.empty());
    }
  }
  CHECK(mutated >= 12);
}

TEST_CASE("tampering with the limit chain is caught") {
  LoadedModel rel = rel_lm(0, 3);
  GaloisInsertion tr = GaloisInsertion::trivial(rel.model, ConcreteKind::Tests);
  std::string text = "(back-v :chain [{0} {1} {2} {3} {}]\n"
                     "  (transfer inc {0}) (transfer inc {1}) (transfer inc {2})\n"
                     "  (transfer inc {3}) (transfer inc {}))";
  Derivation good = parse_derivation_text(rel, System::UL, text);
  REQUIRE(verify(System::UL, tr, rel.model, rel.eval, good).ok());

  for (std::size_t i = 0; i < good.chain.size(); ++i) {
    Derivation copy = good;
    copy.chain[i] = lit(rel.model, "{0,3}");
    Verdict v = verify(System::UL, tr, rel.model, rel.eval, copy);
    CHECK(!v.ok());
  }
  // dropping the stabilization proof is malformed
  Derivation short_tree = good;
  short_tree.children.pop_back();
  CHECK_THROWS_AS(verify(System::UL, tr, rel.model, rel.eval, short_tree),
                  SemanticError);
}

TEST_CASE("relax bounds are enforced") {
  LoadedModel gs = gs2();
  GaloisInsertion parity = GaloisInsertion::parity(gs.model);

  // q' must stay below A(q): 1_G is not below A({++}) = {++,--}
  Derivation d;
  d.rule = "relax";
  d.relax_ok = lit(gs.model, "{++}");
  {
    Derivation t;
    t.rule = "transfer";
    t.atom = "u";
    t.side_pre = lit(gs.model, "{++,--}");
    d.children.push_back(std::move(t));
  }
  Verdict v = verify(System::LCK, parity, gs.model, gs.eval, d);
  CHECK(!v.ok());
  CHECK(v.failures[0].condition.find("A(q)") != std::string::npos);

  // p' <= p fails when the new precondition shrinks
  Derivation d2;
  d2.rule = "relax";
  d2.side_pre = lit(gs.model, "{++}");
  {
    Derivation t;
    t.rule = "transfer";
    t.atom = "u";
    t.side_pre = lit(gs.model, "{++,--}");
    d2.children.push_back(std::move(t));
  }
  Verdict v2 = verify(System::LCK, parity, gs.model, gs.eval, d2);
  CHECK(!v2.ok());
  CHECK(v2.failures[0].condition.find("p' <= p") != std::string::npos);

  // p <= A(p') fails when the new precondition leaves the closure
  Derivation d3;
  d3.rule = "relax";
  d3.side_pre = lit(gs.model, "{++,-+}");
  {
    Derivation t;
    t.rule = "transfer";
    t.atom = "u";
    t.side_pre = lit(gs.model, "{++}");
    d3.children.push_back(std::move(t));
  }
  Verdict v3 = verify(System::LCK, parity, gs.model, gs.eval, d3);
  CHECK(!v3.ok());
  CHECK(v3.failures[0].condition.find("A(p')") != std::string::npos);

  // the under-approximation consequence has no closure bounds
  Derivation d4 = d3;
  d4.rule = "consequence";
  GaloisInsertion tr = GaloisInsertion::trivial(gs.model, ConcreteKind::Tests);
  CHECK(verify(System::UL, tr, gs.model, gs.eval, d4).ok());
}

TEST_CASE("synthesis at a non-vacuous domain") {
  LoadedModel lm = sat_lm();
  GaloisInsertion d = GaloisInsertion::interval(lm.model, ConcreteKind::Tests);
  Atom inc{AtomKind::Action, "inc"}, error{AtomKind::Action, "error"};
  REQUIRE(global_complete(d, lm.model, lm.eval, TransformerRef::atom_ok(inc))
              .complete);
  REQUIRE(global_complete(d, lm.model, lm.eval, TransformerRef::atom_err(error))
              .complete);

  Rng rng(0xfa57);
  std::vector<Atom> atoms{inc, error};
  int synthesized = 0, relaxed = 0;
  for (int i = 0; i < 150; ++i) {
    TermPtr t = random_term(rng, atoms, 6);
    TestSet p = random_test(rng, lm.model);
    PostPair pp = post_pair(lm.model, lm.eval, t, p);

    // canonical pair triple
    Triple tr{System::LCIL, p, t, pp.ok, pp.err};
    Derivation der = synthesize(System::LCIL, d, lm.model, lm.eval, tr);
    Verdict v = verify(System::LCIL, d, lm.model, lm.eval, der);
    REQUIRE(v.ok());
    REQUIRE(valid_triple(d, lm.model, lm.eval, der.conclusion).ok());
    ++synthesized;

    // an under-approximation of the ok post that keeps its interval hull:
    // drop an interior point
    TestSet hull = d.closure(pp.ok);
    if (pp.ok.count() >= 3) {
      TestSet q = pp.ok;
      std::size_t first = q.find_first(), drop = q.find_next(first);
      q.reset(drop);
      if (d.closure(q) == hull) {
        Triple utr{System::LCK, p, t, q, std::nullopt};
        if (valid_triple(d, lm.model, lm.eval, utr).ok()) {
          Derivation ud = synthesize(System::LCK, d, lm.model, lm.eval, utr);
          REQUIRE(verify(System::LCK, d, lm.model, lm.eval, ud).ok());
          REQUIRE(*ud.conclusion.ok == q);
          if (ud.rule == "relax")
            ++relaxed;
        }
      }
    }
  }
  CHECK(synthesized == 150);
  CHECK(relaxed > 5); // the under-approximations genuinely exercised relax
}
