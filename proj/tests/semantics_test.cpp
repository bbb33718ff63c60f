#include <doctest.h>

#include "helpers.hpp"

using namespace katlcl;
using namespace katlcl::testing;

namespace {

TestSet lit(const Model &m, const std::string &s,
            ConcreteKind k = ConcreteKind::Tests) {
  return parse_literal(m, k, s);
}

AbsId by_name(const GaloisInsertion &d, const std::string &n) {
  for (int a = 0; a < d.size(); ++a)
    if (d.name_of(a) == n)
      return a;
  FAIL("no abstract element " << n);
  return -1;
}

} // namespace

TEST_CASE("post_ok on guarded strings") {
  LoadedModel lm = gs2();
  TermPtr u = parse_term("u", lm.sigma, lm.b);
  TermPtr prog = parse_term("(u ; b1)*", lm.sigma, lm.b);
  TestSet p = lit(lm.model, "{++,--}");
  CHECK(post_ok(lm.model, lm.eval, u, p) == lm.model.test_one());
  CHECK(post_ok(lm.model, lm.eval, prog, p) == lit(lm.model, "{++,+-,--}"));

  Rng rng(3);
  auto atoms = atoms_of_model(lm);
  for (int i = 0; i < 100; ++i) {
    TermPtr t = random_term(rng, atoms, 6);
    REQUIRE(post_ok(lm.model, lm.eval, t, lm.model.test_zero()) ==
            lm.model.test_zero());
  }
}

TEST_CASE("post_ok star agrees with the materialized closure") {
  LoadedModel lm = rel_lm(0, 3);
  TermPtr prog = parse_term("inc*", lm.sigma, lm.b);
  TestSet p = lit(lm.model, "{0}");
  CHECK(post_ok(lm.model, lm.eval, prog, p) == lit(lm.model, "{0..3}"));
  CHECK(oracle_post(lm.model, lm.eval, prog, p).ok == lit(lm.model, "{0..3}"));
}

TEST_CASE("post_err") {
  LoadedModel lm = rel_lm(0, 11);
  TermPtr prog = parse_term("(inc + error)*", lm.sigma, lm.b);
  TestSet p = lit(lm.model, "{0,2}");
  PostPair pp = post_pair(lm.model, lm.eval, prog, p);
  CHECK(pp.ok == lit(lm.model, "{0..11}"));
  CHECK(pp.err == lit(lm.model, "{0..11}"));
  PostPair op = oracle_post(lm.model, lm.eval, prog, p);
  CHECK(op.ok == pp.ok);
  CHECK(op.err == pp.err);

  // err of a leading error atom short-circuits to the precondition
  TermPtr ef = parse_term("error ; inc", lm.sigma, lm.b);
  CHECK(post_err(lm.model, lm.eval, ef, p) == p);

  // with no erring atoms the err post is empty
  LoadedModel gs = gs2();
  Rng rng(11);
  auto atoms = atoms_of_model(gs);
  for (int i = 0; i < 100; ++i) {
    TermPtr t = random_term(rng, atoms, 6);
    REQUIRE(post_err(gs.model, gs.eval, t, gs.model.test_one()) ==
            gs.model.test_zero());
  }
}

TEST_CASE("abstract post on the parity domain") {
  LoadedModel lm = gs2();
  GaloisInsertion d = GaloisInsertion::parity(lm.model);
  TermPtr b1 = parse_term("b1", lm.sigma, lm.b);
  TermPtr u = parse_term("u", lm.sigma, lm.b);
  CHECK(apost_ok(d, lm.model, lm.eval, b1, d.top()) == d.top());
  CHECK(apost_ok(d, lm.model, lm.eval, u, by_name(d, "e")) == d.top());

  GaloisInsertion tr = GaloisInsertion::trivial(lm.model, ConcreteKind::Tests);
  Rng rng(5);
  auto atoms = atoms_of_model(lm);
  for (int i = 0; i < 50; ++i) {
    TermPtr t = random_term(rng, atoms, 6);
    REQUIRE(apost_ok(tr, lm.model, lm.eval, t, tr.top()) == tr.top());
  }
}

TEST_CASE("abstract err post over intervals") {
  LoadedModel lm = rel_lm(0, 11);
  GaloisInsertion d = GaloisInsertion::interval(lm.model, ConcreteKind::Tests);
  TermPtr prog = parse_term("(inc + error)*", lm.sigma, lm.b);
  AbsId p = d.alpha(lit(lm.model, "{0,2}"));
  CHECK(d.name_of(p) == "[0,2]");
  CHECK(d.name_of(apost_err(d, lm.model, lm.eval, prog, p)) == "[0,11]");

  TermPtr err = parse_term("error", lm.sigma, lm.b);
  for (int a = 0; a < d.size(); ++a)
    REQUIRE(apost_err(d, lm.model, lm.eval, err, a) == a);

  // atoms whose err component is 0 keep the abstract err post at bottom
  TermPtr inc = parse_term("inc*", lm.sigma, lm.b);
  CHECK(apost_err(d, lm.model, lm.eval, inc, p) == d.bottom());
}

TEST_CASE("codomain transformers") {
  LoadedModel lm = rel_lm(-8, 8);
  TermPtr prog = parse_term("(geq0 ; inc)* ; lt0", lm.sigma, lm.b);
  TestSet c = lit(lm.model, "top{0,8}", ConcreteKind::ToppCodomains);
  CHECK(top_post(lm.model, lm.eval, prog, c) == lm.model.topp_bottom());

  Rng rng(13);
  auto atoms = atoms_of_model(lm);
  for (int i = 0; i < 50; ++i) {
    TermPtr t = random_term(rng, atoms, 5);
    TestSet cc = random_test(rng, lm.model);
    REQUIRE(top_post(lm.model, lm.eval, Term::mk_one(), cc) == cc);
    // the codomain step agrees with the diamond route on relational models
    REQUIRE(top_post(lm.model, lm.eval, t, cc) ==
            post_ok(lm.model, lm.eval, t, cc));
  }
}

TEST_CASE("abstract codomain transformers over signs") {
  LoadedModel lm = rel_lm(-8, 8);
  GaloisInsertion d = GaloisInsertion::sign(lm.model, ConcreteKind::ToppCodomains);
  TermPtr geq0 = parse_term("geq0", lm.sigma, lm.b);
  TermPtr inc = parse_term("inc", lm.sigma, lm.b);
  AbsId zge = by_name(d, "Z>=0");
  CHECK(atop_post(d, lm.model, lm.eval, geq0, zge) == zge);
  CHECK(atop_post(d, lm.model, lm.eval, inc, zge) == by_name(d, "Z>0"));

  GaloisInsertion tr =
      GaloisInsertion::trivial(lm.model, ConcreteKind::ToppCodomains);
  TermPtr prog = parse_term("(geq0 ; inc)*", lm.sigma, lm.b);
  CHECK(atop_post(tr, lm.model, lm.eval, prog, tr.top()) == tr.top());
}

TEST_CASE("oracle equivalence on random instances") {
  LoadedModel lm = rel_lm(0, 7);
  Rng rng(20240902);
  auto atoms = atoms_of_model(lm);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = random_term(rng, atoms, 8);
    TestSet p = random_test(rng, lm.model);
    PostPair fast = post_pair(lm.model, lm.eval, t, p);
    PostPair slow = oracle_post(lm.model, lm.eval, t, p);
    REQUIRE(fast.ok == slow.ok);
    REQUIRE(fast.err == slow.err);
  }
  CHECK(oracle_post(lm.model, lm.eval, Term::mk_zero(), lm.model.test_one()).ok ==
        lm.model.test_zero());
  CHECK_THROWS_AS(oracle_post(gs2().model, gs2().eval, Term::mk_one(),
                              gs2().model.test_one()),
                  SemanticError);
}

TEST_CASE("post transformers are additive and isotone in the precondition") {
  LoadedModel lm = rel_lm(0, 5);
  Rng rng(19);
  auto atoms = atoms_of_model(lm);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = random_term(rng, atoms, 6);
    TestSet p = random_test(rng, lm.model);
    TestSet q = random_test(rng, lm.model);
    const Model &m = lm.model;
    REQUIRE(post_ok(m, lm.eval, t, m.test_join(p, q)) ==
            m.test_join(post_ok(m, lm.eval, t, p), post_ok(m, lm.eval, t, q)));
    if (m.test_leq(p, q)) {
      REQUIRE(m.test_leq(post_ok(m, lm.eval, t, p), post_ok(m, lm.eval, t, q)));
      REQUIRE(
          m.test_leq(post_err(m, lm.eval, t, p), post_err(m, lm.eval, t, q)));
    }
    // choice between terms splits pointwise
    TermPtr t2 = random_term(rng, atoms, 6);
    REQUIRE(post_ok(m, lm.eval, Term::mk_plus(t, t2), p) ==
            m.test_join(post_ok(m, lm.eval, t, p), post_ok(m, lm.eval, t2, p)));
    // the two err decompositions
    REQUIRE(post_err(m, lm.eval, Term::mk_seq(t, t2), p) ==
            m.test_join(post_err(m, lm.eval, t, p),
                        post_err(m, lm.eval, t2, post_ok(m, lm.eval, t, p))));
    REQUIRE(post_err(m, lm.eval, Term::mk_star(t), p) ==
            post_err(m, lm.eval, t,
                     post_ok(m, lm.eval, Term::mk_star(t), p)));
  }
}

TEST_CASE("post soundness against the abstraction") {
  LoadedModel lm = gs2();
  GaloisInsertion d = GaloisInsertion::parity(lm.model);
  Rng rng(17);
  auto atoms = atoms_of_model(lm);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = random_term(rng, atoms, 6);
    TestSet p = random_test(rng, lm.model);
    AbsId lhs = d.alpha(post_ok(lm.model, lm.eval, t, p));
    AbsId rhs = apost_ok(d, lm.model, lm.eval, t, d.alpha(p));
    REQUIRE(d.leq(lhs, rhs));
  }
}

TEST_CASE("abstract transformers are monotone") {
  LoadedModel rel = rel_lm(0, 11);
  GaloisInsertion d = GaloisInsertion::interval(rel.model, ConcreteKind::Tests);
  GaloisInsertion dt =
      GaloisInsertion::interval(rel.model, ConcreteKind::ToppCodomains);
  Rng rng(29);
  auto atoms = atoms_of_model(rel);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = random_term(rng, atoms, 5);
    AbsId p = static_cast<AbsId>(rng.below(d.size()));
    AbsId q = d.join(p, static_cast<AbsId>(rng.below(d.size())));
    REQUIRE(d.leq(apost_ok(d, rel.model, rel.eval, t, p),
                  apost_ok(d, rel.model, rel.eval, t, q)));
    REQUIRE(d.leq(apost_err(d, rel.model, rel.eval, t, p),
                  apost_err(d, rel.model, rel.eval, t, q)));
    REQUIRE(dt.leq(atop_post(dt, rel.model, rel.eval, t, p),
                   atop_post(dt, rel.model, rel.eval, t, q)));
  }
}

TEST_CASE("local completeness") {
  LoadedModel lm = gs2();
  GaloisInsertion d = GaloisInsertion::parity(lm.model);
  Atom u{AtomKind::Action, "u"};
  Atom b1{AtomKind::PrimTest, "b1"};

  CHECK(local_complete(d, lm.model, lm.eval, TransformerRef::atom_ok(u),
                       lit(lm.model, "{++,+-,--}"))
            .complete);
  CompletenessResult r = local_complete(
      d, lm.model, lm.eval, TransformerRef::atom_ok(b1), lit(lm.model, "{-+}"));
  CHECK(!r.complete);
  CHECK(r.lhs == lit(lm.model, "{}"));        // A of the empty image
  CHECK(r.rhs == lit(lm.model, "{+-,-+}")); // A(f(A(p))) lands on the odds

  GaloisInsertion tr = GaloisInsertion::trivial(lm.model, ConcreteKind::Tests);
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    TestSet p = random_test(rng, lm.model);
    REQUIRE(local_complete(tr, lm.model, lm.eval, TransformerRef::atom_ok(u), p)
                .complete);
    REQUIRE(local_complete(tr, lm.model, lm.eval, TransformerRef::atom_ok(b1), p)
                .complete);
  }
}

TEST_CASE("global completeness") {
  LoadedModel lm = gs2();
  GaloisInsertion d = GaloisInsertion::parity(lm.model);
  Atom u{AtomKind::Action, "u"};
  Atom b1{AtomKind::PrimTest, "b1"};

  CHECK(global_complete(d, lm.model, lm.eval, TransformerRef::atom_ok(u))
            .complete);
  CompletenessResult r =
      global_complete(d, lm.model, lm.eval, TransformerRef::atom_ok(b1));
  CHECK(!r.complete);
  // the reported witness genuinely fails locally
  CHECK(!local_complete(d, lm.model, lm.eval, TransformerRef::atom_ok(b1),
                        r.witness_input)
             .complete);
}
