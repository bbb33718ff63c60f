// Randomized soundness: build random rule trees whose premises chain
// correctly (posts computed with the semantics so seq/limit line up), then
// check that whatever the verifier accepts has a valid conclusion. Side
// conditions are left to chance, so a healthy share of trees is rejected;
// rejected trees only need to be rejected cleanly.
#include <doctest.h>

#include "helpers.hpp"

using namespace katlcl;
using namespace katlcl::testing;

namespace {

struct Gen {
  Rng &rng;
  const LoadedModel &lm;
  System sys;
  std::vector<Atom> atoms;

  const Model &m() const { return lm.model; }

  TestSet rnd_test() { return random_test(rng, m()); }

  std::string rnd_atom_name() {
    std::size_t k = rng.below(atoms.size() + 2);
    if (k == atoms.size())
      return "0";
    if (k == atoms.size() + 1)
      return "1";
    return atoms[k].name;
  }

  TermPtr term_of(const std::string &name) {
    if (name == "0")
      return Term::mk_zero();
    if (name == "1")
      return Term::mk_one();
    return Term::mk_atom(lm.eval.resolve(name));
  }

  // conclusion-shaped bookkeeping while building: (pre, term, ok-post)
  struct Built {
    Derivation d;
    TestSet pre;
    TermPtr term;
    TestSet post; // ok component
  };

  Built transfer(const TestSet &pre) {
    Built b;
    b.d.rule = "transfer";
    b.d.atom = rnd_atom_name();
    b.d.side_pre = pre;
    b.pre = pre;
    b.term = term_of(b.d.atom);
    b.post = post_ok(m(), lm.eval, b.term, pre);
    return b;
  }

  Built build(const TestSet &pre, int depth) {
    if (depth <= 0)
      return transfer(pre);
    switch (rng.below(6)) {
    case 0:
      return transfer(pre);
    case 1: { // seq through the computed intermediate post
      Built l = build(pre, depth - 1);
      Built r = build(l.post, depth - 1);
      Built b;
      b.d.rule = sys == System::LCIL ? "seq-ok" : "seq";
      b.d.children = {std::move(l.d), std::move(r.d)};
      b.pre = pre;
      b.term = Term::mk_seq(l.term, r.term);
      b.post = r.post;
      return b;
    }
    case 2: {
      Built l = build(pre, depth - 1);
      Built r = build(pre, depth - 1);
      Built b;
      b.d.rule = "join";
      b.d.children = {std::move(l.d), std::move(r.d)};
      b.pre = pre;
      b.term = Term::mk_plus(l.term, r.term);
      b.post = m().test_join(l.post, r.post);
      return b;
    }
    case 3: { // iterate; the q <= A(p) side condition is left to chance
      if (system_has_pairs(sys)) // the pair systems have no iterate rule
        return transfer(pre);
      Built l = build(pre, depth - 1);
      Built b;
      b.d.rule = "iterate";
      b.d.children = {std::move(l.d)};
      b.pre = pre;
      b.term = Term::mk_star(l.term);
      b.post = m().test_join(pre, l.post);
      return b;
    }
    case 4: { // relax the post to a random subset (often out of bounds)
      Built l = build(pre, depth - 1);
      TestSet target = l.post & rnd_test();
      Built b = std::move(l);
      Derivation rx;
      rx.rule = "relax";
      rx.relax_ok = target;
      rx.children = {std::move(b.d)};
      b.d = std::move(rx);
      b.post = target;
      return b;
    }
    default: { // limit along the computed orbit of a random step term
      Built probe = build(pre, depth - 1);
      Derivation lim;
      lim.rule = "limit";
      std::vector<TestSet> chain{pre};
      std::vector<Built> steps{std::move(probe)};
      for (int i = 0; i < 8; ++i) {
        const Built &last = steps.back();
        if (last.post == chain.back())
          break;
        chain.push_back(last.post);
        steps.push_back(rebuild(steps.front(), last.post));
      }
      // if the orbit did not close, fall back to a transfer
      if (steps.back().post != chain.back())
        return transfer(pre);
      Built b;
      b.term = Term::mk_star(steps.front().term);
      b.pre = pre;
      TestSet post = chain.front();
      for (const auto &cc : chain)
        post = m().test_join(post, cc);
      b.post = post;
      lim.chain = chain;
      for (auto &s : steps)
        lim.children.push_back(std::move(s.d));
      b.d = std::move(lim);
      return b;
    }
    }
  }

  // the same derivation skeleton re-instantiated at a new precondition
  Built rebuild(const Built &proto, const TestSet &pre) {
    Built b;
    b.d = reseat(proto.d, pre);
    b.pre = pre;
    b.term = proto.term;
    b.post = post_ok(m(), lm.eval, proto.term, pre);
    return b;
  }

  Derivation reseat(const Derivation &d, const TestSet &pre) {
    Derivation out;
    out.rule = d.rule;
    out.atom = d.atom;
    out.relax_ok = d.relax_ok;
    if (d.rule == "transfer") {
      out.side_pre = pre;
      return out;
    }
    if (d.rule == "seq" || d.rule == "seq-ok") {
      Derivation l = reseat(d.children[0], pre);
      // recompute the chained precondition from the reseated left child
      TermPtr lt = term_of_deriv(d.children[0]);
      TestSet mid = post_ok(m(), lm.eval, lt, pre);
      out.children = {std::move(l), reseat(d.children[1], mid)};
      return out;
    }
    if (d.rule == "join") {
      out.children = {reseat(d.children[0], pre), reseat(d.children[1], pre)};
      return out;
    }
    if (d.rule == "iterate" || d.rule == "relax") {
      out.children = {reseat(d.children[0], pre)};
      if (d.rule == "relax") {
        TermPtr t = term_of_deriv(d.children[0]);
        out.relax_ok = post_ok(m(), lm.eval, t, pre) & *d.relax_ok;
      }
      return out;
    }
    // limit inside limit: give up and transfer
    out = Derivation{};
    out.rule = "transfer";
    out.atom = "1";
    out.side_pre = pre;
    return out;
  }

  TermPtr term_of_deriv(const Derivation &d) {
    if (d.rule == "transfer")
      return term_of(d.atom);
    if (d.rule == "seq" || d.rule == "seq-ok")
      return Term::mk_seq(term_of_deriv(d.children[0]),
                          term_of_deriv(d.children[1]));
    if (d.rule == "join")
      return Term::mk_plus(term_of_deriv(d.children[0]),
                           term_of_deriv(d.children[1]));
    if (d.rule == "iterate")
      return Term::mk_star(term_of_deriv(d.children[0]));
    if (d.rule == "relax")
      return term_of_deriv(d.children[0]);
    return Term::mk_one();
  }
};

void fuzz_system(const LoadedModel &lm, const GaloisInsertion &d, System sys,
                 std::uint64_t seed, int rounds, int min_accepted) {
  Rng rng(seed);
  Gen g{rng, lm, sys, atoms_of_model(lm)};
  int accepted = 0;
  for (int i = 0; i < rounds; ++i) {
    Gen::Built b = g.build(g.rnd_test(), 1 + static_cast<int>(rng.below(3)));
    Derivation tree = std::move(b.d);
    Verdict v;
    try {
      v = verify(sys, d, lm.model, lm.eval, tree);
    } catch (const SemanticError &) {
      continue; // malformed by construction accident; not a soundness issue
    }
    if (!v.ok())
      continue;
    ++accepted;
    Verdict tv = valid_triple(d, lm.model, lm.eval, tree.conclusion);
    if (!tv.ok()) {
      CAPTURE(show_triple(lm.model, tree.conclusion));
      REQUIRE(tv.ok()); // accepted derivations must conclude valid triples
    }
  }
  CHECK(accepted >= min_accepted);
}

} // namespace

TEST_CASE("fuzz: accepted derivations have valid conclusions") {
  LoadedModel gs = gs2();
  GaloisInsertion parity = GaloisInsertion::parity(gs.model);
  GaloisInsertion triv = GaloisInsertion::trivial(gs.model, ConcreteKind::Tests);
  fuzz_system(gs, triv, System::LCK, 0xf001, 600, 200);
  fuzz_system(gs, parity, System::LCK, 0xf002, 600, 50);

  LoadedModel rel = rel_lm(0, 5);
  GaloisInsertion itv = GaloisInsertion::interval(rel.model, ConcreteKind::Tests);
  GaloisInsertion rtriv =
      GaloisInsertion::trivial(rel.model, ConcreteKind::Tests);
  fuzz_system(rel, rtriv, System::LCIL, 0xf003, 600, 200);
  fuzz_system(rel, itv, System::LCIL, 0xf004, 600, 20);
}
