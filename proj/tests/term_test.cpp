#include <doctest.h>

#include "helpers.hpp"

using namespace katlcl;
using namespace katlcl::testing;

namespace {
const std::set<std::string> kSigma{"u"};
const std::set<std::string> kB{"b1", "b2"};

TermPtr atom(AtomKind k, const std::string &n) {
  return Term::mk_atom({k, n});
}
TermPtr u() { return atom(AtomKind::Action, "u"); }
TermPtr b1() { return atom(AtomKind::PrimTest, "b1"); }
} // namespace

TEST_CASE("parse: looping program") {
  TermPtr t = parse_term("(u ; b1)*", kSigma, kB);
  CHECK(term_eq(t, Term::mk_star(Term::mk_seq(u(), b1()))));
}

TEST_CASE("parse: literals") {
  CHECK(parse_term("1", kSigma, kB)->node == TermNode::One);
  CHECK(parse_term("0", kSigma, kB)->node == TermNode::Zero);
}

TEST_CASE("parse: precedence and associativity") {
  // ; binds tighter than +
  CHECK(term_eq(parse_term("u + u ; b1", kSigma, kB),
                Term::mk_plus(u(), Term::mk_seq(u(), b1()))));
  // * binds tighter than ;
  CHECK(term_eq(parse_term("u ; b1*", kSigma, kB),
                Term::mk_seq(u(), Term::mk_star(b1()))));
  // left associative
  CHECK(term_eq(parse_term("u + b1 + b2", kSigma, kB),
                Term::mk_plus(Term::mk_plus(u(), b1()),
                              atom(AtomKind::PrimTest, "b2"))));
  CHECK(term_eq(parse_term("u ; b1 ; b2", kSigma, kB),
                Term::mk_seq(Term::mk_seq(u(), b1()),
                             atom(AtomKind::PrimTest, "b2"))));
  CHECK(term_eq(parse_term("u**", kSigma, kB),
                Term::mk_star(Term::mk_star(u()))));
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse_term("(u ; b1", kSigma, kB), ParseError);
  CHECK_THROWS_AS(parse_term("u +", kSigma, kB), ParseError);
  CHECK_THROWS_AS(parse_term("u b1", kSigma, kB), ParseError);
  CHECK_THROWS_AS(parse_term("nosuch", kSigma, kB), SemanticError);
  CHECK_THROWS_AS(parse_term("u", {"x"}, {"x"}), SemanticError); // overlap
  try {
    parse_term("u ; ; b1", kSigma, kB);
    CHECK(false);
  } catch (const ParseError &e) {
    CHECK(e.pos == 4);
  }
}

TEST_CASE("atoms_of") {
  CHECK(atoms_of(parse_term("(u ; b1)*", kSigma, kB)) ==
        std::set<Atom>{{AtomKind::Action, "u"}, {AtomKind::PrimTest, "b1"}});
  CHECK(atoms_of(Term::mk_one()).empty());
  CHECK(atoms_of(Term::mk_plus(u(), Term::mk_seq(u(), b1()))) ==
        std::set<Atom>{{AtomKind::Action, "u"}, {AtomKind::PrimTest, "b1"}});
}

TEST_CASE("pretty printing") {
  CHECK(pretty_term(Term::mk_star(Term::mk_seq(u(), b1()))) == "(u ; b1)*");
  CHECK(pretty_term(Term::mk_zero()) == "0");
  CHECK(pretty_term(Term::mk_plus(Term::mk_one(), Term::mk_star(u()))) ==
        "1 + u*");
  // right-nested trees keep their parentheses
  CHECK(pretty_term(Term::mk_seq(u(), Term::mk_seq(b1(), u()))) ==
        "u ; (b1 ; u)");
}

TEST_CASE("pretty/parse round trip") {
  Rng rng(20240901);
  std::vector<Atom> atoms{{AtomKind::Action, "u"},
                          {AtomKind::PrimTest, "b1"},
                          {AtomKind::PrimTest, "b2"}};
  for (int i = 0; i < 500; ++i) {
    TermPtr t = random_term(rng, atoms, 9);
    TermPtr back = parse_term(pretty_term(t), kSigma, kB);
    REQUIRE(term_eq(t, back));
  }
}
