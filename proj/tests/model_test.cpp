#include <doctest.h>

#include "helpers.hpp"

using namespace katlcl;
using namespace katlcl::testing;

namespace {

Elem rel_of(const Model &m, std::initializer_list<std::pair<int, int>> pairs) {
  Elem e{Elem::Kind::Rel,
         std::vector<TestSet>(m.carrier_size(), TestSet(m.carrier_size())),
         {},
         -1};
  for (auto [x, y] : pairs)
    e.rel[m.point_index(x)].set(m.point_index(y));
  return e;
}

TestSet test_of(const Model &m, std::initializer_list<int> pts) {
  TestSet p(m.carrier_size());
  for (int z : pts)
    p.set(m.point_index(z));
  return p;
}

// independent closure oracle for star_closure
Elem warshall(const Model &m, Elem a) {
  int n = m.carrier_size();
  for (int x = 0; x < n; ++x)
    a.rel[x].set(x);
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      if (a.rel[x].test(k))
        a.rel[x] |= a.rel[k];
  return a;
}

} // namespace

TEST_CASE("relational model basics") {
  Model m = Model::relational(0, 3);
  CHECK(m.all_tests().size() == 16);
  CHECK(m.test_one().count() == 4);
  CHECK_NOTHROW(Model::relational(0, 11));
  CHECK_THROWS_AS(Model::relational(0, 64), SemanticError); // 65 points
  CHECK_THROWS_AS(Model::relational(3, 0), SemanticError);
}

TEST_CASE("relational diamond matches the explicit formula") {
  Model m = Model::relational(0, 3);
  Elem a = rel_of(m, {{0, 1}, {0, 2}});
  CHECK(m.bdia(a, test_of(m, {0})) == test_of(m, {1, 2}));
  CHECK(m.bdia(a, m.test_zero()) == m.test_zero());
  // distinct relations are split by a singleton test
  Elem b = rel_of(m, {{0, 2}});
  CHECK(m.bdia(a, test_of(m, {0})) != m.bdia(b, test_of(m, {0})));
}

TEST_CASE("star closure") {
  Model m = Model::relational(0, 3);
  Elem succ = rel_of(m, {{0, 1}, {1, 2}, {2, 3}});
  Elem closed = m.star_closure(succ);
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y)
      CHECK(closed.rel[x].test(y) == (x <= y));
  CHECK(m.elem_eq(closed, warshall(m, succ)));
  CHECK(m.elem_eq(m.star_closure(m.zero_elem()), m.one_elem()));

  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Elem r{Elem::Kind::Rel, {}, {}, -1};
    for (int x = 0; x < 4; ++x) {
      TestSet row(4);
      for (int y = 0; y < 4; ++y)
        if (rng.flip())
          row.set(y);
      r.rel.push_back(row);
    }
    REQUIRE(m.elem_eq(m.star_closure(r), warshall(m, r)));
  }
}

TEST_CASE("guarded-string model") {
  LoadedModel lm = gs2();
  const Model &m = lm.model;
  CHECK(m.gs_atom_count() == 4);
  CHECK(m.test_one().count() == 4);

  Elem u = lm.eval.lookup({AtomKind::Action, "u"}).first;
  Elem b1 = lm.eval.lookup({AtomKind::PrimTest, "b1"}).first;
  TestSet p = parse_literal(m, ConcreteKind::Tests, "{++,--}");
  CHECK(m.bdia(u, p) == m.test_one());
  CHECK(m.bdia(u, m.test_zero()) == m.test_zero());
  CHECK(m.bdia(b1, m.test_one()) ==
        parse_literal(m, ConcreteKind::Tests, "{++,+-}"));

  CHECK_THROWS_AS(m.star_closure(u), SemanticError);
  CHECK_THROWS_AS(m.plus(u, u), SemanticError);
  CHECK(m.elem_eq(m.star_closure(m.from_test(p)), m.one_elem()));
}

TEST_CASE("A3 table") {
  Model m = Model::a3();
  auto by_name = [&](const std::string &n) {
    for (std::size_t i = 0; i < m.table_names().size(); ++i)
      if (m.table_names()[i] == n)
        return Elem{Elem::Kind::TableId, {}, {}, static_cast<int>(i)};
    FAIL("missing element");
    return Elem{};
  };
  Elem zero = by_name("0"), one = by_name("1"), a = by_name("a");
  CHECK(m.elem_eq(m.seq(a, a), zero));
  CHECK(m.elem_eq(m.plus(one, a), one)); // a <= 1, so 1 is the top
  CHECK(m.elem_eq(m.plus(zero, a), a));
  CHECK(m.elem_eq(m.star_closure(a), one));
  CHECK(m.has_top());

  // T.1.a = a but no test reaches it as T.q
  Elem t1a = m.seq(m.seq(*m.top_elem(), one), a);
  CHECK(m.elem_eq(t1a, a));
  CHECK(!m.top_representable_as_test(m.top_mul(a)).has_value());
  CHECK(m.top_representable_as_test(m.top_mul(one)).has_value());
}

TEST_CASE("axioms: A3 passes") {
  AxiomReport rep = Model::a3().check_kat_axioms();
  for (const auto &r : rep.results) {
    INFO(r.family << " witness " << r.witness);
    CHECK(r.pass);
  }
  CHECK(rep.all_pass());
  CHECK(!rep.sampled);
}

TEST_CASE("axioms: small relational model passes exhaustively") {
  Model m = Model::relational(0, 1);
  AxiomReport rep = m.check_kat_axioms();
  CHECK(rep.all_pass());
  for (const auto &r : rep.results) {
    INFO(r.family);
    CHECK(r.exhaustive);
  }
}

TEST_CASE("axioms: corrupted table is caught with a witness") {
  // break annihilation: a . 0 = a
  std::vector<std::vector<int>> plus{{0, 1, 2}, {1, 1, 1}, {2, 1, 2}};
  std::vector<std::vector<int>> seq{{0, 0, 0}, {0, 1, 2}, {2, 2, 0}};
  Model bad = Model::table({"0", "1", "a"}, {0, 1}, plus, seq, {1, 1, 1},
                           {1, 0, 0}, 0, 1, 1);
  AxiomReport rep = bad.check_kat_axioms();
  CHECK(!rep.all_pass());
  bool seen = false;
  for (const auto &r : rep.results)
    if (r.family == "identity-annihilation" && !r.pass) {
      seen = true;
      CHECK(r.witness.find("a") != std::string::npos);
    }
  CHECK(seen);
}

TEST_CASE("axioms: guarded strings are rejected") {
  CHECK_THROWS_AS(gs2().model.check_kat_axioms(), SemanticError);
}

TEST_CASE("extensionality of the diamond") {
  CHECK(Model::relational(0, 2).check_extensionality().all_pass());
  CHECK(Model::relational(0, 3).check_extensionality().all_pass());
  CHECK_THROWS_AS(Model::relational(0, 5).check_extensionality(), SemanticError);
  CHECK_THROWS_AS(gs2().model.check_extensionality(), SemanticError);
}

TEST_CASE("topp codomains") {
  Model m = Model::relational(0, 3);
  Elem a = rel_of(m, {{0, 1}, {2, 1}, {2, 3}});
  CHECK(m.top_mul(a) == test_of(m, {1, 3}));
  CHECK(m.top_step(test_of(m, {0, 2}), a) == test_of(m, {1, 3}));
  CHECK(m.top_step(test_of(m, {0}), a) == test_of(m, {1}));
  CHECK(m.topp_top() == m.test_one());
  CHECK(*m.top_representable_as_test(test_of(m, {1, 3})) == test_of(m, {1, 3}));
}
