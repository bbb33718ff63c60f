#include "katlcl/model.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace katlcl {

bool operator==(const Elem &a, const Elem &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Elem::Kind::Rel:
    return a.rel == b.rel;
  case Elem::Kind::TestVal:
    return a.test == b.test;
  case Elem::Kind::GsAction:
    return true; // one shared interpretation for every primitive action
  case Elem::Kind::TableId:
    return a.id == b.id;
  }
  return false;
}

// ---------------------------------------------------------------------------
// construction

Model Model::relational(int lo, int hi) {
  if (hi < lo)
    throw SemanticError("empty carrier");
  long long size = static_cast<long long>(hi) - lo + 1;
  if (size > 64)
    throw SemanticError("carrier too large (at most 64 points, got " +
                        std::to_string(size) + ")");
  Model m;
  m.kind_ = ModelKind::RelationalFull;
  m.lo_ = lo;
  m.hi_ = hi;
  m.n_ = static_cast<int>(size);
  return m;
}

Model Model::guarded_strings(std::vector<std::string> b) {
  if (b.empty() || b.size() > 16)
    throw SemanticError("guarded-string alphabet must have 1..16 tests");
  Model m;
  m.kind_ = ModelKind::GuardedStringTests;
  m.gs_names_ = std::move(b);
  m.gs_atoms_ = 1 << m.gs_names_.size();
  return m;
}

Model Model::table(std::vector<std::string> names, std::vector<int> tests,
                   std::vector<std::vector<int>> plus,
                   std::vector<std::vector<int>> seq, std::vector<int> star,
                   std::vector<int> neg, int zero, int one,
                   std::optional<int> top) {
  std::size_t k = names.size();
  if (k == 0 || plus.size() != k || seq.size() != k || star.size() != k ||
      neg.size() != k)
    throw SemanticError("inconsistent table sizes");
  for (std::size_t i = 0; i < k; ++i)
    if (plus[i].size() != k || seq[i].size() != k)
      throw SemanticError("inconsistent table row sizes");
  auto in_range = [&](int v) { return v >= 0 && v < static_cast<int>(k); };
  if (!in_range(zero) || !in_range(one))
    throw SemanticError("zero/one outside the carrier");
  for (int t : tests)
    if (!in_range(t))
      throw SemanticError("test id outside the carrier");
  Model m;
  m.kind_ = ModelKind::ExplicitTable;
  m.names_ = std::move(names);
  m.test_ids_ = std::move(tests);
  m.plus_ = std::move(plus);
  m.seq_ = std::move(seq);
  m.star_ = std::move(star);
  m.neg_ = std::move(neg);
  m.zero_id_ = zero;
  m.one_id_ = one;
  m.top_id_ = top;
  return m;
}

Model Model::a3() {
  // carrier {0, 1, a}; a+1 = 1 makes 1 the top
  std::vector<std::string> names{"0", "1", "a"};
  std::vector<std::vector<int>> plus{{0, 1, 2}, {1, 1, 1}, {2, 1, 2}};
  std::vector<std::vector<int>> seq{{0, 0, 0}, {0, 1, 2}, {0, 2, 0}};
  std::vector<int> star{1, 1, 1};
  std::vector<int> neg{1, 0, 0}; // defined on tests {0,1} only
  return table(std::move(names), {0, 1}, std::move(plus), std::move(seq),
               std::move(star), std::move(neg), 0, 1, 1);
}

std::size_t Model::universe_size() const {
  switch (kind_) {
  case ModelKind::RelationalFull:
    return static_cast<std::size_t>(n_);
  case ModelKind::GuardedStringTests:
    return static_cast<std::size_t>(gs_atoms_);
  case ModelKind::ExplicitTable:
    return names_.size();
  }
  return 0;
}

int Model::point_index(int z) const {
  if (z < lo_ || z > hi_)
    throw SemanticError("carrier point " + std::to_string(z) +
                        " outside " + std::to_string(lo_) + ".." +
                        std::to_string(hi_));
  return z - lo_;
}

int Model::point_value(std::size_t i) const { return lo_ + static_cast<int>(i); }

int Model::gs_atom_count() const { return gs_atoms_; }

TestSet Model::gs_prim_test(int i) const {
  TestSet p(gs_atoms_);
  for (int a = 0; a < gs_atoms_; ++a)
    if (a & (1 << i))
      p.set(a);
  return p;
}

int Model::table_id_of(const TestSet &one_hot) const {
  if (one_hot.count() != 1)
    throw SemanticError("table element must be a single carrier id");
  return static_cast<int>(one_hot.find_first());
}

TestSet Model::table_one_hot(int id) const {
  TestSet p(names_.size());
  p.set(id);
  return p;
}

// ---------------------------------------------------------------------------
// test lattice

TestSet Model::test_zero() const {
  if (kind_ == ModelKind::ExplicitTable)
    return table_one_hot(zero_id_);
  return TestSet(universe_size());
}

TestSet Model::test_one() const {
  if (kind_ == ModelKind::ExplicitTable)
    return table_one_hot(one_id_);
  TestSet p(universe_size());
  p.set();
  return p;
}

TestSet Model::test_join(const TestSet &p, const TestSet &q) const {
  if (kind_ == ModelKind::ExplicitTable)
    return table_one_hot(plus_[table_id_of(p)][table_id_of(q)]);
  return p | q;
}

TestSet Model::test_meet(const TestSet &p, const TestSet &q) const {
  if (kind_ == ModelKind::ExplicitTable)
    return table_one_hot(seq_[table_id_of(p)][table_id_of(q)]);
  return p & q;
}

TestSet Model::test_not(const TestSet &p) const {
  if (kind_ == ModelKind::ExplicitTable)
    return table_one_hot(neg_[table_id_of(p)]);
  return ~p;
}

bool Model::test_leq(const TestSet &p, const TestSet &q) const {
  if (kind_ == ModelKind::ExplicitTable)
    return plus_[table_id_of(p)][table_id_of(q)] == table_id_of(q);
  return p.is_subset_of(q);
}

bool Model::is_test(const TestSet &p) const {
  if (p.size() != universe_size())
    return false;
  if (kind_ == ModelKind::ExplicitTable) {
    if (p.count() != 1)
      return false;
    int id = static_cast<int>(p.find_first());
    return std::find(test_ids_.begin(), test_ids_.end(), id) != test_ids_.end();
  }
  return true;
}

std::size_t Model::test_lattice_height() const {
  if (kind_ == ModelKind::ExplicitTable) {
    std::size_t h = 1, c = test_ids_.size();
    while (c > 1) {
      c >>= 1;
      ++h;
    }
    return h;
  }
  return universe_size() + 1;
}

std::vector<TestSet> Model::all_tests(std::size_t limit) const {
  std::vector<TestSet> out;
  if (kind_ == ModelKind::ExplicitTable) {
    for (int id : test_ids_)
      out.push_back(table_one_hot(id));
    return out;
  }
  std::size_t u = universe_size();
  if (u >= 63 || (std::size_t{1} << u) > limit)
    throw SemanticError("test lattice too large to enumerate");
  for (std::size_t mask = 0; mask < (std::size_t{1} << u); ++mask) {
    TestSet p(u);
    for (std::size_t i = 0; i < u; ++i)
      if (mask & (std::size_t{1} << i))
        p.set(i);
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t Model::test_count_log2() const {
  if (kind_ == ModelKind::ExplicitTable)
    return test_ids_.size(); // not a power count; only used for budgeting
  return universe_size();
}

// ---------------------------------------------------------------------------
// elements

Elem Model::zero_elem() const {
  switch (kind_) {
  case ModelKind::RelationalFull:
    return Elem{Elem::Kind::Rel, std::vector<TestSet>(n_, TestSet(n_)), {}, -1};
  case ModelKind::GuardedStringTests:
    return Elem{Elem::Kind::TestVal, {}, TestSet(gs_atoms_), -1};
  case ModelKind::ExplicitTable:
    return Elem{Elem::Kind::TableId, {}, {}, zero_id_};
  }
  throw std::logic_error("bad kind");
}

Elem Model::one_elem() const { return from_test(test_one()); }

Elem Model::from_test(const TestSet &p) const {
  if (!is_test(p))
    throw SemanticError("not a test of this model");
  switch (kind_) {
  case ModelKind::RelationalFull: {
    std::vector<TestSet> rows(n_, TestSet(n_));
    for (std::size_t x = p.find_first(); x != TestSet::npos; x = p.find_next(x))
      rows[x].set(x);
    return Elem{Elem::Kind::Rel, std::move(rows), {}, -1};
  }
  case ModelKind::GuardedStringTests:
    return Elem{Elem::Kind::TestVal, {}, p, -1};
  case ModelKind::ExplicitTable:
    return Elem{Elem::Kind::TableId, {}, {}, static_cast<int>(p.find_first())};
  }
  throw std::logic_error("bad kind");
}

std::optional<Elem> Model::top_elem() const {
  switch (kind_) {
  case ModelKind::RelationalFull: {
    TestSet full(n_);
    full.set();
    return Elem{Elem::Kind::Rel, std::vector<TestSet>(n_, full), {}, -1};
  }
  case ModelKind::GuardedStringTests:
    return std::nullopt; // guarded-string sets have no greatest element
  case ModelKind::ExplicitTable:
    if (!top_id_)
      return std::nullopt;
    return Elem{Elem::Kind::TableId, {}, {}, *top_id_};
  }
  return std::nullopt;
}

bool Model::has_top() const { return top_elem().has_value(); }

Elem Model::plus(const Elem &a, const Elem &b) const {
  switch (kind_) {
  case ModelKind::RelationalFull: {
    Elem r = a;
    for (int x = 0; x < n_; ++x)
      r.rel[x] |= b.rel[x];
    return r;
  }
  case ModelKind::GuardedStringTests:
    if (a.kind == Elem::Kind::TestVal && b.kind == Elem::Kind::TestVal)
      return Elem{Elem::Kind::TestVal, {}, a.test | b.test, -1};
    throw SemanticError("guarded-string composites cannot be materialized");
  case ModelKind::ExplicitTable:
    return Elem{Elem::Kind::TableId, {}, {}, plus_[a.id][b.id]};
  }
  throw std::logic_error("bad kind");
}

Elem Model::seq(const Elem &a, const Elem &b) const {
  switch (kind_) {
  case ModelKind::RelationalFull: {
    Elem r{Elem::Kind::Rel, std::vector<TestSet>(n_, TestSet(n_)), {}, -1};
    for (int x = 0; x < n_; ++x)
      for (std::size_t y = a.rel[x].find_first(); y != TestSet::npos;
           y = a.rel[x].find_next(y))
        r.rel[x] |= b.rel[y];
    return r;
  }
  case ModelKind::GuardedStringTests:
    if (a.kind == Elem::Kind::TestVal && b.kind == Elem::Kind::TestVal)
      return Elem{Elem::Kind::TestVal, {}, a.test & b.test, -1};
    throw SemanticError("guarded-string composites cannot be materialized");
  case ModelKind::ExplicitTable:
    return Elem{Elem::Kind::TableId, {}, {}, seq_[a.id][b.id]};
  }
  throw std::logic_error("bad kind");
}

Elem Model::star_closure(const Elem &a) const {
  switch (kind_) {
  case ModelKind::RelationalFull: {
    // reflexive-transitive closure, iterated squaring of (1 + a)
    Elem acc = plus(one_elem(), a);
    for (;;) {
      Elem next = seq(acc, acc);
      if (elem_eq(next, acc))
        return acc;
      acc = std::move(next);
    }
  }
  case ModelKind::GuardedStringTests:
    if (a.kind == Elem::Kind::TestVal)
      return one_elem(); // p <= 1 forces p* = 1
    throw SemanticError("guarded-string composites cannot be materialized");
  case ModelKind::ExplicitTable:
    return Elem{Elem::Kind::TableId, {}, {}, star_[a.id]};
  }
  throw std::logic_error("bad kind");
}

bool Model::elem_eq(const Elem &a, const Elem &b) const { return a == b; }

bool Model::elem_leq(const Elem &a, const Elem &b) const {
  switch (kind_) {
  case ModelKind::RelationalFull: {
    for (int x = 0; x < n_; ++x)
      if (!a.rel[x].is_subset_of(b.rel[x]))
        return false;
    return true;
  }
  case ModelKind::GuardedStringTests:
    return a.test.is_subset_of(b.test);
  case ModelKind::ExplicitTable:
    return plus_[a.id][b.id] == b.id;
  }
  return false;
}

TestSet Model::bdia(const Elem &a, const TestSet &p) const {
  if (!is_test(p))
    throw SemanticError("diamond precondition is not a test of this model");
  switch (kind_) {
  case ModelKind::RelationalFull: {
    TestSet q(n_);
    for (std::size_t x = p.find_first(); x != TestSet::npos; x = p.find_next(x))
      q |= a.rel[x];
    return q;
  }
  case ModelKind::GuardedStringTests:
    if (a.kind == Elem::Kind::TestVal)
      return p & a.test;
    // a primitive action reaches every atom from any nonempty test
    return p.any() ? test_one() : test_zero();
  case ModelKind::ExplicitTable: {
    // least q among the tests with pa = paq
    int pa = seq_[table_id_of(p)][a.id];
    std::vector<int> sat;
    for (int q : test_ids_)
      if (seq_[pa][q] == pa)
        sat.push_back(q);
    for (int q : sat) {
      bool least = true;
      for (int r : sat)
        if (plus_[q][r] != r) { // q <= r fails
          least = false;
          break;
        }
      if (least)
        return table_one_hot(q);
    }
    throw SemanticError("model has no least test for this diamond");
  }
  }
  throw std::logic_error("bad kind");
}

// ---------------------------------------------------------------------------
// TopKAT codomain view

TestSet Model::top_mul(const Elem &a) const {
  switch (kind_) {
  case ModelKind::RelationalFull: {
    TestSet cod(n_);
    for (int x = 0; x < n_; ++x)
      cod |= a.rel[x];
    return cod;
  }
  case ModelKind::ExplicitTable: {
    if (!top_id_)
      throw SemanticError("model has no top element");
    return table_one_hot(seq_[*top_id_][a.id]);
  }
  default:
    throw SemanticError("model has no top element");
  }
}

TestSet Model::topp_bottom() const { return top_mul(zero_elem()); }

TestSet Model::topp_top() const {
  auto t = top_elem();
  if (!t)
    throw SemanticError("model has no top element");
  return top_mul(*t);
}

TestSet Model::topp_join(const TestSet &c, const TestSet &d) const {
  if (kind_ == ModelKind::ExplicitTable)
    return table_one_hot(plus_[table_id_of(c)][table_id_of(d)]);
  return c | d;
}

bool Model::topp_leq(const TestSet &c, const TestSet &d) const {
  if (kind_ == ModelKind::ExplicitTable)
    return plus_[table_id_of(c)][table_id_of(d)] == table_id_of(d);
  return c.is_subset_of(d);
}

bool Model::is_topp(const TestSet &c) const {
  if (c.size() != universe_size())
    return false;
  if (kind_ == ModelKind::RelationalFull)
    return true; // C -> X x C is onto topp(K) when tests are all sub-identities
  if (kind_ == ModelKind::ExplicitTable) {
    if (c.count() != 1 || !top_id_)
      return false;
    int id = static_cast<int>(c.find_first());
    for (std::size_t e = 0; e < names_.size(); ++e)
      if (seq_[*top_id_][e] == id)
        return true;
    return false;
  }
  return false;
}

std::vector<TestSet> Model::all_topp(std::size_t limit) const {
  if (kind_ == ModelKind::RelationalFull)
    return all_tests(limit);
  if (kind_ == ModelKind::ExplicitTable) {
    if (!top_id_)
      throw SemanticError("model has no top element");
    std::vector<TestSet> out;
    for (std::size_t e = 0; e < names_.size(); ++e) {
      TestSet c = table_one_hot(seq_[*top_id_][e]);
      if (std::find(out.begin(), out.end(), c) == out.end())
        out.push_back(std::move(c));
    }
    return out;
  }
  throw SemanticError("model has no top element");
}

TestSet Model::top_step(const TestSet &c, const Elem &a) const {
  switch (kind_) {
  case ModelKind::RelationalFull: {
    TestSet out(n_);
    for (std::size_t x = c.find_first(); x != TestSet::npos; x = c.find_next(x))
      out |= a.rel[x];
    return out;
  }
  case ModelKind::ExplicitTable:
    return table_one_hot(seq_[table_id_of(c)][a.id]);
  default:
    throw SemanticError("model has no top element");
  }
}

std::optional<TestSet> Model::top_representable_as_test(const TestSet &c) const {
  if (kind_ == ModelKind::ExplicitTable) {
    if (!top_id_)
      throw SemanticError("model has no top element");
    for (int q : test_ids_)
      if (seq_[*top_id_][q] == table_id_of(c))
        return table_one_hot(q);
    return std::nullopt;
  }
  if (kind_ == ModelKind::RelationalFull)
    return c; // cod(T.q) = q for every sub-identity
  throw SemanticError("model has no top element");
}

// ---------------------------------------------------------------------------
// rendering

std::string show_test(const Model &m, const TestSet &p) {
  std::ostringstream out;
  switch (m.kind()) {
  case ModelKind::RelationalFull: {
    std::vector<int> vals;
    for (std::size_t i = p.find_first(); i != TestSet::npos; i = p.find_next(i))
      vals.push_back(m.point_value(i));
    out << "{";
    std::size_t i = 0;
    bool first = true;
    while (i < vals.size()) {
      std::size_t j = i;
      while (j + 1 < vals.size() && vals[j + 1] == vals[j] + 1)
        ++j;
      if (!first)
        out << ",";
      if (j - i >= 2) // runs of three or more compress to a..b
        out << vals[i] << ".." << vals[j];
      else {
        out << vals[i];
        for (std::size_t k = i + 1; k <= j; ++k)
          out << "," << vals[k];
      }
      first = false;
      i = j + 1;
    }
    out << "}";
    break;
  }
  case ModelKind::GuardedStringTests: {
    std::vector<std::string> names;
    std::size_t nb = m.gs_tests().size();
    for (std::size_t i = p.find_first(); i != TestSet::npos; i = p.find_next(i)) {
      std::string s(nb, '-');
      for (std::size_t k = 0; k < nb; ++k)
        if (i & (std::size_t{1} << k))
          s[k] = '+';
      names.push_back(std::move(s));
    }
    std::sort(names.begin(), names.end());
    out << "{";
    for (std::size_t i = 0; i < names.size(); ++i)
      out << (i ? "," : "") << names[i];
    out << "}";
    break;
  }
  case ModelKind::ExplicitTable:
    out << "{" << m.table_names()[p.find_first()] << "}";
    break;
  }
  return out.str();
}

std::string show_elem(const Model &m, const Elem &a) {
  std::ostringstream out;
  switch (a.kind) {
  case Elem::Kind::Rel: {
    out << "{";
    bool first = true;
    for (std::size_t x = 0; x < a.rel.size(); ++x)
      for (std::size_t y = a.rel[x].find_first(); y != TestSet::npos;
           y = a.rel[x].find_next(y)) {
        if (!first)
          out << ",";
        out << "(" << m.point_value(x) << "," << m.point_value(y) << ")";
        first = false;
      }
    out << "}";
    break;
  }
  case Elem::Kind::TestVal:
    out << show_test(m, a.test);
    break;
  case Elem::Kind::GsAction:
    out << "<action>";
    break;
  case Elem::Kind::TableId:
    out << m.table_names()[a.id];
    break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// axiom suites

namespace {

struct Checker {
  const Model &m;
  AxiomReport &rep;
  bool exhaustive;

  void record(const std::string &family, bool pass, std::string witness) {
    rep.results.push_back({family, pass, exhaustive, std::move(witness)});
    if (!exhaustive)
      rep.sampled = true;
  }
};

} // namespace

AxiomReport Model::check_kat_axioms(std::uint64_t seed, std::size_t samples,
                                    int exhaustive_carrier_max) const {
  if (kind_ == ModelKind::GuardedStringTests)
    throw SemanticError("guarded-string models are not enumerable for axiom checks");
  if (kind_ == ModelKind::ExplicitTable && names_.size() > 10000)
    throw SemanticError("table model too large for axiom checks");

  AxiomReport rep;
  std::mt19937_64 rng(seed);

  // Element pool: full enumeration when feasible, otherwise random draws.
  std::vector<Elem> elems;
  std::vector<TestSet> tests = all_tests();
  bool exhaustive = true;
  if (kind_ == ModelKind::ExplicitTable) {
    for (std::size_t e = 0; e < names_.size(); ++e)
      elems.push_back(Elem{Elem::Kind::TableId, {}, {}, static_cast<int>(e)});
  } else {
    if (n_ <= exhaustive_carrier_max) {
      std::size_t cells = static_cast<std::size_t>(n_) * n_;
      for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
        Elem a{Elem::Kind::Rel, std::vector<TestSet>(n_, TestSet(n_)), {}, -1};
        for (std::size_t c = 0; c < cells; ++c)
          if (mask & (std::size_t{1} << c))
            a.rel[c / n_].set(c % n_);
        elems.push_back(std::move(a));
      }
    } else {
      exhaustive = false;
      for (std::size_t i = 0; i < std::max<std::size_t>(samples / 16, 64); ++i) {
        Elem a{Elem::Kind::Rel, std::vector<TestSet>(n_, TestSet(n_)), {}, -1};
        for (int x = 0; x < n_; ++x) {
          std::uint64_t row = rng();
          for (int y = 0; y < n_; ++y)
            if (row & (1ull << y))
              a.rel[x].set(y);
        }
        elems.push_back(std::move(a));
      }
    }
  }

  auto pick = [&](auto &pool) -> decltype(pool[0]) & {
    return pool[rng() % pool.size()];
  };
  std::size_t npairs = elems.size() * elems.size();
  bool pairs_exh = exhaustive && npairs <= 4'000'000;
  bool triples_exh = exhaustive && npairs * elems.size() <= 2'000'000;

  Checker ex{*this, rep, true};
  Checker pr{*this, rep, pairs_exh};
  Checker tr{*this, rep, triples_exh};

  auto wit2 = [&](const Elem &a, const Elem &b) {
    return "a=" + show_elem(*this, a) + " b=" + show_elem(*this, b);
  };

  // --- i-semiring laws ------------------------------------------------------
  {
    bool ok = true;
    std::string w;
    auto chk_pair = [&](const Elem &a, const Elem &b) {
      if (!elem_eq(plus(a, b), plus(b, a))) {
        ok = false;
        w = wit2(a, b);
      }
    };
    if (pairs_exh) {
      for (const auto &a : elems)
        for (const auto &b : elems) {
          chk_pair(a, b);
          if (!ok)
            break;
        }
    } else
      for (std::size_t i = 0; i < samples && ok; ++i)
        chk_pair(pick(elems), pick(elems));
    pr.record("plus-commutative", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    for (const auto &a : elems) {
      if (!elem_eq(plus(a, a), a)) {
        ok = false;
        w = "a=" + show_elem(*this, a);
        break;
      }
      if (!elem_eq(plus(a, zero_elem()), a) ||
          !elem_eq(seq(a, one_elem()), a) || !elem_eq(seq(one_elem(), a), a)) {
        ok = false;
        w = "a=" + show_elem(*this, a);
        break;
      }
      if (!elem_eq(seq(a, zero_elem()), zero_elem()) ||
          !elem_eq(seq(zero_elem(), a), zero_elem())) {
        ok = false;
        w = "a=" + show_elem(*this, a);
        break;
      }
    }
    ex.record("identity-annihilation", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    auto chk = [&](const Elem &a, const Elem &b, const Elem &c) {
      if (!elem_eq(plus(plus(a, b), c), plus(a, plus(b, c))) ||
          !elem_eq(seq(seq(a, b), c), seq(a, seq(b, c))) ||
          !elem_eq(seq(a, plus(b, c)), plus(seq(a, b), seq(a, c))) ||
          !elem_eq(seq(plus(a, b), c), plus(seq(a, c), seq(b, c)))) {
        ok = false;
        w = wit2(a, b) + " c=" + show_elem(*this, c);
      }
    };
    if (triples_exh) {
      for (const auto &a : elems)
        for (const auto &b : elems) {
          for (const auto &c : elems) {
            chk(a, b, c);
            if (!ok)
              break;
          }
          if (!ok)
            break;
        }
    } else
      for (std::size_t i = 0; i < samples && ok; ++i)
        chk(pick(elems), pick(elems), pick(elems));
    tr.record("associativity-distributivity", ok, w);
  }

  // --- Boolean subalgebra ---------------------------------------------------
  {
    bool ok = true;
    std::string w;
    for (const auto &p : tests) {
      TestSet np = test_not(p);
      if (test_join(p, np) != test_one() || test_meet(p, np) != test_zero() ||
          !elem_leq(from_test(p), one_elem())) {
        ok = false;
        w = "p=" + show_test(*this, p);
        break;
      }
      // meet/join of tests coincide with . and + of the algebra
      for (const auto &q : tests) {
        if (!elem_eq(seq(from_test(p), from_test(q)), from_test(test_meet(p, q))) ||
            !elem_eq(plus(from_test(p), from_test(q)), from_test(test_join(p, q)))) {
          ok = false;
          w = "p=" + show_test(*this, p) + " q=" + show_test(*this, q);
          break;
        }
      }
      if (!ok)
        break;
    }
    ex.record("boolean-subalgebra", ok, w);
  }

  // --- Kleene star ----------------------------------------------------------
  {
    bool ok = true;
    std::string w;
    for (const auto &a : elems) {
      Elem s = star_closure(a);
      Elem lhs1 = plus(one_elem(), seq(a, s));
      Elem lhs2 = plus(one_elem(), seq(s, a));
      if (!elem_leq(lhs1, s) || !elem_leq(lhs2, s)) {
        ok = false;
        w = "a=" + show_elem(*this, a);
        break;
      }
    }
    ex.record("star-unfold", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    auto chk = [&](const Elem &a, const Elem &b, const Elem &c) {
      Elem sa = star_closure(a);
      if (elem_leq(plus(b, seq(a, c)), c) && !elem_leq(seq(sa, b), c)) {
        ok = false;
        w = wit2(a, b) + " c=" + show_elem(*this, c);
        return;
      }
      if (elem_leq(plus(b, seq(c, a)), c) && !elem_leq(seq(b, sa), c)) {
        ok = false;
        w = wit2(a, b) + " c=" + show_elem(*this, c);
      }
    };
    if (triples_exh) {
      for (const auto &a : elems)
        for (const auto &b : elems) {
          for (const auto &c : elems) {
            chk(a, b, c);
            if (!ok)
              break;
          }
          if (!ok)
            break;
        }
    } else
      for (std::size_t i = 0; i < samples && ok; ++i)
        chk(pick(elems), pick(elems), pick(elems));
    tr.record("star-induction", ok, w);
  }

  // --- backward diamond (relational models only) -----------------------------
  if (kind_ == ModelKind::RelationalFull) {
    bool bd_pairs_exh = exhaustive; // (a,p): tests are always enumerated fully
    {
      // least-test characterization of (bd1)
      bool ok = true;
      std::string w;
      auto chk = [&](const Elem &a, const TestSet &p) {
        TestSet q0 = bdia(a, p);
        Elem pa = seq(from_test(p), a);
        if (!elem_eq(pa, seq(pa, from_test(q0)))) {
          ok = false;
          w = "a=" + show_elem(*this, a) + " p=" + show_test(*this, p);
          return;
        }
        for (const auto &q : tests)
          if (elem_eq(pa, seq(pa, from_test(q))) && !test_leq(q0, q)) {
            ok = false;
            w = "a=" + show_elem(*this, a) + " p=" + show_test(*this, p) +
                " q=" + show_test(*this, q);
            return;
          }
      };
      if (bd_pairs_exh) {
        for (const auto &a : elems) {
          for (const auto &p : tests) {
            chk(a, p);
            if (!ok)
              break;
          }
          if (!ok)
            break;
        }
      } else
        for (std::size_t i = 0; i < samples && ok; ++i)
          chk(pick(elems), pick(tests));
      Checker c{*this, rep, bd_pairs_exh};
      c.record("bd1-least-test", ok, w);
    }
    {
      bool ok = true;
      std::string w;
      auto chk = [&](const Elem &a, const Elem &b, const TestSet &p) {
        if (bdia(seq(a, b), p) != bdia(b, bdia(a, p))) {
          ok = false;
          w = wit2(a, b) + " p=" + show_test(*this, p);
        }
      };
      if (pairs_exh) {
        for (const auto &a : elems)
          for (const auto &b : elems) {
            for (const auto &p : tests) {
              chk(a, b, p);
              if (!ok)
                break;
            }
            if (!ok)
              break;
          }
      } else
        for (std::size_t i = 0; i < samples && ok; ++i)
          chk(pick(elems), pick(elems), pick(tests));
      pr.record("bd2-composition", ok, w);
    }
    {
      // derived diamond equations: additivity, isotony, tests, star
      bool ok = true;
      std::string w;
      auto fail = [&](const std::string &eq, const std::string &detail) {
        ok = false;
        w = eq + ": " + detail;
      };
      auto chk_ab = [&](const Elem &a, const Elem &b, const TestSet &p) {
        if (!ok)
          return;
        if (bdia(plus(a, b), p) != test_join(bdia(a, p), bdia(b, p)))
          fail("add-in-element", wit2(a, b) + " p=" + show_test(*this, p));
        else if (elem_leq(a, b) && !test_leq(bdia(a, p), bdia(b, p)))
          fail("isotone-in-element", wit2(a, b) + " p=" + show_test(*this, p));
      };
      auto chk_apq = [&](const Elem &a, const TestSet &p, const TestSet &q) {
        if (!ok)
          return;
        if (bdia(a, test_join(p, q)) != test_join(bdia(a, p), bdia(a, q)))
          fail("add-in-test", "a=" + show_elem(*this, a) + " p=" +
                                  show_test(*this, p) + " q=" + show_test(*this, q));
        else if (test_leq(p, q) && !test_leq(bdia(a, p), bdia(a, q)))
          fail("isotone-in-test", "a=" + show_elem(*this, a) + " p=" +
                                      show_test(*this, p) + " q=" + show_test(*this, q));
      };
      auto chk_star = [&](const Elem &a, const TestSet &p) {
        if (!ok)
          return;
        Elem sa = star_closure(a);
        TestSet sp = bdia(sa, p);
        if (!test_leq(test_join(p, bdia(a, sp)), sp))
          fail("star-unfold", "a=" + show_elem(*this, a) + " p=" + show_test(*this, p));
        // finite join of iterated diamonds reaches the star diamond
        TestSet acc = p, cur = p;
        for (std::size_t i = 0; i <= universe_size() + 1 && acc != sp; ++i) {
          cur = bdia(a, cur);
          acc = test_join(acc, cur);
        }
        if (acc != sp)
          fail("star-join", "a=" + show_elem(*this, a) + " p=" + show_test(*this, p));
      };
      for (const auto &p : tests)
        for (const auto &s : tests)
          if (bdia(from_test(s), p) != test_meet(p, s))
            fail("test-diamond", "p=" + show_test(*this, p) + " s=" + show_test(*this, s));
      if (pairs_exh) {
        for (const auto &a : elems)
          for (const auto &b : elems)
            for (const auto &p : tests)
              chk_ab(a, b, p);
        for (const auto &a : elems)
          for (const auto &p : tests)
            for (const auto &q : tests)
              chk_apq(a, p, q);
        for (const auto &a : elems)
          for (const auto &p : tests)
            chk_star(a, p);
      } else {
        for (std::size_t i = 0; i < samples && ok; ++i) {
          chk_ab(pick(elems), pick(elems), pick(tests));
          chk_apq(pick(elems), pick(tests), pick(tests));
          chk_star(pick(elems), pick(tests));
        }
      }
      pr.record("diamond-equations", ok, w);
    }
  }

  return rep;
}

AxiomReport Model::check_extensionality() const {
  if (kind_ != ModelKind::RelationalFull)
    throw SemanticError("extensionality check needs a relational model");
  if (n_ > 4)
    throw SemanticError("extensionality check enumerates carriers up to 4");
  AxiomReport rep;
  bool ok = true;
  std::string w;
  std::size_t cells = static_cast<std::size_t>(n_) * n_;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells) && ok; ++mask) {
    Elem a{Elem::Kind::Rel, std::vector<TestSet>(n_, TestSet(n_)), {}, -1};
    for (std::size_t c = 0; c < cells; ++c)
      if (mask & (std::size_t{1} << c))
        a.rel[c / n_].set(c % n_);
    // the diamond on singletons must reconstruct the relation exactly
    Elem back{Elem::Kind::Rel, std::vector<TestSet>(n_, TestSet(n_)), {}, -1};
    for (int x = 0; x < n_; ++x) {
      TestSet sing(n_);
      sing.set(x);
      back.rel[x] = bdia(a, sing);
    }
    if (!elem_eq(a, back)) {
      ok = false;
      w = "a=" + show_elem(*this, a);
    }
  }
  rep.results.push_back({"diamond-extensionality", ok, true, w});
  return rep;
}

} // namespace katlcl
