// Finite KAT / bdKAT / TopKAT models.
//
// Three carriers are supported:
//   RelationalFull     binary relations on an integer interval, with the full
//                      powerset of sub-identities as tests (bit-matrix backed)
//   GuardedStringTests the language-theoretic model: only tests (sets of
//                      truth-assignment atoms) are materialized, composite
//                      elements exist solely through their diamond action
//   ExplicitTable      a finite carrier with explicit +/./* tables (A3 etc.)
//
// Tests are stored as their support: a bitset over the carrier for relational
// models, over the assignment atoms for guarded strings, and a one-hot element
// bitset for tables. TopKAT codomains reuse the same representation.
#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "katlcl/term.hpp"

namespace katlcl {

using TestSet = boost::dynamic_bitset<>;

enum class ModelKind { RelationalFull, GuardedStringTests, ExplicitTable };

// One element of a model. Which fields are live depends on `kind`.
struct Elem {
  enum class Kind { Rel, TestVal, GsAction, TableId };
  Kind kind;
  std::vector<TestSet> rel; // Rel: rel[x] = successor set of carrier point x
  TestSet test;             // TestVal: a test acting as an element
  int id = -1;              // GsAction: action index; TableId: element index

  friend bool operator==(const Elem &, const Elem &);
};

struct AxiomResult {
  std::string family;   // e.g. "plus-commutative", "bd2", "diamond-eq3"
  bool pass;
  bool exhaustive;      // false when randomized sampling was used
  std::string witness;  // first counterexample, empty when pass
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool sampled = false; // at least one family fell back to sampling
  bool all_pass() const {
    for (const auto &r : results)
      if (!r.pass)
        return false;
    return true;
  }
};

class Model {
public:
  // Relations on {lo..hi}, all sub-identities as tests, top = X x X.
  // Carrier size is capped at 64.
  static Model relational(int lo, int hi);
  // Guarded-string tests over primitive tests `b` (at most 16 of them).
  static Model guarded_strings(std::vector<std::string> b);
  // Conway's three-element Kleene algebra {0,1,a} lifted to a TopKAT.
  static Model a3();
  // General explicit table. `tests` lists the element ids forming the Boolean
  // sublattice, `star`/`plus`/`seq` are full tables, `neg` complements tests.
  static Model table(std::vector<std::string> names, std::vector<int> tests,
                     std::vector<std::vector<int>> plus,
                     std::vector<std::vector<int>> seq, std::vector<int> star,
                     std::vector<int> neg, int zero, int one,
                     std::optional<int> top);

  ModelKind kind() const { return kind_; }
  int carrier_lo() const { return lo_; }
  int carrier_hi() const { return hi_; }
  int carrier_size() const { return n_; }
  // Size of the test-support universe (carrier points / gs atoms / elements).
  std::size_t universe_size() const;
  const std::vector<std::string> &gs_tests() const { return gs_names_; }
  const std::vector<std::string> &table_names() const { return names_; }

  // --- test lattice -------------------------------------------------------
  TestSet test_zero() const;
  TestSet test_one() const;
  TestSet test_join(const TestSet &p, const TestSet &q) const;
  TestSet test_meet(const TestSet &p, const TestSet &q) const;
  TestSet test_not(const TestSet &p) const;
  bool test_leq(const TestSet &p, const TestSet &q) const;
  bool is_test(const TestSet &p) const;
  // Height of the test lattice (longest strictly increasing chain length).
  std::size_t test_lattice_height() const;
  // All tests, in a deterministic order. Throws when there are more than
  // `limit` of them.
  std::vector<TestSet> all_tests(std::size_t limit = (1u << 20)) const;
  std::size_t test_count_log2() const;

  // --- elements -----------------------------------------------------------
  Elem zero_elem() const;
  Elem one_elem() const;
  Elem from_test(const TestSet &p) const;
  std::optional<Elem> top_elem() const;
  Elem plus(const Elem &a, const Elem &b) const;
  Elem seq(const Elem &a, const Elem &b) const;
  // Least fixpoint of x -> 1 + a.x; reflexive-transitive closure for
  // relations. GuardedStringTests composites cannot be materialized.
  Elem star_closure(const Elem &a) const;
  bool elem_eq(const Elem &a, const Elem &b) const;
  bool elem_leq(const Elem &a, const Elem &b) const;

  // Backward diamond <a]p: the least test q with pa = paq.
  TestSet bdia(const Elem &a, const TestSet &p) const;

  // --- TopKAT codomain view ------------------------------------------------
  bool has_top() const;
  // Representation of T.a: relational models report cod(a) as a carrier
  // subset, tables report the one-hot element T.a.
  TestSet top_mul(const Elem &a) const;
  TestSet topp_bottom() const;
  TestSet topp_top() const;
  TestSet topp_join(const TestSet &c, const TestSet &d) const;
  bool topp_leq(const TestSet &c, const TestSet &d) const;
  bool is_topp(const TestSet &c) const;
  std::vector<TestSet> all_topp(std::size_t limit = (1u << 20)) const;
  // cod of (T.x).a where c represents T.x.
  TestSet top_step(const TestSet &c, const Elem &a) const;
  // Exhaustive search for a test q with T.q equal to the topp element `c`
  // (ExplicitTable only).
  std::optional<TestSet> top_representable_as_test(const TestSet &c) const;

  // --- helpers -------------------------------------------------------------
  int point_index(int z) const;       // relational: carrier value -> bit index
  int point_value(std::size_t i) const;
  int gs_atom_count() const;          // 2^|B|
  TestSet gs_prim_test(int i) const;  // atoms where b_{i+1} appears positively
  int table_id_of(const TestSet &one_hot) const;
  TestSet table_one_hot(int id) const;

  // --- axiom suites ---------------------------------------------------------
  // Checks i-semiring, Boolean-subalgebra, star and diamond axioms, and the
  // derived diamond equations. Relational models with carriers above
  // `exhaustive_carrier_max` points fall back to `samples` random (a,b,p,q)
  // draws per family, flagged in the report.
  AxiomReport check_kat_axioms(std::uint64_t seed = 0x5eed,
                               std::size_t samples = 10000,
                               int exhaustive_carrier_max = 3) const;
  // Confirms that distinct relations are separated by their diamond on
  // singleton tests (RelationalFull, carrier <= 4).
  AxiomReport check_extensionality() const;

private:
  Model() = default;

  ModelKind kind_ = ModelKind::RelationalFull;
  int lo_ = 0, hi_ = 0, n_ = 0;        // relational carrier
  std::vector<std::string> gs_names_;  // guarded strings: primitive test names
  int gs_atoms_ = 0;

  // explicit table data
  std::vector<std::string> names_;
  std::vector<int> test_ids_;
  std::vector<std::vector<int>> plus_, seq_;
  std::vector<int> star_, neg_;
  int zero_id_ = -1, one_id_ = -1;
  std::optional<int> top_id_;
};

// Rendering used by reports and witnesses (not the CLI literal syntax).
std::string show_test(const Model &m, const TestSet &p);
std::string show_elem(const Model &m, const Elem &a);

} // namespace katlcl
