// Term semantics over a model: strongest-postcondition transformers built
// from the backward diamond, the ok/err pair variant with short-circuiting
// composition, their abstract counterparts over a Galois insertion, the
// TopKAT codomain transformers, and an independent relational oracle that
// materializes interpretations instead of iterating transformers.
#pragma once

#include <map>
#include <set>

#include "katlcl/domain.hpp"
#include "katlcl/model.hpp"
#include "katlcl/term.hpp"

namespace katlcl {

// Atom evaluation: ok and err interpretation per atom name. Primitive tests
// evaluate to (test, 0).
class Evaluation {
public:
  void define(AtomKind kind, const std::string &name, Elem ok, Elem err) {
    atoms_[name] = {std::move(ok), std::move(err)};
    (kind == AtomKind::Action ? sigma_ : b_).insert(name);
  }
  const std::pair<Elem, Elem> &lookup(const Atom &a) const {
    auto it = atoms_.find(a.name);
    if (it == atoms_.end())
      throw SemanticError("atom '" + a.name + "' has no evaluation");
    return it->second;
  }
  Atom resolve(const std::string &name) const {
    if (sigma_.count(name))
      return {AtomKind::Action, name};
    if (b_.count(name))
      return {AtomKind::PrimTest, name};
    throw SemanticError("unknown atom '" + name + "'");
  }
  bool has(const std::string &name) const { return atoms_.count(name) != 0; }
  const std::set<std::string> &actions() const { return sigma_; }
  const std::set<std::string> &tests() const { return b_; }

private:
  std::map<std::string, std::pair<Elem, Elem>> atoms_;
  std::set<std::string> sigma_, b_;
};

struct PostPair {
  TestSet ok;
  TestSet err;
};

// --- concrete transformers (test lattice) -----------------------------------

TestSet post_ok(const Model &m, const Evaluation &u, const TermPtr &t,
                const TestSet &p);
TestSet post_err(const Model &m, const Evaluation &u, const TermPtr &t,
                 const TestSet &p);
PostPair post_pair(const Model &m, const Evaluation &u, const TermPtr &t,
                   const TestSet &p);

// --- abstract transformers ---------------------------------------------------

AbsId apost_ok(const GaloisInsertion &d, const Model &m, const Evaluation &u,
               const TermPtr &t, AbsId p);
AbsId apost_err(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                const TermPtr &t, AbsId p);
std::pair<AbsId, AbsId> apost_pair(const GaloisInsertion &d, const Model &m,
                                   const Evaluation &u, const TermPtr &t,
                                   AbsId p);

// --- TopKAT codomain transformers -------------------------------------------

// cod of T.x.[t]ok where c represents T.x; the err variant tracks the pair
// interpretation.
TestSet top_post(const Model &m, const Evaluation &u, const TermPtr &t,
                 const TestSet &c);
TestSet top_post_err(const Model &m, const Evaluation &u, const TermPtr &t,
                     const TestSet &c);

AbsId atop_post(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                const TermPtr &t, AbsId c);
AbsId atop_post_err(const GaloisInsertion &d, const Model &m,
                    const Evaluation &u, const TermPtr &t, AbsId c);

// --- relational oracle --------------------------------------------------------

// Materializes the ok/err interpretation of t (star via transitive closure)
// and reads both posts off the relations directly. Kept free of the
// transformer recursion above so the two can check each other.
PostPair oracle_post(const Model &m, const Evaluation &u, const TermPtr &t,
                     const TestSet &p);

// --- local / global completeness ----------------------------------------------

// Which transformer a completeness query is about.
struct TransformerRef {
  enum class Kind { AtomOk, AtomErr, TermOk } kind;
  Atom atom;   // AtomOk / AtomErr
  TermPtr term; // TermOk

  static TransformerRef atom_ok(Atom a) {
    return {Kind::AtomOk, std::move(a), nullptr};
  }
  static TransformerRef atom_err(Atom a) {
    return {Kind::AtomErr, std::move(a), nullptr};
  }
  static TransformerRef term_ok(TermPtr t) {
    return {Kind::TermOk, {}, std::move(t)};
  }
};

struct CompletenessResult {
  bool complete;
  TestSet lhs; // A(f(p))
  TestSet rhs; // A(f(A(p)))
  TestSet witness_input;
};

// A(f(p)) = A(f(A(p))) for the given transformer; for ToppCodomains domains f
// acts on codomain representatives.
CompletenessResult local_complete(const GaloisInsertion &d, const Model &m,
                                  const Evaluation &u, const TransformerRef &f,
                                  const TestSet &p);

// Local completeness at every element of the concrete lattice (enumerated; at
// most 2^20 elements). Returns the first failing input as witness.
CompletenessResult global_complete(const GaloisInsertion &d, const Model &m,
                                   const Evaluation &u, const TransformerRef &f);

// Fixpoint iteration bound for star transformers; exceeded only by a broken
// lattice, reported as SemanticError.
std::size_t star_bound(const Model &m);

} // namespace katlcl
