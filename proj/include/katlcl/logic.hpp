// Triple validity and derivation checking for the six proof systems:
//
//   LCK    local completeness logic over the test lattice
//   UL     under-approximation logic (trivial abstraction, single post)
//   LCIL   local completeness incorrectness logic (ok/err pairs)
//   IL     incorrectness logic (trivial abstraction, ok/err pairs)
//   LCTK   local completeness logic over TopKAT codomains
//   LCTIL  its ok/err pair variant
//
// Derivations carry rules and side data only; node conclusions are always
// recomputed bottom-up, never trusted from input. Synthesis follows the
// constructive completeness argument: transfer at the leaves, join/seq
// through canonical intermediate posts, star through a stabilized chain
// discharged by the limit rule, and a final relax onto the requested post.
#pragma once

#include <optional>

#include "katlcl/semantics.hpp"

namespace katlcl {

enum class System { LCK, UL, LCIL, IL, LCTK, LCTIL };

System system_from_name(const std::string &s);
std::string system_name(System s);
bool system_has_pairs(System s);   // LCIL / IL / LCTIL
bool system_on_topp(System s);     // LCTK / LCTIL
bool system_abstractionless(System s); // UL / IL: trivial abstraction built in

enum class Eps { Ok, Err, Both };

// A judgment. Single-post systems populate `ok` only. For pair systems the
// present components define the judgment's shape ([ok: q], [err: r] or both).
struct Triple {
  System system;
  TestSet pre;
  TermPtr term;
  std::optional<TestSet> ok;
  std::optional<TestSet> err;
};

struct Failure {
  std::string condition; // which side condition or validity clause broke
  std::string detail;    // pretty-printed witness values
  std::string path;      // node path for derivation checks, e.g. "root.1.0"
};

enum class VerdictStatus { Valid, Invalid, Accepted, Rejected };

struct Verdict {
  VerdictStatus status;
  std::vector<Failure> failures;
  bool ok() const {
    return status == VerdictStatus::Valid || status == VerdictStatus::Accepted;
  }
};

// Rule-labelled proof tree. Side data fields are rule specific; conclusions
// are filled in by verify/synthesize.
struct Derivation {
  std::string rule;
  std::vector<Derivation> children;

  std::string atom;                 // transfer
  TermPtr side_term;                // empty / iterate-zero / choice / short-circuit
  int choice_pos = 1;               // choice: position of the proved branch
  std::optional<TestSet> side_pre;  // transfer / empty / iterate-zero / relax
  std::optional<TestSet> relax_ok;  // relax / consequence targets
  std::optional<TestSet> relax_err;
  std::vector<TestSet> chain;       // limit / back-v: p0..pN
  std::optional<Eps> eps;           // empty and friends in pair systems

  Triple conclusion; // output of verify/synthesize
};

// --- validity ----------------------------------------------------------------

Verdict valid_triple(const GaloisInsertion &d, const Model &m,
                     const Evaluation &u, const Triple &tr);

// Named entry points; all dispatch through valid_triple.
Verdict valid_lck(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                  const Triple &tr);
Verdict valid_il(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                 const Triple &tr);
Verdict valid_lctk(const GaloisInsertion &d, const Model &m,
                   const Evaluation &u, const Triple &tr);

// --- derivation checking -------------------------------------------------------

// Recomputes all conclusions and checks every rule's premises and side
// conditions. On success the tree's `conclusion` fields are filled in.
Verdict verify(System sys, const GaloisInsertion &d, const Model &m,
               const Evaluation &u, Derivation &deriv);

// --- synthesis -----------------------------------------------------------------

struct SynthError : std::runtime_error {
  enum class Kind { InvalidTriple, IncompleteAtom, StabilizationBound };
  SynthError(Kind k, std::string msg, Verdict v = {VerdictStatus::Invalid, {}},
             std::string atom = {}, std::string witness = {})
      : std::runtime_error(std::move(msg)), kind(k), verdict(std::move(v)),
        atom(std::move(atom)), witness(std::move(witness)) {}
  Kind kind;
  Verdict verdict;     // InvalidTriple
  std::string atom;    // IncompleteAtom
  std::string witness; // IncompleteAtom: failing concrete input
};

// Builds the canonical derivation of a valid triple whose atoms are globally
// complete; the result passes verify.
Derivation synthesize(System sys, const GaloisInsertion &d, const Model &m,
                      const Evaluation &u, const Triple &tr);

// --- translations ----------------------------------------------------------------

enum class Direction { Forward, Backward };

// LCK (trivial domain) <-> UL. Forward maps rules along the standard
// correspondence (join becomes choice/choice/disj); backward re-synthesizes
// from the verified conclusion.
Derivation translate_lck_ul(const GaloisInsertion &d, const Model &m,
                            const Evaluation &u, const Derivation &deriv,
                            Direction dir);
// LCIL (trivial domain) <-> IL, same approach; seq-err and rec-err expand to
// their IL encodings.
Derivation translate_lcil_il(const GaloisInsertion &d, const Model &m,
                             const Evaluation &u, const Derivation &deriv,
                             Direction dir);

// Rendering helpers shared by the CLI and reports.
std::string show_triple(const Model &m, const Triple &tr);

} // namespace katlcl
