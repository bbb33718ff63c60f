// File formats and literal syntax.
//
// Model files (line oriented, '#' comments):
//   model relational            | model guarded-strings b1 b2 | model a3
//   carrier 0 11                  (relational only)
//   action NAME ok GEN [err GEN]
//   test NAME ok GEN
// with generators: succ | empty | full | ge K | lt K | pairs (x,y)(x,y)...
// (a3 uses element names 0/1/a instead of generators; guarded-string actions
// take no generator, their evaluation is fixed by the model).
//
// Domain files:
//   domain trivial|parity|sign|interval
//   domain table
//   elem NAME gamma LITERAL
//   order NAME <= NAME
//
// Test literals: relational {0,2,10} or {0..11}; guarded strings {++,--};
// explicit tables {name}; topp codomains top{...}.
//
// Triples: "[PRE] TERM [Q]", "[PRE] TERM [ok: Q][err: R]", single-component
// "[PRE] TERM [err: R]".
//
// Derivations are s-expressions; see the README for the rule arguments.
#pragma once

#include <filesystem>

#include "katlcl/logic.hpp"

namespace katlcl {

struct LoadedModel {
  Model model = Model::relational(0, 0);
  Evaluation eval;
  std::set<std::string> sigma;
  std::set<std::string> b;
};

LoadedModel load_model_file(const std::filesystem::path &file);
LoadedModel load_model_text(const std::string &text, const std::string &origin);

GaloisInsertion load_domain_file(const std::filesystem::path &file,
                                 const Model &m, ConcreteKind kind);
GaloisInsertion load_domain_text(const std::string &text, const Model &m,
                                 ConcreteKind kind, const std::string &origin);

// Literals. `kind` decides between the test lattice and topp codomains;
// "top{...}" forces the latter and is required for codomains on table models.
TestSet parse_literal(const Model &m, ConcreteKind kind, const std::string &s);
std::string print_literal(const Model &m, ConcreteKind kind, const TestSet &p);

Triple parse_triple(const LoadedModel &lm, System sys, const std::string &s);

Derivation parse_derivation_text(const LoadedModel &lm, System sys,
                                 const std::string &text);
Derivation parse_derivation_file(const LoadedModel &lm, System sys,
                                 const std::filesystem::path &file);
std::string print_derivation(const Model &m, System sys, const Derivation &d);

} // namespace katlcl
