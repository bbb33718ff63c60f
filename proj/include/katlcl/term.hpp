// KAT term language: primitive actions/tests, the regular-operator AST,
// parser and printer for the concrete syntax  t := atom | 0 | 1 | t+t | t;t | t*
#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace katlcl {

// Raised on malformed concrete syntax; `pos` is a 0-based offset into the input.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg)), pos(pos) {}
  std::size_t pos;
};

// Raised when an input is well-formed but names something the model/alphabet
// does not have (unknown atom, literal outside the carrier, ...).
class SemanticError : public std::runtime_error {
public:
  explicit SemanticError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

enum class AtomKind { Action, PrimTest };

// A named primitive. Action and PrimTest namespaces are disjoint; "0" and "1"
// are reserved and never appear as atom names (they parse to Zero/One).
struct Atom {
  AtomKind kind;
  std::string name;

  friend bool operator==(const Atom &a, const Atom &b) {
    return a.kind == b.kind && a.name == b.name;
  }
  friend auto operator<=>(const Atom &a, const Atom &b) = default;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermNode { Atom, Zero, One, Plus, Seq, Star };

// Immutable term tree. Plus/Seq use both children, Star uses `left` only.
struct Term {
  TermNode node;
  Atom atom;          // TermNode::Atom only
  TermPtr left, right;

  static TermPtr mk_atom(Atom a);
  static TermPtr mk_zero();
  static TermPtr mk_one();
  static TermPtr mk_plus(TermPtr l, TermPtr r);
  static TermPtr mk_seq(TermPtr l, TermPtr r);
  static TermPtr mk_star(TermPtr t);
};

bool term_eq(const TermPtr &a, const TermPtr &b);
std::size_t term_size(const TermPtr &t);

// Parses `src` against the declared alphabets. Precedence * > ; > +, both
// binary operators left associative. Unknown identifiers raise SemanticError.
TermPtr parse_term(const std::string &src, const std::set<std::string> &sigma,
                   const std::set<std::string> &b);

// All atom leaves of `t` (Zero/One excluded).
std::set<Atom> atoms_of(const TermPtr &t);

// Minimal-parentheses rendering; parse_term(pretty_term(t)) == t.
std::string pretty_term(const TermPtr &t);

} // namespace katlcl
