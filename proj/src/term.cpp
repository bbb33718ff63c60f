#include "katlcl/term.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace katlcl {

TermPtr Term::mk_atom(Atom a) {
  auto t = std::make_shared<Term>();
  t->node = TermNode::Atom;
  t->atom = std::move(a);
  return t;
}

TermPtr Term::mk_zero() {
  auto t = std::make_shared<Term>();
  t->node = TermNode::Zero;
  return t;
}

TermPtr Term::mk_one() {
  auto t = std::make_shared<Term>();
  t->node = TermNode::One;
  return t;
}

TermPtr Term::mk_plus(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->node = TermNode::Plus;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

TermPtr Term::mk_seq(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->node = TermNode::Seq;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

TermPtr Term::mk_star(TermPtr t0) {
  auto t = std::make_shared<Term>();
  t->node = TermNode::Star;
  t->left = std::move(t0);
  return t;
}

bool term_eq(const TermPtr &a, const TermPtr &b) {
  if (a.get() == b.get())
    return true;
  if (!a || !b || a->node != b->node)
    return false;
  switch (a->node) {
  case TermNode::Atom:
    return a->atom == b->atom;
  case TermNode::Zero:
  case TermNode::One:
    return true;
  case TermNode::Star:
    return term_eq(a->left, b->left);
  case TermNode::Plus:
  case TermNode::Seq:
    return term_eq(a->left, b->left) && term_eq(a->right, b->right);
  }
  return false;
}

std::size_t term_size(const TermPtr &t) {
  if (!t)
    return 0;
  switch (t->node) {
  case TermNode::Atom:
  case TermNode::Zero:
  case TermNode::One:
    return 1;
  case TermNode::Star:
    return 1 + term_size(t->left);
  default:
    return 1 + term_size(t->left) + term_size(t->right);
  }
}

namespace {

struct Lexer {
  const std::string &src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
};

struct Parser {
  Lexer lx;
  const std::set<std::string> &sigma;
  const std::set<std::string> &b;

  TermPtr parse() {
    TermPtr t = plus_expr();
    if (!lx.eof())
      throw ParseError("trailing input after term", lx.pos);
    return t;
  }

  TermPtr plus_expr() {
    TermPtr t = seq_expr();
    while (lx.peek() == '+') {
      ++lx.pos;
      t = Term::mk_plus(std::move(t), seq_expr());
    }
    return t;
  }

  TermPtr seq_expr() {
    TermPtr t = star_expr();
    while (lx.peek() == ';') {
      ++lx.pos;
      t = Term::mk_seq(std::move(t), star_expr());
    }
    return t;
  }

  TermPtr star_expr() {
    TermPtr t = primary();
    while (lx.peek() == '*') {
      ++lx.pos;
      t = Term::mk_star(std::move(t));
    }
    return t;
  }

  TermPtr primary() {
    char c = lx.peek();
    if (c == '\0')
      throw ParseError("unexpected end of term", lx.pos);
    if (c == '(') {
      ++lx.pos;
      TermPtr t = plus_expr();
      if (lx.peek() != ')')
        throw ParseError("expected ')'", lx.pos);
      ++lx.pos;
      return t;
    }
    if (c == '0') {
      ++lx.pos;
      return Term::mk_zero();
    }
    if (c == '1') {
      ++lx.pos;
      return Term::mk_one();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = lx.pos;
      std::string name;
      while (lx.pos < lx.src.size()) {
        char d = lx.src[lx.pos];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
          name += d;
          ++lx.pos;
        } else
          break;
      }
      if (sigma.count(name))
        return Term::mk_atom(Atom{AtomKind::Action, name});
      if (b.count(name))
        return Term::mk_atom(Atom{AtomKind::PrimTest, name});
      throw SemanticError("unknown atom '" + name + "' at position " +
                          std::to_string(start));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", lx.pos);
  }
};

// Precedence levels for printing: + lowest, ; middle, * highest.
int prec(TermNode n) {
  switch (n) {
  case TermNode::Plus:
    return 0;
  case TermNode::Seq:
    return 1;
  default:
    return 2;
  }
}

void print(const TermPtr &t, int parent_prec, std::ostringstream &out) {
  int p = prec(t->node);
  bool paren = p < parent_prec;
  if (paren)
    out << "(";
  switch (t->node) {
  case TermNode::Atom:
    out << t->atom.name;
    break;
  case TermNode::Zero:
    out << "0";
    break;
  case TermNode::One:
    out << "1";
    break;
  case TermNode::Plus:
    print(t->left, 0, out);
    out << " + ";
    print(t->right, 1, out); // left associative: right child binds tighter
    break;
  case TermNode::Seq:
    print(t->left, 1, out);
    out << " ; ";
    print(t->right, 2, out);
    break;
  case TermNode::Star:
    print(t->left, 2, out); // parenthesize + and ; operands
    out << "*";
    break;
  }
  if (paren)
    out << ")";
}

void collect_atoms(const TermPtr &t, std::set<Atom> &out) {
  switch (t->node) {
  case TermNode::Atom:
    out.insert(t->atom);
    break;
  case TermNode::Zero:
  case TermNode::One:
    break;
  case TermNode::Star:
    collect_atoms(t->left, out);
    break;
  default:
    collect_atoms(t->left, out);
    collect_atoms(t->right, out);
  }
}

} // namespace

TermPtr parse_term(const std::string &src, const std::set<std::string> &sigma,
                   const std::set<std::string> &b) {
  for (const auto &n : sigma)
    if (b.count(n))
      throw SemanticError("action and test alphabets overlap on '" + n + "'");
  Parser p{Lexer{src}, sigma, b};
  return p.parse();
}

std::set<Atom> atoms_of(const TermPtr &t) {
  std::set<Atom> out;
  collect_atoms(t, out);
  return out;
}

std::string pretty_term(const TermPtr &t) {
  std::ostringstream out;
  print(t, 0, out);
  return out.str();
}

} // namespace katlcl
