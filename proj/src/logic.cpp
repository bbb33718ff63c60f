#include "katlcl/logic.hpp"

#include <algorithm>
#include <sstream>

namespace katlcl {

System system_from_name(const std::string &s) {
  if (s == "lck")
    return System::LCK;
  if (s == "ul")
    return System::UL;
  if (s == "lcil")
    return System::LCIL;
  if (s == "il")
    return System::IL;
  if (s == "lctk")
    return System::LCTK;
  if (s == "lctil")
    return System::LCTIL;
  throw SemanticError("unknown system '" + s + "'");
}

std::string system_name(System s) {
  switch (s) {
  case System::LCK:
    return "lck";
  case System::UL:
    return "ul";
  case System::LCIL:
    return "lcil";
  case System::IL:
    return "il";
  case System::LCTK:
    return "lctk";
  case System::LCTIL:
    return "lctil";
  }
  return "?";
}

bool system_has_pairs(System s) {
  return s == System::LCIL || s == System::IL || s == System::LCTIL;
}

bool system_on_topp(System s) {
  return s == System::LCTK || s == System::LCTIL;
}

bool system_abstractionless(System s) {
  return s == System::UL || s == System::IL;
}

std::string show_triple(const Model &m, const Triple &tr) {
  std::string pre = system_on_topp(tr.system) ? "top" : "";
  auto show = [&](const TestSet &v) { return pre + show_test(m, v); };
  std::ostringstream out;
  out << "[" << show(tr.pre) << "] " << pretty_term(tr.term) << " ";
  if (tr.ok && tr.err)
    out << "[ok: " << show(*tr.ok) << "][err: " << show(*tr.err) << "]";
  else if (tr.ok && system_has_pairs(tr.system))
    out << "[ok: " << show(*tr.ok) << "]";
  else if (tr.ok)
    out << "[" << show(*tr.ok) << "]";
  else if (tr.err)
    out << "[err: " << show(*tr.err) << "]";
  return out.str();
}

namespace {

// Per-system dispatch over the two concrete lattices (tests vs codomains).
struct Ctx {
  System sys;
  const GaloisInsertion &d;
  const Model &m;
  const Evaluation &u;

  bool topp() const { return system_on_topp(sys); }
  bool pairs() const { return system_has_pairs(sys); }
  bool lc() const { return !system_abstractionless(sys); }

  void check_domain() const {
    if (!lc())
      return; // UL/IL never consult the abstraction
    ConcreteKind want =
        topp() ? ConcreteKind::ToppCodomains : ConcreteKind::Tests;
    if (d.concrete_kind() != want)
      throw SemanticError("domain's concrete kind does not match the system");
    if (&d.model() != &m)
      throw SemanticError("domain was built over a different model");
  }

  bool is_conc(const TestSet &p) const {
    return topp() ? m.is_topp(p) : m.is_test(p);
  }
  TestSet cjoin(const TestSet &p, const TestSet &q) const {
    return topp() ? m.topp_join(p, q) : m.test_join(p, q);
  }
  bool cleq(const TestSet &p, const TestSet &q) const {
    return topp() ? m.topp_leq(p, q) : m.test_leq(p, q);
  }
  TestSet cpost_ok(const TermPtr &t, const TestSet &p) const {
    return topp() ? top_post(m, u, t, p) : post_ok(m, u, t, p);
  }
  TestSet cpost_err(const TermPtr &t, const TestSet &p) const {
    return topp() ? top_post_err(m, u, t, p) : post_err(m, u, t, p);
  }
  AbsId aok(const TermPtr &t, AbsId p) const {
    return topp() ? atop_post(d, m, u, t, p) : apost_ok(d, m, u, t, p);
  }
  AbsId aerr(const TermPtr &t, AbsId p) const {
    return topp() ? atop_post_err(d, m, u, t, p) : apost_err(d, m, u, t, p);
  }

  TermPtr atom_term(const std::string &name) const {
    if (name == "0")
      return Term::mk_zero();
    if (name == "1")
      return Term::mk_one();
    return Term::mk_atom(u.resolve(name));
  }

  // local completeness side condition of a transfer leaf
  CompletenessResult transfer_complete(const std::string &name,
                                       const TestSet &p, bool err) const {
    if (name == "0" || name == "1") {
      TransformerRef f = TransformerRef::term_ok(atom_term(name));
      if (err) // err transformer of a literal is constantly 0
        f = TransformerRef::term_ok(Term::mk_zero());
      return local_complete(d, m, u, f, p);
    }
    Atom a = u.resolve(name);
    return local_complete(
        d, m, u, err ? TransformerRef::atom_err(a) : TransformerRef::atom_ok(a),
        p);
  }
};

std::optional<TestSet> comp(const Triple &t, Eps e) {
  return e == Eps::Ok ? t.ok : t.err;
}

std::string canon_rule(System sys, const std::string &rule) {
  if (rule == "choice" &&
      (sys == System::LCK || sys == System::LCIL || sys == System::LCTK ||
       sys == System::LCTIL))
    return "join"; // the pair-system examples label their joins "choice"
  if (rule == "back-v")
    return "limit";
  return rule;
}

bool rule_in_system(System sys, const std::string &r) {
  auto in = [&](std::initializer_list<const char *> rs) {
    return std::find_if(rs.begin(), rs.end(), [&](const char *x) {
             return r == x;
           }) != rs.end();
  };
  switch (sys) {
  case System::LCK:
  case System::LCTK:
    return in({"transfer", "relax", "seq", "join", "rec", "iterate", "limit"});
  case System::UL:
    return in({"transfer", "empty", "consequence", "disj", "seq",
               "iterate-zero", "iterate-nonzero", "limit", "choice"});
  case System::LCIL:
  case System::LCTIL:
    return in({"transfer", "relax", "seq-ok", "seq-err", "rec-err", "join",
               "limit", "pair"});
  case System::IL:
    return in({"transfer", "empty", "consequence", "disj", "short-circuit",
               "seq-normal", "iterate-zero", "iterate-nonzero", "limit",
               "choice", "pair"});
  }
  return false;
}

struct Checker {
  Ctx c;
  Verdict verdict{VerdictStatus::Accepted, {}};

  bool fail(const std::string &path, const std::string &cond,
            const std::string &detail) {
    verdict.status = VerdictStatus::Rejected;
    verdict.failures.push_back({cond, detail, path});
    return false;
  }

  void need(bool okc, const std::string &what) {
    if (!okc)
      throw SemanticError("malformed derivation: " + what);
  }

  const TestSet &want_conc(const std::optional<TestSet> &v,
                           const std::string &what) {
    need(v.has_value(), "missing " + what);
    if (!c.is_conc(*v))
      throw SemanticError(what + " is not an element of the model's lattice");
    return *v;
  }

  std::string sh(const TestSet &p) { return show_test(c.m, p); }

  // projection of a premise component; extra components on the child are fine
  bool premise(const Derivation &child, Eps e, const std::string &path,
               const std::string &what, TestSet &out) {
    auto v = comp(child.conclusion, e);
    if (!v)
      return fail(path, what,
                  std::string("premise lacks the ") +
                      (e == Eps::Ok ? "ok" : "err") + " component");
    out = *v;
    return true;
  }

  bool check(Derivation &n, const std::string &path) {
    std::string rule = canon_rule(c.sys, n.rule);
    need(rule_in_system(c.sys, rule),
         "rule '" + n.rule + "' does not belong to system " +
             system_name(c.sys));
    for (std::size_t i = 0; i < n.children.size(); ++i)
      if (!check(n.children[i], path + "." + std::to_string(i)))
        return false;

    Triple &tr = n.conclusion;
    tr = Triple{};
    tr.system = c.sys;

    bool okc = dispatch(rule, n, path);
    // an :eps annotation narrows the conclusion to the named components
    if (okc && n.eps && c.pairs()) {
      if (*n.eps == Eps::Ok) {
        need(tr.ok.has_value(), "conclusion lacks the requested ok component");
        tr.err.reset();
      } else if (*n.eps == Eps::Err) {
        need(tr.err.has_value(), "conclusion lacks the requested err component");
        tr.ok.reset();
      } else
        need(tr.ok.has_value() && tr.err.has_value(),
             "conclusion lacks a requested component");
    }
    return okc;
  }

  bool dispatch(const std::string &rule, Derivation &n, const std::string &path) {
    if (rule == "transfer")
      return transfer(n, path);
    if (rule == "relax" || rule == "consequence")
      return relax(n, path, rule == "consequence");
    if (rule == "seq" || rule == "seq-ok" || rule == "seq-normal")
      return seq(n, path, rule);
    if (rule == "join")
      return join(n, path);
    if (rule == "rec")
      return rec(n, path);
    if (rule == "iterate")
      return iterate(n, path);
    if (rule == "limit")
      return limit(n, path);
    if (rule == "empty")
      return empty(n, path);
    if (rule == "disj")
      return disj(n, path);
    if (rule == "iterate-zero")
      return iterate_zero(n, path);
    if (rule == "iterate-nonzero")
      return iterate_nonzero(n, path);
    if (rule == "choice")
      return choice(n, path);
    if (rule == "short-circuit")
      return short_circuit(n, path);
    if (rule == "seq-err")
      return seq_err(n, path);
    if (rule == "rec-err")
      return rec_err(n, path);
    if (rule == "pair")
      return pair(n, path);
    need(false, "rule '" + rule + "' unhandled");
    return false;
  }

  bool transfer(Derivation &n, const std::string &path) {
    need(n.children.empty(), "transfer takes no premises");
    need(!n.atom.empty(), "transfer needs an atom");
    const TestSet &p = want_conc(n.side_pre, "transfer precondition");
    TermPtr t = c.atom_term(n.atom);
    if (c.lc()) {
      CompletenessResult r = c.transfer_complete(n.atom, p, false);
      if (!r.complete)
        return fail(path, "transfer: local completeness (ok)",
                    "atom " + n.atom + " at " + sh(p) + ": A(f(p))=" + sh(r.lhs) +
                        " A(f(A(p)))=" + sh(r.rhs));
      if (c.pairs()) {
        CompletenessResult re = c.transfer_complete(n.atom, p, true);
        if (!re.complete)
          return fail(path, "transfer: local completeness (err)",
                      "atom " + n.atom + " at " + sh(p) + ": A(f(p))=" +
                          sh(re.lhs) + " A(f(A(p)))=" + sh(re.rhs));
      }
    }
    n.conclusion.pre = p;
    n.conclusion.term = t;
    n.conclusion.ok = c.cpost_ok(t, p);
    if (c.pairs())
      n.conclusion.err = c.cpost_err(t, p);
    return true;
  }

  bool relax(Derivation &n, const std::string &path, bool consequence) {
    need(n.children.size() == 1, "relax takes one premise");
    const Triple &ch = n.children[0].conclusion;
    TestSet p = n.side_pre.value_or(ch.pre);
    if (!c.is_conc(p))
      throw SemanticError("relax precondition is not in the model's lattice");
    if (!c.cleq(ch.pre, p))
      return fail(path, "relax: p' <= p",
                  "p'=" + sh(ch.pre) + " p=" + sh(p));
    if (!consequence && !c.cleq(p, c.d.closure(ch.pre)))
      return fail(path, "relax: p <= A(p')",
                  "p=" + sh(p) + " A(p')=" + sh(c.d.closure(ch.pre)));

    auto do_comp = [&](Eps e, const std::optional<TestSet> &target,
                       std::optional<TestSet> &out) -> bool {
      if (!target)
        return true;
      auto have = comp(ch, e);
      if (!have)
        return fail(path, "relax", "premise lacks a relaxed component");
      if (!c.is_conc(*target))
        throw SemanticError("relax target is not in the model's lattice");
      if (!c.cleq(*target, *have))
        return fail(path, "relax: q <= q'",
                    "q=" + sh(*target) + " q'=" + sh(*have));
      if (!consequence && !c.cleq(*have, c.d.closure(*target)))
        return fail(path, "relax: q' <= A(q)",
                    "q'=" + sh(*have) + " A(q)=" + sh(c.d.closure(*target)));
      out = *target;
      return true;
    };

    n.conclusion.pre = p;
    n.conclusion.term = ch.term;
    if (!n.relax_ok && !n.relax_err) { // pre-only relax keeps the posts
      n.conclusion.ok = ch.ok;
      n.conclusion.err = ch.err;
      return true;
    }
    return do_comp(Eps::Ok, n.relax_ok, n.conclusion.ok) &&
           do_comp(Eps::Err, n.relax_err, n.conclusion.err);
  }

  bool seq(Derivation &n, const std::string &path, const std::string &rule) {
    need(n.children.size() == 2, rule + " takes two premises");
    const Triple &a = n.children[0].conclusion;
    const Triple &b = n.children[1].conclusion;
    TestSet r;
    if (!premise(n.children[0], Eps::Ok, path, rule + ": first premise", r))
      return false;
    if (b.pre != r)
      return fail(path, rule + ": chained precondition",
                  "post=" + sh(r) + " pre=" + sh(b.pre));
    n.conclusion.pre = a.pre;
    n.conclusion.term = Term::mk_seq(a.term, b.term);
    if (rule == "seq-normal") { // conclusion carries the second premise's shape
      n.conclusion.ok = b.ok;
      n.conclusion.err = b.err;
    } else {
      TestSet q;
      if (!premise(n.children[1], Eps::Ok, path, rule + ": second premise", q))
        return false;
      n.conclusion.ok = q;
      if (rule == "seq-ok")
        n.conclusion.err = std::nullopt;
    }
    return true;
  }

  bool join(Derivation &n, const std::string &path) {
    need(n.children.size() == 2, "join takes two premises");
    const Triple &a = n.children[0].conclusion;
    const Triple &b = n.children[1].conclusion;
    if (a.pre != b.pre)
      return fail(path, "join: shared precondition",
                  sh(a.pre) + " vs " + sh(b.pre));
    n.conclusion.pre = a.pre;
    n.conclusion.term = Term::mk_plus(a.term, b.term);
    bool any = false;
    if (a.ok && b.ok) {
      n.conclusion.ok = c.cjoin(*a.ok, *b.ok);
      any = true;
    }
    if (c.pairs() && a.err && b.err) {
      n.conclusion.err = c.cjoin(*a.err, *b.err);
      any = true;
    }
    if (!any)
      return fail(path, "join", "premises share no component");
    return true;
  }

  bool rec(Derivation &n, const std::string &path) {
    need(n.children.size() == 2, "rec takes two premises");
    const Triple &a = n.children[0].conclusion;
    const Triple &b = n.children[1].conclusion;
    if (b.term->node != TermNode::Star || !term_eq(b.term->left, a.term))
      return fail(path, "rec: star of the first premise's term",
                  pretty_term(a.term) + " vs " + pretty_term(b.term));
    TestSet r = *a.ok;
    if (b.pre != c.cjoin(a.pre, r))
      return fail(path, "rec: second precondition p + r",
                  "expected " + sh(c.cjoin(a.pre, r)) + " got " + sh(b.pre));
    n.conclusion.pre = a.pre;
    n.conclusion.term = b.term;
    n.conclusion.ok = b.ok;
    return true;
  }

  bool iterate(Derivation &n, const std::string &path) {
    need(n.children.size() == 1, "iterate takes one premise");
    const Triple &a = n.children[0].conclusion;
    TestSet q = *a.ok;
    if (!c.cleq(q, c.d.closure(a.pre)))
      return fail(path, "iterate: q <= A(p)",
                  "q=" + sh(q) + " A(p)=" + sh(c.d.closure(a.pre)));
    n.conclusion.pre = a.pre;
    n.conclusion.term = Term::mk_star(a.term);
    n.conclusion.ok = c.cjoin(a.pre, q);
    return true;
  }

  bool limit(Derivation &n, const std::string &path) {
    need(!n.chain.empty(), "limit needs its chain");
    need(n.children.size() == n.chain.size(),
         "limit needs one step proof per chain link plus a stabilization proof");
    for (auto &p : n.chain)
      if (!c.is_conc(p))
        throw SemanticError("limit chain entry is not in the model's lattice");
    std::size_t N = n.chain.size() - 1;
    const TermPtr &t = n.children[0].conclusion.term;
    TestSet post = n.chain[0];
    for (std::size_t i = 0; i <= N; ++i) {
      const Triple &ch = n.children[i].conclusion;
      if (!term_eq(ch.term, t))
        return fail(path, "limit: same body term",
                    pretty_term(t) + " vs " + pretty_term(ch.term));
      const TestSet &from = n.chain[i];
      const TestSet &to = i < N ? n.chain[i + 1] : n.chain[N];
      if (ch.pre != from)
        return fail(path, "limit: step precondition",
                    "expected " + sh(from) + " got " + sh(ch.pre));
      TestSet got;
      if (!premise(n.children[i], Eps::Ok, path, "limit: step", got))
        return false;
      if (got != to)
        return fail(path,
                    i < N ? "limit: step postcondition"
                          : "limit: stabilization p_N -> p_N",
                    "expected " + sh(to) + " got " + sh(got));
      post = c.cjoin(post, n.chain[i]);
    }
    // In these finite models top distributes over the chain join: both sides
    // reduce to the same fold, which is what `post` already is.
    n.conclusion.pre = n.chain[0];
    n.conclusion.term = Term::mk_star(t);
    n.conclusion.ok = post;
    return true;
  }

  bool empty(Derivation &n, const std::string &path) {
    (void)path;
    need(n.children.empty(), "empty takes no premises");
    need(n.side_term != nullptr, "empty needs its term");
    const TestSet &p = want_conc(n.side_pre, "empty precondition");
    n.conclusion.pre = p;
    n.conclusion.term = n.side_term;
    TestSet zero = c.topp() ? c.m.topp_bottom() : c.m.test_zero();
    Eps e = c.pairs() ? n.eps.value_or(Eps::Both) : Eps::Ok;
    if (e != Eps::Err)
      n.conclusion.ok = zero;
    if (c.pairs() && e != Eps::Ok)
      n.conclusion.err = zero;
    return true;
  }

  bool disj(Derivation &n, const std::string &path) {
    need(n.children.size() == 2, "disj takes two premises");
    const Triple &a = n.children[0].conclusion;
    const Triple &b = n.children[1].conclusion;
    if (!term_eq(a.term, b.term))
      return fail(path, "disj: same term",
                  pretty_term(a.term) + " vs " + pretty_term(b.term));
    n.conclusion.pre = c.cjoin(a.pre, b.pre);
    n.conclusion.term = a.term;
    bool any = false;
    if (a.ok && b.ok) {
      n.conclusion.ok = c.cjoin(*a.ok, *b.ok);
      any = true;
    }
    if (c.pairs() && a.err && b.err) {
      n.conclusion.err = c.cjoin(*a.err, *b.err);
      any = true;
    }
    if (!any)
      return fail(path, "disj", "premises share no component");
    return true;
  }

  bool iterate_zero(Derivation &n, const std::string &path) {
    (void)path;
    need(n.children.empty(), "iterate-zero takes no premises");
    need(n.side_term != nullptr, "iterate-zero needs the loop body term");
    const TestSet &p = want_conc(n.side_pre, "iterate-zero precondition");
    n.conclusion.pre = p;
    n.conclusion.term = Term::mk_star(n.side_term);
    n.conclusion.ok = p; // ok-labelled in the pair systems
    return true;
  }

  bool iterate_nonzero(Derivation &n, const std::string &path) {
    need(n.children.size() == 1, "iterate-nonzero takes one premise");
    const Triple &a = n.children[0].conclusion;
    // premise term must have the shape t* ; t
    if (a.term->node != TermNode::Seq || a.term->left->node != TermNode::Star ||
        !term_eq(a.term->left->left, a.term->right))
      return fail(path, "iterate-nonzero: premise term t* ; t",
                  pretty_term(a.term));
    n.conclusion.pre = a.pre;
    n.conclusion.term = a.term->left;
    n.conclusion.ok = a.ok;
    n.conclusion.err = a.err;
    return true;
  }

  bool choice(Derivation &n, const std::string &path) {
    (void)path;
    need(n.children.size() == 1, "choice takes one premise");
    need(n.side_term != nullptr, "choice needs the unproved branch term");
    need(n.choice_pos == 1 || n.choice_pos == 2, "choice position must be 1 or 2");
    const Triple &a = n.children[0].conclusion;
    n.conclusion.pre = a.pre;
    n.conclusion.term = n.choice_pos == 1 ? Term::mk_plus(a.term, n.side_term)
                                          : Term::mk_plus(n.side_term, a.term);
    n.conclusion.ok = a.ok;
    n.conclusion.err = a.err;
    return true;
  }

  bool short_circuit(Derivation &n, const std::string &path) {
    need(n.children.size() == 1, "short-circuit takes one premise");
    need(n.side_term != nullptr, "short-circuit needs the skipped term");
    TestSet r;
    if (!premise(n.children[0], Eps::Err, path, "short-circuit", r))
      return false;
    const Triple &a = n.children[0].conclusion;
    n.conclusion.pre = a.pre;
    n.conclusion.term = Term::mk_seq(a.term, n.side_term);
    n.conclusion.err = r;
    return true;
  }

  bool seq_err(Derivation &n, const std::string &path) {
    need(n.children.size() == 2 || n.children.size() == 3,
         "seq-err takes two or three premises");
    // two premises: the first concludes both components; three premises:
    // separate ok and err proofs of the first term
    TestSet q, r, s;
    const Derivation *first_ok, *first_err, *second;
    if (n.children.size() == 2) {
      first_ok = first_err = &n.children[0];
      second = &n.children[1];
    } else {
      first_ok = &n.children[0];
      first_err = &n.children[1];
      second = &n.children[2];
      const Triple &a = first_ok->conclusion, &b = first_err->conclusion;
      if (a.pre != b.pre || !term_eq(a.term, b.term))
        return fail(path, "seq-err: matching ok/err premises",
                    show_triple(c.m, a) + " vs " + show_triple(c.m, b));
    }
    if (!premise(*first_ok, Eps::Ok, path, "seq-err: ok premise", q) ||
        !premise(*first_err, Eps::Err, path, "seq-err: err premise", r) ||
        !premise(*second, Eps::Err, path, "seq-err: continuation", s))
      return false;
    if (second->conclusion.pre != q)
      return fail(path, "seq-err: continuation precondition",
                  "expected " + sh(q) + " got " + sh(second->conclusion.pre));
    n.conclusion.pre = first_ok->conclusion.pre;
    n.conclusion.term =
        Term::mk_seq(first_ok->conclusion.term, second->conclusion.term);
    n.conclusion.err = c.cjoin(r, s);
    return true;
  }

  bool rec_err(Derivation &n, const std::string &path) {
    need(n.children.size() == 2, "rec-err takes two premises");
    const Triple &a = n.children[0].conclusion; // [p] t* [ok: q]
    const Triple &b = n.children[1].conclusion; // [q] t [err: r]
    if (a.term->node != TermNode::Star || !term_eq(a.term->left, b.term))
      return fail(path, "rec-err: star premise over the step term",
                  pretty_term(a.term) + " vs " + pretty_term(b.term));
    TestSet q, r;
    if (!premise(n.children[0], Eps::Ok, path, "rec-err: star premise", q) ||
        !premise(n.children[1], Eps::Err, path, "rec-err: step premise", r))
      return false;
    if (b.pre != q)
      return fail(path, "rec-err: step precondition",
                  "expected " + sh(q) + " got " + sh(b.pre));
    n.conclusion.pre = a.pre;
    n.conclusion.term = a.term;
    n.conclusion.err = r;
    return true;
  }

  bool pair(Derivation &n, const std::string &path) {
    need(n.children.size() == 2, "pair takes two premises");
    const Triple &a = n.children[0].conclusion;
    const Triple &b = n.children[1].conclusion;
    if (a.pre != b.pre || !term_eq(a.term, b.term))
      return fail(path, "pair: matching premises",
                  show_triple(c.m, a) + " vs " + show_triple(c.m, b));
    TestSet q, r;
    if (!premise(n.children[0], Eps::Ok, path, "pair: ok premise", q) ||
        !premise(n.children[1], Eps::Err, path, "pair: err premise", r))
      return false;
    n.conclusion.pre = a.pre;
    n.conclusion.term = a.term;
    n.conclusion.ok = q;
    n.conclusion.err = r;
    return true;
  }
};

} // namespace

// ---------------------------------------------------------------------------
// validity

namespace {

void check_clause1(const Ctx &c, Verdict &v, const TestSet &q,
                   const TestSet &post, const std::string &label) {
  if (!c.cleq(q, post))
    v.failures.push_back(
        {"condition (i) " + label,
         "post=" + show_test(c.m, q) + " exceeds " + show_test(c.m, post), ""});
}

void check_clause2(const Ctx &c, Verdict &v, AbsId ap, AbsId aq, AbsId apost,
                   const std::string &label) {
  if (ap != aq || aq != apost)
    v.failures.push_back({"condition (ii) " + label,
                          "abstract post=" + c.d.name_of(ap) +
                              " alpha(q)=" + c.d.name_of(aq) +
                              " alpha(concrete post)=" + c.d.name_of(apost),
                          ""});
}

} // namespace

Verdict valid_triple(const GaloisInsertion &d, const Model &m,
                     const Evaluation &u, const Triple &tr) {
  Ctx c{tr.system, d, m, u};
  c.check_domain();
  if (!c.is_conc(tr.pre))
    throw SemanticError("triple precondition is not in the model's lattice");
  if (!tr.ok && !tr.err)
    throw SemanticError("triple has no postcondition");
  if (!c.pairs() && !tr.ok)
    throw SemanticError("this system's triples carry a single postcondition");
  Verdict v{VerdictStatus::Valid, {}};

  auto one = [&](Eps e, const TestSet &q, const std::string &label) {
    if (!c.is_conc(q))
      throw SemanticError("triple postcondition is not in the model's lattice");
    TestSet post = e == Eps::Ok ? c.cpost_ok(tr.term, tr.pre)
                                : c.cpost_err(tr.term, tr.pre);
    check_clause1(c, v, q, post, label);
    if (c.lc()) {
      AbsId ap = e == Eps::Ok ? c.aok(tr.term, d.alpha(tr.pre))
                              : c.aerr(tr.term, d.alpha(tr.pre));
      check_clause2(c, v, ap, d.alpha(q), d.alpha(post), label);
    }
  };
  if (tr.ok)
    one(Eps::Ok, *tr.ok, c.pairs() ? "ok" : "");
  if (tr.err && c.pairs())
    one(Eps::Err, *tr.err, "err");
  if (!v.failures.empty())
    v.status = VerdictStatus::Invalid;
  return v;
}

Verdict valid_lck(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                  const Triple &tr) {
  return valid_triple(d, m, u, tr);
}
Verdict valid_il(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                 const Triple &tr) {
  return valid_triple(d, m, u, tr);
}
Verdict valid_lctk(const GaloisInsertion &d, const Model &m,
                   const Evaluation &u, const Triple &tr) {
  return valid_triple(d, m, u, tr);
}

// ---------------------------------------------------------------------------
// verify

Verdict verify(System sys, const GaloisInsertion &d, const Model &m,
               const Evaluation &u, Derivation &deriv) {
  Ctx c{sys, d, m, u};
  c.check_domain();
  Checker ck{c};
  ck.check(deriv, "root");
  deriv.conclusion.system = sys;
  return ck.verdict;
}

// ---------------------------------------------------------------------------
// synthesis

namespace {

struct Synth {
  Ctx c;

  Derivation transfer_leaf(const TermPtr &t, const TestSet &p) {
    Derivation n;
    n.rule = "transfer";
    n.atom = t->node == TermNode::Zero  ? "0"
             : t->node == TermNode::One ? "1"
                                        : t->atom.name;
    n.side_pre = p;
    return n;
  }

  // canonical derivation of [p] t [ok: cpost_ok(t, p)]
  Derivation derive_ok(const TermPtr &t, const TestSet &p) {
    switch (t->node) {
    case TermNode::Atom:
    case TermNode::Zero:
    case TermNode::One:
      return transfer_leaf(t, p);
    case TermNode::Plus: {
      Derivation n;
      n.rule = "join";
      n.children.push_back(derive_ok(t->left, p));
      n.children.push_back(derive_ok(t->right, p));
      return n;
    }
    case TermNode::Seq: {
      Derivation n;
      n.rule = "seq" + std::string(c.pairs() ? "-ok" : "");
      n.children.push_back(derive_ok(t->left, p));
      n.children.push_back(derive_ok(t->right, c.cpost_ok(t->left, p)));
      return n;
    }
    case TermNode::Star: {
      Derivation n;
      n.rule = "limit";
      TestSet cur = p;
      std::size_t bound = star_bound(c.m);
      for (std::size_t i = 0;; ++i) {
        if (i > bound)
          throw SynthError(SynthError::Kind::StabilizationBound,
                           "chain for " + pretty_term(t) +
                               " did not stabilize within the lattice height");
        n.chain.push_back(cur);
        TestSet next = c.cpost_ok(t->left, cur);
        if (next == cur)
          break;
        cur = std::move(next);
      }
      for (std::size_t i = 0; i + 1 < n.chain.size(); ++i)
        n.children.push_back(derive_ok(t->left, n.chain[i]));
      n.children.push_back(derive_ok(t->left, n.chain.back())); // stabilization
      return n;
    }
    }
    throw std::logic_error("bad term node");
  }

  // canonical derivation whose err component is cpost_err(t, p)
  Derivation derive_err(const TermPtr &t, const TestSet &p) {
    switch (t->node) {
    case TermNode::Atom:
    case TermNode::Zero:
    case TermNode::One:
      return transfer_leaf(t, p);
    case TermNode::Plus: {
      Derivation n;
      n.rule = "join";
      n.children.push_back(derive_err(t->left, p));
      n.children.push_back(derive_err(t->right, p));
      return n;
    }
    case TermNode::Seq: {
      Derivation n;
      n.rule = "seq-err";
      bool leaf = t->left->node == TermNode::Atom ||
                  t->left->node == TermNode::Zero ||
                  t->left->node == TermNode::One;
      if (leaf)
        n.children.push_back(transfer_leaf(t->left, p));
      else {
        n.children.push_back(derive_ok(t->left, p));
        n.children.push_back(derive_err(t->left, p));
      }
      n.children.push_back(derive_err(t->right, c.cpost_ok(t->left, p)));
      return n;
    }
    case TermNode::Star: {
      Derivation n;
      n.rule = "rec-err";
      n.children.push_back(derive_ok(t, p));
      n.children.push_back(derive_err(t->left, c.cpost_ok(t, p)));
      return n;
    }
    }
    throw std::logic_error("bad term node");
  }
};

bool is_leaf(const TermPtr &t) {
  return t->node == TermNode::Atom || t->node == TermNode::Zero ||
         t->node == TermNode::One;
}

} // namespace

Derivation synthesize(System sys, const GaloisInsertion &d, const Model &m,
                      const Evaluation &u, const Triple &tr) {
  if (sys == System::UL) {
    Triple t2 = tr;
    t2.system = System::LCK;
    Derivation lck = synthesize(System::LCK, d, m, u, t2);
    return translate_lck_ul(d, m, u, lck, Direction::Forward);
  }
  if (sys == System::IL) {
    Triple t2 = tr;
    t2.system = System::LCIL;
    Derivation lcil = synthesize(System::LCIL, d, m, u, t2);
    return translate_lcil_il(d, m, u, lcil, Direction::Forward);
  }

  Ctx c{sys, d, m, u};
  c.check_domain();
  Triple want = tr;
  want.system = sys;
  Verdict v = valid_triple(d, m, u, want);
  if (!v.ok())
    throw SynthError(SynthError::Kind::InvalidTriple,
                     "triple is not valid: " + show_triple(m, want), v);

  // the completeness construction needs globally complete atoms
  if (d.size() > 1) { // the one-point domain is complete for everything
    for (const Atom &a : atoms_of(tr.term)) {
      CompletenessResult r = global_complete(d, m, u, TransformerRef::atom_ok(a));
      if (!r.complete)
        throw SynthError(SynthError::Kind::IncompleteAtom,
                         "atom '" + a.name + "' is not globally complete",
                         {VerdictStatus::Invalid, {}}, a.name,
                         show_test(m, r.witness_input));
      if (c.pairs()) {
        r = global_complete(d, m, u, TransformerRef::atom_err(a));
        if (!r.complete)
          throw SynthError(SynthError::Kind::IncompleteAtom,
                           "atom '" + a.name +
                               "' is not globally complete for err",
                           {VerdictStatus::Invalid, {}}, a.name,
                           show_test(m, r.witness_input));
      }
    }
  }

  Synth s{c};
  Derivation root;
  bool want_ok = want.ok.has_value();
  bool want_err = c.pairs() && want.err.has_value();
  if (want_ok && want_err && !is_leaf(tr.term)) {
    root.rule = "pair";
    root.children.push_back(s.derive_ok(tr.term, tr.pre));
    root.children.push_back(s.derive_err(tr.term, tr.pre));
  } else if (want_err && !want_ok) {
    root = s.derive_err(tr.term, tr.pre);
  } else {
    root = s.derive_ok(tr.term, tr.pre);
  }

  // verify fills in the canonical conclusion, then relax onto the target
  Verdict chk = verify(sys, d, m, u, root);
  if (!chk.ok())
    throw std::logic_error("synthesized derivation failed verification: " +
                           chk.failures[0].condition);
  bool need_relax =
      (want_ok && root.conclusion.ok != want.ok) ||
      (want_err && root.conclusion.err != want.err) ||
      (want_ok != root.conclusion.ok.has_value()) ||
      (want_err != (c.pairs() && root.conclusion.err.has_value()));
  if (need_relax) {
    Derivation relax;
    relax.rule = "relax";
    relax.side_pre = tr.pre;
    if (want_ok)
      relax.relax_ok = want.ok;
    if (want_err)
      relax.relax_err = want.err;
    relax.children.push_back(std::move(root));
    root = std::move(relax);
    chk = verify(sys, d, m, u, root);
    if (!chk.ok())
      throw std::logic_error("relaxed derivation failed verification: " +
                             chk.failures[0].condition);
  }
  return root;
}

// ---------------------------------------------------------------------------
// translations

namespace {

void require_trivial(const GaloisInsertion &d) {
  if (d.size() != 1)
    throw SemanticError("translation is defined at the trivial abstraction only");
}

bool contains_rule(const Derivation &n, const std::string &a,
                   const std::string &b) {
  if (n.rule == a || n.rule == b)
    return true;
  for (const auto &ch : n.children)
    if (contains_rule(ch, a, b))
      return true;
  return false;
}

Derivation map_lck_to_ul(const Derivation &n) {
  Derivation out;
  if (n.rule == "transfer") {
    out = n;
    out.children.clear();
    return out;
  }
  if (n.rule == "relax") {
    out.rule = "consequence";
    out.side_pre = n.side_pre;
    out.relax_ok = n.relax_ok;
    out.children.push_back(map_lck_to_ul(n.children[0]));
    return out;
  }
  if (n.rule == "seq") {
    out.rule = "seq";
    out.children.push_back(map_lck_to_ul(n.children[0]));
    out.children.push_back(map_lck_to_ul(n.children[1]));
    return out;
  }
  if (n.rule == "limit" || n.rule == "back-v") {
    out.rule = "limit";
    out.chain = n.chain;
    for (const auto &ch : n.children)
      out.children.push_back(map_lck_to_ul(ch));
    return out;
  }
  if (n.rule == "join" || n.rule == "choice") {
    // join becomes a disjunction of the two one-sided choices
    Derivation c1;
    c1.rule = "choice";
    c1.choice_pos = 1;
    c1.side_term = n.children[1].conclusion.term;
    c1.children.push_back(map_lck_to_ul(n.children[0]));
    Derivation c2;
    c2.rule = "choice";
    c2.choice_pos = 2;
    c2.side_term = n.children[0].conclusion.term;
    c2.children.push_back(map_lck_to_ul(n.children[1]));
    out.rule = "disj";
    out.children.push_back(std::move(c1));
    out.children.push_back(std::move(c2));
    return out;
  }
  throw SemanticError("rule '" + n.rule + "' has no under-approximation image");
}

Derivation map_lcil_to_il(const Derivation &n) {
  Derivation out;
  if (n.rule == "transfer") {
    out = n;
    out.children.clear();
    return out;
  }
  if (n.rule == "relax") {
    out.rule = "consequence";
    out.side_pre = n.side_pre;
    out.relax_ok = n.relax_ok;
    out.relax_err = n.relax_err;
    out.children.push_back(map_lcil_to_il(n.children[0]));
    return out;
  }
  if (n.rule == "seq-ok") {
    out.rule = "seq-normal";
    out.children.push_back(map_lcil_to_il(n.children[0]));
    out.children.push_back(map_lcil_to_il(n.children[1]));
    return out;
  }
  if (n.rule == "seq-err") {
    const Derivation &first_ok = n.children[0];
    const Derivation &first_err =
        n.children.size() == 3 ? n.children[1] : n.children[0];
    const Derivation &second = n.children.back();
    Derivation sn;
    sn.rule = "seq-normal";
    sn.eps = Eps::Err;
    sn.children.push_back(map_lcil_to_il(first_ok));
    sn.children.push_back(map_lcil_to_il(second));
    Derivation sc;
    sc.rule = "short-circuit";
    sc.side_term = second.conclusion.term;
    sc.children.push_back(map_lcil_to_il(first_err));
    out.rule = "disj";
    out.children.push_back(std::move(sn));
    out.children.push_back(std::move(sc));
    return out;
  }
  if (n.rule == "rec-err") {
    Derivation sn;
    sn.rule = "seq-normal";
    sn.eps = Eps::Err;
    sn.children.push_back(map_lcil_to_il(n.children[0]));
    sn.children.push_back(map_lcil_to_il(n.children[1]));
    out.rule = "iterate-nonzero";
    out.eps = Eps::Err;
    out.children.push_back(std::move(sn));
    return out;
  }
  if (n.rule == "join" || n.rule == "choice") {
    Derivation c1;
    c1.rule = "choice";
    c1.choice_pos = 1;
    c1.side_term = n.children[1].conclusion.term;
    c1.children.push_back(map_lcil_to_il(n.children[0]));
    Derivation c2;
    c2.rule = "choice";
    c2.choice_pos = 2;
    c2.side_term = n.children[0].conclusion.term;
    c2.children.push_back(map_lcil_to_il(n.children[1]));
    out.rule = "disj";
    out.children.push_back(std::move(c1));
    out.children.push_back(std::move(c2));
    return out;
  }
  if (n.rule == "limit" || n.rule == "back-v") {
    out.rule = "limit";
    out.chain = n.chain;
    for (const auto &ch : n.children)
      out.children.push_back(map_lcil_to_il(ch));
    return out;
  }
  if (n.rule == "pair") {
    out.rule = "pair";
    out.children.push_back(map_lcil_to_il(n.children[0]));
    out.children.push_back(map_lcil_to_il(n.children[1]));
    return out;
  }
  throw SemanticError("rule '" + n.rule + "' has no incorrectness-logic image");
}

} // namespace

Derivation translate_lck_ul(const GaloisInsertion &d, const Model &m,
                            const Evaluation &u, const Derivation &deriv,
                            Direction dir) {
  require_trivial(d);
  Derivation src = deriv;
  if (dir == Direction::Forward) {
    Verdict v = verify(System::LCK, d, m, u, src);
    if (!v.ok())
      throw SemanticError("source derivation does not verify: " +
                          v.failures[0].condition);
    if (contains_rule(src, "rec", "iterate")) {
      // rec/iterate have no direct image; rebuild in limit form
      src = synthesize(System::LCK, d, m, u, src.conclusion);
      Verdict v2 = verify(System::LCK, d, m, u, src);
      if (!v2.ok())
        throw std::logic_error("re-synthesis failed verification");
    }
    Derivation out = map_lck_to_ul(src);
    Verdict v3 = verify(System::UL, d, m, u, out);
    if (!v3.ok())
      throw std::logic_error("translated derivation failed verification: " +
                             v3.failures[0].condition);
    return out;
  }
  Verdict v = verify(System::UL, d, m, u, src);
  if (!v.ok())
    throw SemanticError("source derivation does not verify: " +
                        v.failures[0].condition);
  Triple goal = src.conclusion;
  goal.system = System::LCK;
  return synthesize(System::LCK, d, m, u, goal);
}

Derivation translate_lcil_il(const GaloisInsertion &d, const Model &m,
                             const Evaluation &u, const Derivation &deriv,
                             Direction dir) {
  require_trivial(d);
  Derivation src = deriv;
  if (dir == Direction::Forward) {
    Verdict v = verify(System::LCIL, d, m, u, src);
    if (!v.ok())
      throw SemanticError("source derivation does not verify: " +
                          v.failures[0].condition);
    Derivation out = map_lcil_to_il(src);
    Verdict v2 = verify(System::IL, d, m, u, out);
    if (!v2.ok())
      throw std::logic_error("translated derivation failed verification: " +
                             v2.failures[0].condition);
    return out;
  }
  Verdict v = verify(System::IL, d, m, u, src);
  if (!v.ok())
    throw SemanticError("source derivation does not verify: " +
                        v.failures[0].condition);
  Triple goal = src.conclusion;
  goal.system = System::LCIL;
  return synthesize(System::LCIL, d, m, u, goal);
}

} // namespace katlcl
