#include "katlcl/semantics.hpp"

#include <set>

namespace katlcl {

std::size_t star_bound(const Model &m) { return m.test_lattice_height() + 1; }

// ---------------------------------------------------------------------------
// concrete transformers
//
// Star nodes iterate their body transformer, so naive recursion is
// exponential in nesting depth. The transformers are pure, which makes a
// per-query memo over (node, input) safe; it also keeps repeated fixpoint
// probes of the same subterm cheap.

namespace {

struct ConcMemo {
  std::map<std::pair<const Term *, TestSet>, TestSet> ok, err;
};

TestSet post_ok_m(const Model &m, const Evaluation &u, const TermPtr &t,
                  const TestSet &p, ConcMemo &memo);

TestSet post_err_m(const Model &m, const Evaluation &u, const TermPtr &t,
                   const TestSet &p, ConcMemo &memo);

TestSet post_ok_uncached(const Model &m, const Evaluation &u, const TermPtr &t,
                         const TestSet &p, ConcMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return m.bdia(u.lookup(t->atom).first, p);
  case TermNode::Zero:
    return m.test_zero();
  case TermNode::One:
    return p;
  case TermNode::Plus:
    return m.test_join(post_ok_m(m, u, t->left, p, memo),
                       post_ok_m(m, u, t->right, p, memo));
  case TermNode::Seq:
    return post_ok_m(m, u, t->right, post_ok_m(m, u, t->left, p, memo), memo);
  case TermNode::Star: {
    // the diamond is additive, so the chained join is the least fixpoint of
    // q |-> p + <t]q and stabilizes within the lattice height
    TestSet q = p;
    for (std::size_t i = 0; i <= star_bound(m); ++i) {
      TestSet next = m.test_join(q, post_ok_m(m, u, t->left, q, memo));
      if (next == q)
        return q;
      q = std::move(next);
    }
    throw SemanticError("star iteration exceeded the lattice height");
  }
  }
  throw std::logic_error("bad term node");
}

TestSet post_ok_m(const Model &m, const Evaluation &u, const TermPtr &t,
                  const TestSet &p, ConcMemo &memo) {
  auto key = std::make_pair(t.get(), p);
  auto it = memo.ok.find(key);
  if (it != memo.ok.end())
    return it->second;
  TestSet r = post_ok_uncached(m, u, t, p, memo);
  memo.ok.emplace(std::move(key), r);
  return r;
}

TestSet post_err_uncached(const Model &m, const Evaluation &u, const TermPtr &t,
                          const TestSet &p, ConcMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return m.bdia(u.lookup(t->atom).second, p);
  case TermNode::Zero:
  case TermNode::One:
    return m.test_zero();
  case TermNode::Plus:
    return m.test_join(post_err_m(m, u, t->left, p, memo),
                       post_err_m(m, u, t->right, p, memo));
  case TermNode::Seq: // short-circuit: t1 errs, or t1 finishes and t2 errs
    return m.test_join(
        post_err_m(m, u, t->left, p, memo),
        post_err_m(m, u, t->right, post_ok_m(m, u, t->left, p, memo), memo));
  case TermNode::Star: // one err step after any number of ok iterations
    return post_err_m(m, u, t->left, post_ok_m(m, u, t, p, memo), memo);
  }
  throw std::logic_error("bad term node");
}

TestSet post_err_m(const Model &m, const Evaluation &u, const TermPtr &t,
                   const TestSet &p, ConcMemo &memo) {
  auto key = std::make_pair(t.get(), p);
  auto it = memo.err.find(key);
  if (it != memo.err.end())
    return it->second;
  TestSet r = post_err_uncached(m, u, t, p, memo);
  memo.err.emplace(std::move(key), r);
  return r;
}

} // namespace

namespace {

void want_test(const Model &m, const TestSet &p) {
  if (!m.is_test(p))
    throw SemanticError("precondition is not a test of this model");
}

} // namespace

TestSet post_ok(const Model &m, const Evaluation &u, const TermPtr &t,
                const TestSet &p) {
  want_test(m, p);
  ConcMemo memo;
  return post_ok_m(m, u, t, p, memo);
}

TestSet post_err(const Model &m, const Evaluation &u, const TermPtr &t,
                 const TestSet &p) {
  want_test(m, p);
  ConcMemo memo;
  return post_err_m(m, u, t, p, memo);
}

PostPair post_pair(const Model &m, const Evaluation &u, const TermPtr &t,
                   const TestSet &p) {
  want_test(m, p);
  ConcMemo memo;
  return {post_ok_m(m, u, t, p, memo), post_err_m(m, u, t, p, memo)};
}

// ---------------------------------------------------------------------------
// abstract transformers

namespace {

struct AbsMemo {
  std::map<std::pair<const Term *, AbsId>, AbsId> ok, err;
};

// join over the orbit p, f(p), f(f(p)), ...; abstract transformers are
// monotone but not additive, so the orbit is followed until it revisits a
// value instead of being folded into one increasing iteration
template <typename F>
AbsId orbit_join(const GaloisInsertion &d, AbsId p, F step) {
  AbsId acc = p, cur = p;
  std::set<AbsId> seen{p};
  for (int i = 0; i <= d.size() + 1; ++i) {
    cur = step(cur);
    acc = d.join(acc, cur);
    if (seen.count(cur))
      return acc;
    seen.insert(cur);
  }
  throw SemanticError("abstract star iteration failed to close its orbit");
}

AbsId apost_ok_m(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                 const TermPtr &t, AbsId p, AbsMemo &memo);

AbsId apost_ok_uncached(const GaloisInsertion &d, const Model &m,
                        const Evaluation &u, const TermPtr &t, AbsId p,
                        AbsMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return d.alpha(m.bdia(u.lookup(t->atom).first, d.gamma(p)));
  case TermNode::Zero:
    return d.alpha(m.test_zero());
  case TermNode::One:
    return p; // alpha(gamma(p))
  case TermNode::Plus:
    return d.join(apost_ok_m(d, m, u, t->left, p, memo),
                  apost_ok_m(d, m, u, t->right, p, memo));
  case TermNode::Seq:
    return apost_ok_m(d, m, u, t->right, apost_ok_m(d, m, u, t->left, p, memo),
                      memo);
  case TermNode::Star:
    return orbit_join(
        d, p, [&](AbsId x) { return apost_ok_m(d, m, u, t->left, x, memo); });
  }
  throw std::logic_error("bad term node");
}

AbsId apost_ok_m(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                 const TermPtr &t, AbsId p, AbsMemo &memo) {
  auto key = std::make_pair(t.get(), p);
  auto it = memo.ok.find(key);
  if (it != memo.ok.end())
    return it->second;
  AbsId r = apost_ok_uncached(d, m, u, t, p, memo);
  memo.ok.emplace(key, r);
  return r;
}

AbsId apost_err_m(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                  const TermPtr &t, AbsId p, AbsMemo &memo);

AbsId apost_err_uncached(const GaloisInsertion &d, const Model &m,
                         const Evaluation &u, const TermPtr &t, AbsId p,
                         AbsMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return d.alpha(m.bdia(u.lookup(t->atom).second, d.gamma(p)));
  case TermNode::Zero:
  case TermNode::One:
    return d.alpha(m.test_zero());
  case TermNode::Plus:
    return d.join(apost_err_m(d, m, u, t->left, p, memo),
                  apost_err_m(d, m, u, t->right, p, memo));
  case TermNode::Seq:
    return d.join(
        apost_err_m(d, m, u, t->left, p, memo),
        apost_err_m(d, m, u, t->right, apost_ok_m(d, m, u, t->left, p, memo),
                    memo));
  case TermNode::Star:
    return apost_err_m(d, m, u, t->left, apost_ok_m(d, m, u, t, p, memo), memo);
  }
  throw std::logic_error("bad term node");
}

AbsId apost_err_m(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                  const TermPtr &t, AbsId p, AbsMemo &memo) {
  auto key = std::make_pair(t.get(), p);
  auto it = memo.err.find(key);
  if (it != memo.err.end())
    return it->second;
  AbsId r = apost_err_uncached(d, m, u, t, p, memo);
  memo.err.emplace(key, r);
  return r;
}

} // namespace

AbsId apost_ok(const GaloisInsertion &d, const Model &m, const Evaluation &u,
               const TermPtr &t, AbsId p) {
  if (d.concrete_kind() != ConcreteKind::Tests)
    throw SemanticError("abstract post needs a test-lattice domain");
  AbsMemo memo;
  return apost_ok_m(d, m, u, t, p, memo);
}

AbsId apost_err(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                const TermPtr &t, AbsId p) {
  if (d.concrete_kind() != ConcreteKind::Tests)
    throw SemanticError("abstract post needs a test-lattice domain");
  AbsMemo memo;
  return apost_err_m(d, m, u, t, p, memo);
}

std::pair<AbsId, AbsId> apost_pair(const GaloisInsertion &d, const Model &m,
                                   const Evaluation &u, const TermPtr &t,
                                   AbsId p) {
  if (d.concrete_kind() != ConcreteKind::Tests)
    throw SemanticError("abstract post needs a test-lattice domain");
  AbsMemo memo;
  return {apost_ok_m(d, m, u, t, p, memo), apost_err_m(d, m, u, t, p, memo)};
}

// ---------------------------------------------------------------------------
// TopKAT codomain transformers

namespace {

TestSet top_step_atom(const Model &m, const Evaluation &u, const Atom &a,
                      const TestSet &c, bool err) {
  const auto &e = u.lookup(a);
  return m.top_step(c, err ? e.second : e.first);
}

struct TopMemo {
  std::map<std::pair<const Term *, TestSet>, TestSet> ok, err;
};

TestSet top_post_m(const Model &m, const Evaluation &u, const TermPtr &t,
                   const TestSet &c, TopMemo &memo);

TestSet top_post_uncached(const Model &m, const Evaluation &u, const TermPtr &t,
                          const TestSet &c, TopMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return top_step_atom(m, u, t->atom, c, false);
  case TermNode::Zero:
    return m.topp_bottom();
  case TermNode::One:
    return c;
  case TermNode::Plus:
    return m.topp_join(top_post_m(m, u, t->left, c, memo),
                       top_post_m(m, u, t->right, c, memo));
  case TermNode::Seq:
    return top_post_m(m, u, t->right, top_post_m(m, u, t->left, c, memo), memo);
  case TermNode::Star: {
    TestSet q = c;
    for (std::size_t i = 0; i <= star_bound(m); ++i) {
      TestSet next = m.topp_join(q, top_post_m(m, u, t->left, q, memo));
      if (next == q)
        return q;
      q = std::move(next);
    }
    throw SemanticError("codomain star iteration exceeded the lattice height");
  }
  }
  throw std::logic_error("bad term node");
}

TestSet top_post_m(const Model &m, const Evaluation &u, const TermPtr &t,
                   const TestSet &c, TopMemo &memo) {
  auto key = std::make_pair(t.get(), c);
  auto it = memo.ok.find(key);
  if (it != memo.ok.end())
    return it->second;
  TestSet r = top_post_uncached(m, u, t, c, memo);
  memo.ok.emplace(std::move(key), r);
  return r;
}

TestSet top_post_err_m(const Model &m, const Evaluation &u, const TermPtr &t,
                       const TestSet &c, TopMemo &memo);

TestSet top_post_err_uncached(const Model &m, const Evaluation &u,
                              const TermPtr &t, const TestSet &c,
                              TopMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return top_step_atom(m, u, t->atom, c, true);
  case TermNode::Zero:
  case TermNode::One:
    return m.topp_bottom();
  case TermNode::Plus:
    return m.topp_join(top_post_err_m(m, u, t->left, c, memo),
                       top_post_err_m(m, u, t->right, c, memo));
  case TermNode::Seq:
    return m.topp_join(
        top_post_err_m(m, u, t->left, c, memo),
        top_post_err_m(m, u, t->right, top_post_m(m, u, t->left, c, memo),
                       memo));
  case TermNode::Star:
    return top_post_err_m(m, u, t->left, top_post_m(m, u, t, c, memo), memo);
  }
  throw std::logic_error("bad term node");
}

TestSet top_post_err_m(const Model &m, const Evaluation &u, const TermPtr &t,
                       const TestSet &c, TopMemo &memo) {
  auto key = std::make_pair(t.get(), c);
  auto it = memo.err.find(key);
  if (it != memo.err.end())
    return it->second;
  TestSet r = top_post_err_uncached(m, u, t, c, memo);
  memo.err.emplace(std::move(key), r);
  return r;
}

struct ATopMemo {
  std::map<std::pair<const Term *, AbsId>, AbsId> ok, err;
};

AbsId atop_post_m(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                  const TermPtr &t, AbsId c, ATopMemo &memo);

AbsId atop_post_uncached(const GaloisInsertion &d, const Model &m,
                         const Evaluation &u, const TermPtr &t, AbsId c,
                         ATopMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return d.alpha(top_step_atom(m, u, t->atom, d.gamma(c), false));
  case TermNode::Zero:
    return d.alpha(m.topp_bottom());
  case TermNode::One:
    return c;
  case TermNode::Plus:
    return d.join(atop_post_m(d, m, u, t->left, c, memo),
                  atop_post_m(d, m, u, t->right, c, memo));
  case TermNode::Seq:
    return atop_post_m(d, m, u, t->right, atop_post_m(d, m, u, t->left, c, memo),
                       memo);
  case TermNode::Star:
    return orbit_join(
        d, c, [&](AbsId x) { return atop_post_m(d, m, u, t->left, x, memo); });
  }
  throw std::logic_error("bad term node");
}

AbsId atop_post_m(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                  const TermPtr &t, AbsId c, ATopMemo &memo) {
  auto key = std::make_pair(t.get(), c);
  auto it = memo.ok.find(key);
  if (it != memo.ok.end())
    return it->second;
  AbsId r = atop_post_uncached(d, m, u, t, c, memo);
  memo.ok.emplace(key, r);
  return r;
}

AbsId atop_post_err_m(const GaloisInsertion &d, const Model &m,
                      const Evaluation &u, const TermPtr &t, AbsId c,
                      ATopMemo &memo);

AbsId atop_post_err_uncached(const GaloisInsertion &d, const Model &m,
                             const Evaluation &u, const TermPtr &t, AbsId c,
                             ATopMemo &memo) {
  switch (t->node) {
  case TermNode::Atom:
    return d.alpha(top_step_atom(m, u, t->atom, d.gamma(c), true));
  case TermNode::Zero:
  case TermNode::One:
    return d.alpha(m.topp_bottom());
  case TermNode::Plus:
    return d.join(atop_post_err_m(d, m, u, t->left, c, memo),
                  atop_post_err_m(d, m, u, t->right, c, memo));
  case TermNode::Seq:
    return d.join(
        atop_post_err_m(d, m, u, t->left, c, memo),
        atop_post_err_m(d, m, u, t->right,
                        atop_post_m(d, m, u, t->left, c, memo), memo));
  case TermNode::Star:
    return atop_post_err_m(d, m, u, t->left, atop_post_m(d, m, u, t, c, memo),
                           memo);
  }
  throw std::logic_error("bad term node");
}

AbsId atop_post_err_m(const GaloisInsertion &d, const Model &m,
                      const Evaluation &u, const TermPtr &t, AbsId c,
                      ATopMemo &memo) {
  auto key = std::make_pair(t.get(), c);
  auto it = memo.err.find(key);
  if (it != memo.err.end())
    return it->second;
  AbsId r = atop_post_err_uncached(d, m, u, t, c, memo);
  memo.err.emplace(key, r);
  return r;
}

} // namespace

TestSet top_post(const Model &m, const Evaluation &u, const TermPtr &t,
                 const TestSet &c) {
  if (!m.has_top())
    throw SemanticError("model has no top element");
  if (!m.is_topp(c))
    throw SemanticError("precondition is not a codomain of this model");
  TopMemo memo;
  return top_post_m(m, u, t, c, memo);
}

TestSet top_post_err(const Model &m, const Evaluation &u, const TermPtr &t,
                     const TestSet &c) {
  if (!m.has_top())
    throw SemanticError("model has no top element");
  if (!m.is_topp(c))
    throw SemanticError("precondition is not a codomain of this model");
  TopMemo memo;
  return top_post_err_m(m, u, t, c, memo);
}

AbsId atop_post(const GaloisInsertion &d, const Model &m, const Evaluation &u,
                const TermPtr &t, AbsId c) {
  if (d.concrete_kind() != ConcreteKind::ToppCodomains)
    throw SemanticError("codomain transformer needs a topp-codomain domain");
  ATopMemo memo;
  return atop_post_m(d, m, u, t, c, memo);
}

AbsId atop_post_err(const GaloisInsertion &d, const Model &m,
                    const Evaluation &u, const TermPtr &t, AbsId c) {
  if (d.concrete_kind() != ConcreteKind::ToppCodomains)
    throw SemanticError("codomain transformer needs a topp-codomain domain");
  ATopMemo memo;
  return atop_post_err_m(d, m, u, t, c, memo);
}

// ---------------------------------------------------------------------------
// relational oracle

namespace {

struct RelPair {
  Elem ok;
  Elem err;
};

RelPair materialize(const Model &m, const Evaluation &u, const TermPtr &t) {
  switch (t->node) {
  case TermNode::Atom: {
    const auto &e = u.lookup(t->atom);
    return {e.first, e.second};
  }
  case TermNode::Zero:
    return {m.zero_elem(), m.zero_elem()};
  case TermNode::One:
    return {m.one_elem(), m.zero_elem()};
  case TermNode::Plus: {
    RelPair a = materialize(m, u, t->left), b = materialize(m, u, t->right);
    return {m.plus(a.ok, b.ok), m.plus(a.err, b.err)};
  }
  case TermNode::Seq: {
    RelPair a = materialize(m, u, t->left), b = materialize(m, u, t->right);
    return {m.seq(a.ok, b.ok), m.plus(a.err, m.seq(a.ok, b.err))};
  }
  case TermNode::Star: {
    RelPair a = materialize(m, u, t->left);
    Elem s = m.star_closure(a.ok);
    return {s, m.seq(s, a.err)};
  }
  }
  throw std::logic_error("bad term node");
}

// image written out directly from the explicit-formula reading of the diamond
TestSet image_of(const Model &m, const Elem &a, const TestSet &p) {
  TestSet out(m.carrier_size());
  for (int x = 0; x < m.carrier_size(); ++x)
    if (p.test(x))
      for (int y = 0; y < m.carrier_size(); ++y)
        if (a.rel[x].test(y))
          out.set(y);
  return out;
}

} // namespace

PostPair oracle_post(const Model &m, const Evaluation &u, const TermPtr &t,
                     const TestSet &p) {
  if (m.kind() != ModelKind::RelationalFull)
    throw SemanticError("oracle_post needs a relational model");
  RelPair r = materialize(m, u, t);
  return {image_of(m, r.ok, p), image_of(m, r.err, p)};
}

// ---------------------------------------------------------------------------
// completeness

namespace {

TestSet apply_transformer(const GaloisInsertion &d, const Model &m,
                          const Evaluation &u, const TransformerRef &f,
                          const TestSet &p) {
  bool topp = d.concrete_kind() == ConcreteKind::ToppCodomains;
  switch (f.kind) {
  case TransformerRef::Kind::AtomOk:
    if (topp)
      return top_step_atom(m, u, f.atom, p, false);
    return m.bdia(u.lookup(f.atom).first, p);
  case TransformerRef::Kind::AtomErr:
    if (topp)
      return top_step_atom(m, u, f.atom, p, true);
    return m.bdia(u.lookup(f.atom).second, p);
  case TransformerRef::Kind::TermOk:
    return topp ? top_post(m, u, f.term, p) : post_ok(m, u, f.term, p);
  }
  throw std::logic_error("bad transformer");
}

} // namespace

CompletenessResult local_complete(const GaloisInsertion &d, const Model &m,
                                  const Evaluation &u, const TransformerRef &f,
                                  const TestSet &p) {
  TestSet lhs = d.closure(apply_transformer(d, m, u, f, p));
  TestSet rhs = d.closure(apply_transformer(d, m, u, f, d.closure(p)));
  return {lhs == rhs, lhs, rhs, p};
}

CompletenessResult global_complete(const GaloisInsertion &d, const Model &m,
                                   const Evaluation &u, const TransformerRef &f) {
  for (const auto &p : d.conc_all()) {
    CompletenessResult r = local_complete(d, m, u, f, p);
    if (!r.complete)
      return r;
  }
  CompletenessResult ok;
  ok.complete = true;
  return ok;
}

} // namespace katlcl
