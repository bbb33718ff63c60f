#include "katlcl/domain.hpp"

#include <algorithm>
#include <random>

namespace katlcl {

bool GaloisInsertion::conc_leq(const TestSet &c, const TestSet &d) const {
  return kind_ == ConcreteKind::Tests ? model_->test_leq(c, d)
                                      : model_->topp_leq(c, d);
}

TestSet GaloisInsertion::conc_join(const TestSet &c, const TestSet &d) const {
  return kind_ == ConcreteKind::Tests ? model_->test_join(c, d)
                                      : model_->topp_join(c, d);
}

TestSet GaloisInsertion::conc_top() const {
  return kind_ == ConcreteKind::Tests ? model_->test_one() : model_->topp_top();
}

TestSet GaloisInsertion::conc_bottom() const {
  return kind_ == ConcreteKind::Tests ? model_->test_zero()
                                      : model_->topp_bottom();
}

std::vector<TestSet> GaloisInsertion::conc_all(std::size_t limit) const {
  return kind_ == ConcreteKind::Tests ? model_->all_tests(limit)
                                      : model_->all_topp(limit);
}

void GaloisInsertion::finish() {
  int k = size();
  leq_.assign(k, std::vector<bool>(k, false));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      leq_[a][b] = conc_leq(elems_[a].gamma, elems_[b].gamma);

  // gamma injectivity first: a two-way order between distinct elements would
  // turn the order into a cyclic relation
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (leq_[a][b] && leq_[b][a])
        throw SemanticError("elements '" + elems_[a].name + "' and '" +
                            elems_[b].name + "' have the same concretization");

  auto lub = [&](int a, int b) -> AbsId {
    AbsId best = -1;
    for (int c = 0; c < k; ++c) {
      if (!leq_[a][c] || !leq_[b][c])
        continue;
      if (best < 0 || leq_[c][best])
        best = c;
    }
    if (best < 0 || !leq_[a][best] || !leq_[b][best])
      throw SemanticError("abstract elements '" + elems_[a].name + "' and '" +
                          elems_[b].name + "' have no least upper bound");
    for (int c = 0; c < k; ++c)
      if (leq_[a][c] && leq_[b][c] && !leq_[best][c])
        throw SemanticError("abstract join of '" + elems_[a].name + "' and '" +
                            elems_[b].name + "' is not least");
    return best;
  };
  auto glb = [&](int a, int b) -> AbsId {
    AbsId best = -1;
    for (int c = 0; c < k; ++c) {
      if (!leq_[c][a] || !leq_[c][b])
        continue;
      if (best < 0 || leq_[best][c])
        best = c;
    }
    if (best < 0)
      throw SemanticError("abstract elements '" + elems_[a].name + "' and '" +
                          elems_[b].name + "' have no greatest lower bound");
    for (int c = 0; c < k; ++c)
      if (leq_[c][a] && leq_[c][b] && !leq_[c][best])
        throw SemanticError("abstract meet of '" + elems_[a].name + "' and '" +
                            elems_[b].name + "' is not greatest");
    return best;
  };

  join_.assign(k, std::vector<AbsId>(k, 0));
  meet_.assign(k, std::vector<AbsId>(k, 0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      join_[a][b] = lub(a, b);
      meet_[a][b] = glb(a, b);
    }

  bottom_ = 0;
  top_ = 0;
  for (int a = 1; a < k; ++a) {
    if (leq_[a][bottom_])
      bottom_ = a;
    if (leq_[top_][a])
      top_ = a;
  }
  for (int a = 0; a < k; ++a)
    if (!leq_[bottom_][a] || !leq_[a][top_])
      throw SemanticError("abstract poset lacks a bottom or top element");

  // longest chain by DP over the order
  std::vector<std::size_t> depth(k, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != b && leq_[a][b] && depth[a] + 1 > depth[b]) {
          depth[b] = depth[a] + 1;
          changed = true;
        }
  }
  height_ = *std::max_element(depth.begin(), depth.end());
}

AbsId GaloisInsertion::alpha(const TestSet &c) const {
  auto it = alpha_override_.find(c);
  if (it != alpha_override_.end())
    return it->second;
  AbsId acc = top_;
  for (int a = 0; a < size(); ++a)
    if (conc_leq(c, elems_[a].gamma))
      acc = meet_[acc][a];
  if (!conc_leq(c, elems_[acc].gamma))
    throw SemanticError("domain is not meet-closed: no best abstraction");
  return acc;
}

TestSet GaloisInsertion::closure(const TestSet &c) const {
  return elems_[alpha(c)].gamma;
}

GaloisInsertion GaloisInsertion::make_raw(const Model &m, ConcreteKind kind,
                                          std::vector<TableElem> elems,
                                          std::map<TestSet, AbsId> overrides) {
  if (elems.empty())
    throw SemanticError("abstract domain needs at least one element");
  GaloisInsertion d;
  d.model_ = &m;
  d.kind_ = kind;
  d.elems_ = std::move(elems);
  d.alpha_override_ = std::move(overrides);
  d.finish();
  return d;
}

GaloisInsertion GaloisInsertion::trivial(const Model &m, ConcreteKind kind) {
  GaloisInsertion d;
  d.model_ = &m;
  d.kind_ = kind;
  d.elems_.push_back({"top", kind == ConcreteKind::Tests ? m.test_one()
                                                         : m.topp_top()});
  d.finish();
  return d;
}

GaloisInsertion GaloisInsertion::parity(const Model &m) {
  if (m.kind() != ModelKind::GuardedStringTests || m.gs_tests().size() != 2)
    throw SemanticError("parity domain needs the two-test guarded-string model");
  auto atoms_with_parity = [&](int par) {
    TestSet p(m.gs_atom_count());
    for (int a = 0; a < m.gs_atom_count(); ++a)
      if (__builtin_popcount(static_cast<unsigned>(a)) % 2 == par)
        p.set(a);
    return p;
  };
  GaloisInsertion d;
  d.model_ = &m;
  d.kind_ = ConcreteKind::Tests;
  d.elems_.push_back({"bot", m.test_zero()});
  d.elems_.push_back({"e", atoms_with_parity(0)});
  d.elems_.push_back({"o", atoms_with_parity(1)});
  d.elems_.push_back({"top", m.test_one()});
  d.finish();
  return d;
}

GaloisInsertion GaloisInsertion::sign(const Model &m, ConcreteKind kind) {
  if (m.kind() != ModelKind::RelationalFull)
    throw SemanticError("sign domain needs a relational model");
  if (m.carrier_lo() > 0 || m.carrier_hi() < 0)
    throw SemanticError("sign domain needs a carrier containing 0");
  auto subset = [&](auto pred) {
    TestSet p(m.carrier_size());
    for (int i = 0; i < m.carrier_size(); ++i)
      if (pred(m.point_value(i)))
        p.set(i);
    return p;
  };
  std::vector<TableElem> raw{
      {"empty", subset([](int) { return false; })},
      {"Z=0", subset([](int z) { return z == 0; })},
      {"Z<0", subset([](int z) { return z < 0; })},
      {"Z>0", subset([](int z) { return z > 0; })},
      {"Z<=0", subset([](int z) { return z <= 0; })},
      {"Z>=0", subset([](int z) { return z >= 0; })},
      {"Z!=0", subset([](int z) { return z != 0; })},
      {"Z", subset([](int) { return true; })},
  };
  // carriers without negatives (or positives) collapse some concretizations;
  // gamma must stay injective, so keep the first name for each set
  std::vector<TableElem> elems;
  for (auto &e : raw) {
    bool dup = false;
    for (auto &f : elems)
      if (f.gamma == e.gamma)
        dup = true;
    if (!dup)
      elems.push_back(std::move(e));
  }
  GaloisInsertion d;
  d.model_ = &m;
  d.kind_ = kind;
  d.elems_ = std::move(elems);
  d.finish();
  return d;
}

GaloisInsertion GaloisInsertion::interval(const Model &m, ConcreteKind kind) {
  if (m.kind() != ModelKind::RelationalFull)
    throw SemanticError("interval domain needs a relational model");
  GaloisInsertion d;
  d.model_ = &m;
  d.kind_ = kind;
  d.elems_.push_back({"bot", m.test_zero()});
  for (int l = m.carrier_lo(); l <= m.carrier_hi(); ++l)
    for (int u = l; u <= m.carrier_hi(); ++u) {
      TestSet p(m.carrier_size());
      for (int z = l; z <= u; ++z)
        p.set(m.point_index(z));
      d.elems_.push_back(
          {"[" + std::to_string(l) + "," + std::to_string(u) + "]", std::move(p)});
    }
  d.finish();
  return d;
}

GaloisInsertion GaloisInsertion::from_table(
    const Model &m, ConcreteKind kind, std::vector<TableElem> elems,
    const std::vector<std::pair<std::string, std::string>> &order) {
  GaloisInsertion d = make_raw(m, kind, std::move(elems));
  // gamma injective
  for (int a = 0; a < d.size(); ++a)
    for (int b = a + 1; b < d.size(); ++b)
      if (d.gamma(a) == d.gamma(b))
        throw SemanticError("elements '" + d.name_of(a) + "' and '" +
                            d.name_of(b) + "' have the same concretization");
  // the top of the concrete lattice must be representable
  if (d.gamma(d.top()) != d.conc_top())
    throw SemanticError("domain has no element concretizing to the full lattice");
  // meets must be preserved, otherwise alpha is not an adjoint
  if (d.concrete_kind() == ConcreteKind::Tests) {
    for (int a = 0; a < d.size(); ++a)
      for (int b = 0; b < d.size(); ++b)
        if (d.model().test_meet(d.gamma(a), d.gamma(b)) !=
            d.gamma(d.meet(a, b)))
          throw SemanticError("concretizations of '" + d.name_of(a) +
                              "' and '" + d.name_of(b) +
                              "' have a meet outside the domain");
  }
  // declared order lines must agree with the concretization order
  auto id_of = [&](const std::string &n) {
    for (int a = 0; a < d.size(); ++a)
      if (d.name_of(a) == n)
        return a;
    throw SemanticError("unknown abstract element '" + n + "' in order line");
  };
  for (const auto &[lo, hi] : order)
    if (!d.leq(id_of(lo), id_of(hi)))
      throw SemanticError("declared order " + lo + " <= " + hi +
                          " contradicts the concretizations");
  return d;
}

AxiomReport GaloisInsertion::check_galois(std::size_t limit,
                                          std::size_t samples,
                                          std::uint64_t seed) const {
  AxiomReport rep;
  std::vector<TestSet> conc;
  bool exhaustive = true;
  try {
    conc = conc_all(limit);
  } catch (const SemanticError &) {
    exhaustive = false;
    std::mt19937_64 rng(seed);
    std::size_t u = model_->universe_size();
    for (std::size_t i = 0; i < samples; ++i) {
      TestSet p(u);
      for (std::size_t k = 0; k < u; ++k)
        if (rng() & 1)
          p.set(k);
      conc.push_back(std::move(p));
    }
    for (int a = 0; a < size(); ++a)
      conc.push_back(elems_[a].gamma); // keep the image in the sample
    rep.sampled = true;
  }

  auto rec = [&](const std::string &f, bool pass, std::string w) {
    rep.results.push_back({f, pass, exhaustive, std::move(w)});
  };

  {
    bool ok = true;
    std::string w;
    for (int a = 0; a < size() && ok; ++a)
      for (int b = 0; b < size() && ok; ++b)
        if (leq(a, b) && !conc_leq(gamma(a), gamma(b))) {
          ok = false;
          w = name_of(a) + " <= " + name_of(b);
        }
    rec("gamma-monotone", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    for (int a = 0; a < size() && ok; ++a)
      if (alpha(gamma(a)) != a) {
        ok = false;
        w = name_of(a) + " -> " + name_of(alpha(gamma(a)));
      }
    rec("alpha-gamma-identity", ok, w);
  }
  std::vector<AbsId> alphas(conc.size());
  for (std::size_t i = 0; i < conc.size(); ++i)
    alphas[i] = alpha(conc[i]);

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < conc.size(); ++i) {
      const TestSet &cl = gamma(alphas[i]);
      if (!conc_leq(conc[i], cl) || closure(cl) != cl) {
        ok = false;
        w = show_test(*model_, conc[i]);
        break;
      }
    }
    rec("closure-extensive-idempotent", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    bool pairs_exh = exhaustive && conc.size() * conc.size() <= 1'000'000;
    auto chk = [&](std::size_t i, std::size_t j) {
      if (conc_leq(conc[i], conc[j]) && !leq(alphas[i], alphas[j])) {
        ok = false;
        w = show_test(*model_, conc[i]) + " <= " + show_test(*model_, conc[j]);
        return;
      }
      if (alpha(conc_join(conc[i], conc[j])) != join_[alphas[i]][alphas[j]]) {
        ok = false;
        w = "join of " + show_test(*model_, conc[i]) + " and " +
            show_test(*model_, conc[j]);
      }
    };
    if (pairs_exh) {
      for (std::size_t i = 0; i < conc.size() && ok; ++i)
        for (std::size_t j = 0; j < conc.size() && ok; ++j)
          chk(i, j);
    } else {
      std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
      for (std::size_t k = 0; k < samples && ok; ++k)
        chk(rng() % conc.size(), rng() % conc.size());
    }
    rep.results.push_back({"alpha-monotone-additive", ok, pairs_exh, w});
    if (!pairs_exh)
      rep.sampled = true;
  }
  // adjunction: alpha(c) is the least element covering c
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < conc.size(); ++i) {
      AbsId ac = alphas[i];
      if (!conc_leq(conc[i], gamma(ac))) {
        ok = false;
        w = show_test(*model_, conc[i]) + " not below gamma(" + name_of(ac) + ")";
        break;
      }
      for (int b = 0; b < size(); ++b)
        if (conc_leq(conc[i], gamma(b)) && !leq(ac, b)) {
          ok = false;
          w = show_test(*model_, conc[i]) + ": alpha=" + name_of(ac) +
              " not below cover " + name_of(b);
          break;
        }
      if (!ok)
        break;
    }
    rec("alpha-adjoint", ok, w);
  }
  return rep;
}

} // namespace katlcl
