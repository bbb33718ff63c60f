// Shared fixtures: small models with handy atom sets, plus random generators
// for property suites.
#pragma once

#include <random>

#include "katlcl/loader.hpp"

namespace katlcl::testing {

// two-test guarded-string model with one action
inline LoadedModel gs2() {
  return load_model_text("model guarded-strings b1 b2\naction u\n", "gs2");
}

// relational interval with a successor, a nondeterministic hop, an always-err
// atom and two guards
inline LoadedModel rel_lm(int lo, int hi) {
  std::string text = "model relational\ncarrier " + std::to_string(lo) + " " +
                     std::to_string(hi) +
                     "\n"
                     "action inc ok succ\n"
                     "action error ok empty err full\n"
                     "test geq0 ok ge 0\n"
                     "test lt0 ok lt 0\n";
  return load_model_text(text, "rel");
}

// the carrier-{0,1} grid model used by the exhaustive suites: no relation can
// ever step from 1 back to 0, so every term's image chain stabilizes
inline LoadedModel grid01() {
  return load_model_text("model relational\n"
                         "carrier 0 1\n"
                         "action inc ok succ\n"
                         "action u ok pairs (0,0)(0,1)\n"
                         "action error ok empty err full\n"
                         "test b ok lt 1\n",
                         "grid01");
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::size_t below(std::size_t n) { return eng() % n; }
  bool flip() { return eng() & 1; }
};

inline TestSet random_test(Rng &rng, const Model &m) {
  TestSet p(m.universe_size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (rng.flip())
      p.set(i);
  return p;
}

inline TermPtr random_term(Rng &rng, const std::vector<Atom> &atoms,
                           std::size_t max_size) {
  if (max_size <= 1) {
    std::size_t k = rng.below(atoms.size() + 2);
    if (k == atoms.size())
      return Term::mk_zero();
    if (k == atoms.size() + 1)
      return Term::mk_one();
    return Term::mk_atom(atoms[k]);
  }
  switch (rng.below(4)) {
  case 0:
    return random_term(rng, atoms, 1);
  case 1:
    return Term::mk_star(random_term(rng, atoms, max_size - 1));
  case 2: {
    std::size_t ls = 1 + rng.below(max_size - 1);
    return Term::mk_plus(random_term(rng, atoms, ls),
                         random_term(rng, atoms, max_size - 1 - ls + 1));
  }
  default: {
    std::size_t ls = 1 + rng.below(max_size - 1);
    return Term::mk_seq(random_term(rng, atoms, ls),
                        random_term(rng, atoms, max_size - 1 - ls + 1));
  }
  }
}

inline std::vector<Atom> atoms_of_model(const LoadedModel &lm) {
  std::vector<Atom> out;
  for (const auto &n : lm.sigma)
    out.push_back({AtomKind::Action, n});
  for (const auto &n : lm.b)
    out.push_back({AtomKind::PrimTest, n});
  return out;
}

// all terms of size <= max over the given leaves (plus the 0/1 literals)
inline std::vector<TermPtr> enumerate_terms(const std::vector<Atom> &atoms,
                                            std::size_t max_size) {
  std::vector<std::vector<TermPtr>> by_size(max_size + 1);
  for (const auto &a : atoms)
    by_size[1].push_back(Term::mk_atom(a));
  by_size[1].push_back(Term::mk_zero());
  by_size[1].push_back(Term::mk_one());
  for (std::size_t s = 2; s <= max_size; ++s) {
    for (const auto &t : by_size[s - 1])
      by_size[s].push_back(Term::mk_star(t));
    for (std::size_t ls = 1; ls < s - 1; ++ls)
      for (const auto &l : by_size[ls])
        for (const auto &r : by_size[s - 1 - ls]) {
          by_size[s].push_back(Term::mk_plus(l, r));
          by_size[s].push_back(Term::mk_seq(l, r));
        }
  }
  std::vector<TermPtr> out;
  for (const auto &v : by_size)
    out.insert(out.end(), v.begin(), v.end());
  return out;
}

} // namespace katlcl::testing
