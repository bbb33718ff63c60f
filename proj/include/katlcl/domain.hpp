// Galois insertions between a model's concrete lattice and a finite abstract
// lattice. The concrete side is either the test lattice or, for TopKAT
// reasoning, the lattice of T.a codomains; both share the TestSet encoding.
//
// Abstract elements are small integer ids. The abstract order is the
// concretization order (gamma is an order embedding in any insertion), and
// alpha is the adjoint: the least element whose concretization covers the
// input. Built-in domains are correct by construction; table-defined domains
// are validated on load.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "katlcl/model.hpp"

namespace katlcl {

enum class ConcreteKind { Tests, ToppCodomains };

using AbsId = int;

class GaloisInsertion {
public:
  struct TableElem {
    std::string name;
    TestSet gamma;
  };

  // gamma(top abstract element) = 1 (or the full codomain); alpha constant.
  static GaloisInsertion trivial(const Model &m, ConcreteKind kind);
  // The four-element even/odd domain of the two-test guarded-string model.
  static GaloisInsertion parity(const Model &m);
  // Eight signs (deduplicated on small carriers where concretizations clash).
  static GaloisInsertion sign(const Model &m, ConcreteKind kind);
  // Bottom plus every [l,u] inside the carrier.
  static GaloisInsertion interval(const Model &m, ConcreteKind kind);
  // User-supplied gamma table; insertion laws validated, declared order
  // checked against the concretization order.
  static GaloisInsertion
  from_table(const Model &m, ConcreteKind kind, std::vector<TableElem> elems,
             const std::vector<std::pair<std::string, std::string>> &order);
  // No validation; also accepts alpha overrides. Exists for fault-injection
  // tests against check_galois.
  static GaloisInsertion make_raw(const Model &m, ConcreteKind kind,
                                  std::vector<TableElem> elems,
                                  std::map<TestSet, AbsId> overrides = {});

  const Model &model() const { return *model_; }
  ConcreteKind concrete_kind() const { return kind_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const std::string &name_of(AbsId a) const { return elems_[a].name; }
  const TestSet &gamma(AbsId a) const { return elems_[a].gamma; }

  bool leq(AbsId a, AbsId b) const { return leq_[a][b]; }
  AbsId join(AbsId a, AbsId b) const { return join_[a][b]; }
  AbsId meet(AbsId a, AbsId b) const { return meet_[a][b]; }
  AbsId bottom() const { return bottom_; }
  AbsId top() const { return top_; }
  // Longest strictly increasing chain length in the abstract lattice.
  std::size_t height() const { return height_; }

  AbsId alpha(const TestSet &c) const;
  TestSet closure(const TestSet &c) const; // gamma . alpha

  // Concrete lattice operations routed through the model for this kind.
  bool conc_leq(const TestSet &c, const TestSet &d) const;
  TestSet conc_join(const TestSet &c, const TestSet &d) const;
  TestSet conc_top() const;
  TestSet conc_bottom() const;
  std::vector<TestSet> conc_all(std::size_t limit = (1u << 20)) const;

  // Monotonicity of alpha/gamma, alpha.gamma = id, extensivity, idempotence
  // and join preservation, exhaustively when the concrete lattice fits in
  // `limit`, otherwise on `samples` random draws (flagged).
  AxiomReport check_galois(std::size_t limit = (1u << 16),
                           std::size_t samples = 4096,
                           std::uint64_t seed = 0x5eed) const;

private:
  void finish(); // derive order/join/meet tables from the gammas

  const Model *model_ = nullptr;
  ConcreteKind kind_ = ConcreteKind::Tests;
  std::vector<TableElem> elems_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<AbsId>> join_, meet_;
  AbsId bottom_ = 0, top_ = 0;
  std::size_t height_ = 1;
  std::map<TestSet, AbsId> alpha_override_;
};

} // namespace katlcl
