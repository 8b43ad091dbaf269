#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eqfg/group.hpp"
#include "eqfg/verdict.hpp"

namespace eqfg {

// The G-map G/H -> G/K, xH |-> x·coset·K. Requires coset^-1 H coset ⊆ K;
// `coset` is the canonical (minimal) representative.
struct OrbitMorphism {
  int source = -1;
  int target = -1;
  Element coset = 0;

  auto operator<=>(const OrbitMorphism&) const = default;
};

// Orb(G, F), fully enumerated at construction.
class OrbitCategory {
 public:
  OrbitCategory(SubgroupLattice lattice, SubgroupFamily family);

  const SubgroupLattice& lattice() const { return lattice_; }
  const FiniteGroup& group() const { return lattice_.group(); }
  const SubgroupFamily& family() const { return family_; }
  const std::vector<int>& objects() const { return family_.members; }

  // Throws ObjectNotInFamily.
  const std::vector<OrbitMorphism>& hom(int h, int k) const;

  // Every morphism, ordered by (source, target, coset).
  const std::vector<OrbitMorphism>& morphisms() const { return morphisms_; }
  int index_of(const OrbitMorphism& m) const;  // throws UnknownMorphism
  bool contains(const OrbitMorphism& m) const;

  OrbitMorphism identity(int h) const { return {h, h, lattice_.canonical(group().identity(), h)}; }
  bool is_identity(const OrbitMorphism& m) const {
    return m.source == m.target && m.coset == lattice_.canonical(group().identity(), m.target);
  }

  // beta ∘ alpha: xH |-> x·a·b·L. Throws NotComposable.
  OrbitMorphism compose(const OrbitMorphism& beta, const OrbitMorphism& alpha) const;

  // alpha(gH) as the canonical representative of g·a·K.
  Element apply(const OrbitMorphism& alpha, Element g) const;

  // "H1 -> H2 via (0 1)·H2"
  std::string describe(const OrbitMorphism& m) const;

  // Identity and associativity laws over every composable pair and triple.
  std::vector<Check> check_laws() const;

 private:
  void require_object(int h) const;

  SubgroupLattice lattice_;
  SubgroupFamily family_;
  std::map<std::pair<int, int>, std::vector<OrbitMorphism>> homs_;
  std::vector<OrbitMorphism> morphisms_;
  std::map<OrbitMorphism, int> index_;
};

std::shared_ptr<const OrbitCategory> build_category(const FiniteGroup& g, const SubgroupFamily& family);

// All cosets gK with g^-1 H g ⊆ K.
std::vector<OrbitMorphism> hom_set(const OrbitCategory& c, int h, int k);

}  // namespace eqfg
