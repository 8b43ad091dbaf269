#pragma once

// Contravariant functors Orb(G, F) -> groupoids, natural transformations
// between them, and the functor X |-> Π(X^H) of a G-complex.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eqfg/complex.hpp"
#include "eqfg/groupoid.hpp"
#include "eqfg/orbit_category.hpp"
#include "eqfg/verdict.hpp"

namespace eqfg {

// arrows[i] belongs to category->morphisms()[i]; for α: G/H -> G/K it maps
// value(K) to value(H).
struct OrbFunctor {
  std::shared_ptr<const OrbitCategory> category;
  std::map<int, PresentedGroupoid> values;  // keyed by subgroup id
  std::vector<GroupoidMorphism> arrows;

  // Empty groupoid for subgroups outside the family.
  const PresentedGroupoid& value(int h) const;
  const GroupoidMorphism& arrow(const OrbitMorphism& m) const;
};

// Builds a functor from values on the family and arrows on a generating set
// of morphisms. Identities are implied; the rest are composites. Throws
// MissingArrow when a morphism is not reachable, MissingValue when a family
// member has no value.
OrbFunctor complete_functor(std::shared_ptr<const OrbitCategory> category, std::map<int, PresentedGroupoid> values,
                            const std::map<int, GroupoidMorphism>& given);

// Two morphisms with the same source and target, generator by generator.
Verdict compare_morphisms(const GroupoidMorphism& a, const GroupoidMorphism& b);

// Each arrow respects relations, identities go to identities and
// arrow(β∘α) = arrow(α)∘arrow(β) for every composable pair.
std::vector<Check> validate_functoriality(const OrbFunctor& f);

// Π(X^H) for every subgroup, with the maps x |-> a·x for α = (H, K, a).
// The family is all subgroups.
OrbFunctor induced_functor_from_complex(const GCellComplex& x);

struct NaturalTransformation {
  OrbFunctor source;
  OrbFunctor target;
  std::map<int, GroupoidMorphism> components;  // source value(H) -> target value(H)
};

// component(H) ∘ source.arrow(α) = target.arrow(α) ∘ component(K).
std::vector<Check> validate_naturality(const NaturalTransformation& t);

// The transformation induced by an equivariant cellular map Y -> X that
// sends edges to edges up to orientation, or collapses them (cell -1).
// Throws NotEquivariant.
NaturalTransformation induced_transformation(const GCellComplex& y, const GCellComplex& x,
                                             const std::vector<int>& vertex_map,
                                             const std::vector<SignedCell>& edge_map);

// Equivalence report for every component.
std::vector<Check> equivalence_of_functors(const NaturalTransformation& t);

}  // namespace eqfg
