#pragma once

// From a functor Orb(G, F) -> groupoids to a G-complex whose fixed-set
// fundamental groupoids recover it: the 0-skeleton as a coend, the multiple
// mapping cylinder W, and its quotient X by the vertical edges over vertices.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "eqfg/complex.hpp"
#include "eqfg/functor.hpp"

namespace eqfg {

struct ZeroSkeleton {
  struct Point {
    int subgroup = 0;
    Element coset = 0;  // canonical representative
    int object = 0;     // in value(subgroup)
  };

  std::vector<Point> elements;            // subgroup, coset, object order
  std::vector<int> class_of;              // per element
  std::vector<std::vector<int>> classes;  // ordered by least element
  std::vector<std::string> labels;        // per class, from its least element
  std::vector<std::vector<int>> action;   // [g][class] -> class
  std::vector<std::pair<int, int>> trace; // element pairs whose union merged classes

  int index(int subgroup, Element coset, int object) const;
};

// Union-find quotient of the disjoint union of G/H × Π(H)_0 by
// (α(gH), x) ~ (gH, Π(α)(x)).
ZeroSkeleton zero_skeleton_coend(const OrbFunctor& f);

enum class Step2Kind { Bijection, ProperQuotient, Deficit };
const char* to_string(Step2Kind k);

struct Step2Entry {
  int subgroup = 0;
  Step2Kind kind = Step2Kind::Bijection;
  std::string witness;  // "(v1, v2)" for a merged pair, a class label for a deficit
};

// Compares the H-fixed classes with Π(H)_0 for every H in the family.
std::vector<Step2Entry> verify_step2(const OrbFunctor& f, const ZeroSkeleton& z);

struct CellOrigin {
  enum class Kind { Object, Cylinder };
  Kind kind = Kind::Object;
  int subgroup = 0;        // H of the copy G/H × ...
  Element coset = 0;       // representative of gH
  int morphism = -1;       // cylinder: index in the orbit category
  int cell = 0;            // object: cell of |Π(H)|; cylinder: cell of |Π(K)| it is vertical over

  bool operator==(const CellOrigin&) const = default;
};

struct RealizeOptions {
  int max_dim = 3;
};

struct RealizationResult {
  ZeroSkeleton zero_skeleton;
  std::vector<Step2Entry> step2;
  GCellComplex cylinder_space;  // W
  GCellComplex space;           // X
  std::array<std::vector<CellOrigin>, 4> cylinder_provenance;
  // Cells of X point back to the cell of W they came from; a vertex of X to
  // the least vertex of its class.
  std::array<std::vector<int>, 4> space_origin;
  // H -> cells of X holding the identity-coset copy of |Π(H)|.
  std::map<int, std::array<std::vector<int>, 4>> identity_copy;
  bool solids = true;
  std::vector<std::string> notes;

  const CellOrigin& provenance(int dim, int cell) const {
    return cylinder_provenance.at(static_cast<std::size_t>(dim))
        .at(static_cast<std::size_t>(space_origin.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(cell))));
  }
};

// Throws RelationsRefuted when an arrow provably breaks a relation.
RealizationResult build_space(const OrbFunctor& f, const RealizeOptions& options = {});

// Compares each value with Π(X^H) through the identity-coset copies: an
// equivalence and a strict isomorphism check per subgroup, and the
// naturality square of every arrow. Checks at subgroups where the 0-skeleton
// is not a bijection are reported but not counted.
std::vector<Check> verify_fundamental_functor(const OrbFunctor& f, const RealizationResult& result);

}  // namespace eqfg
