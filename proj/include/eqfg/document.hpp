#pragma once

// Input documents: a group, a family, named groupoids, an optional functor
// and named complexes. The text format is YAML (see docs/format.md); `export`
// writes the same content as JSON.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqfg/complex.hpp"
#include "eqfg/functor.hpp"
#include "eqfg/group.hpp"
#include "eqfg/groupoid.hpp"
#include "eqfg/orbit_category.hpp"

namespace eqfg {

struct FamilySpec {
  enum class Kind { All, Trivial, Fin, Explicit };
  Kind kind = Kind::All;
  std::vector<int> members;  // subgroup ids, explicit families only

  bool operator==(const FamilySpec&) const = default;
};

struct ArrowSpec {
  OrbitMorphism morphism;
  GroupoidMorphism arrow;  // value(target) -> value(source)

  bool operator==(const ArrowSpec&) const = default;
};

struct FunctorSpec {
  std::map<int, std::string> values;  // subgroup id -> groupoid name
  std::vector<ArrowSpec> arrows;

  bool operator==(const FunctorSpec&) const = default;
};

struct Document {
  FiniteGroup group;
  FamilySpec family;
  std::vector<std::pair<std::string, PresentedGroupoid>> groupoids;
  std::optional<FunctorSpec> functor;
  std::vector<std::pair<std::string, GCellComplex>> complexes;

  const PresentedGroupoid* find_groupoid(std::string_view name) const;
  const GCellComplex* find_complex(std::string_view name) const;

  bool operator==(const Document&) const = default;
};

// Throws SyntaxError, DanglingReference or SchemaViolation with the line
// and column of the offending node. Group table defects surface with their
// own codes (NotAssociative, ...).
Document parse_document(std::string_view text);
Document read_document(const std::string& path);

std::string render_document(const Document& d);
nlohmann::ordered_json to_json(const Document& d);

// Throws EmptyFamily, NotConjugationClosed or NotSubgroupClosed.
SubgroupFamily resolve_family(const Document& d, const SubgroupLattice& lattice);

// Throws SchemaViolation when the document has no functor section.
OrbFunctor build_functor(const Document& d);

// The functor as a document: one groupoid per subgroup and an arrow for
// every non-identity morphism.
Document functor_document(const OrbFunctor& f);

}  // namespace eqfg
