#pragma once

// Finite G-CW complexes of dimension at most 3 in combinatorial form. Edges
// carry endpoints, 2-cells attach along closed edge paths, 3-cells carry a
// cellular boundary chain. G acts by signed cell permutations.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqfg/group.hpp"
#include "eqfg/groupoid.hpp"
#include "eqfg/linalg.hpp"
#include "eqfg/verdict.hpp"

namespace eqfg {

struct SignedCell {
  int cell = 0;
  int sign = 1;

  bool operator==(const SignedCell&) const = default;
};

// Integer combination of cells of one dimension, (cell, coefficient).
using Chain = std::vector<std::pair<int, int>>;

// Sorted by cell, zero coefficients dropped.
Chain normalize(Chain c);

struct GCellComplex {
  FiniteGroup group;
  std::array<std::vector<std::string>, 4> cells;  // labels per dimension
  std::vector<std::pair<int, int>> edge_ends;     // (source, target) vertex
  std::vector<Word> face_words;                   // letters are edges
  std::vector<Chain> solid_boundaries;            // over 2-cells
  // action[dim][g][cell]; empty means the trivial action.
  std::array<std::vector<std::vector<SignedCell>>, 4> action;

  int count(int dim) const { return static_cast<int>(cells.at(static_cast<std::size_t>(dim)).size()); }
  int dimension() const;
  SignedCell act(int dim, Element g, int cell) const;
  std::optional<int> find(int dim, std::string_view label) const;

  // Vertices and edges as a presented groupoid with no relators. Face words
  // are words in it.
  PresentedGroupoid one_skeleton() const;

  bool operator==(const GCellComplex&) const = default;
};

// Fills `action` with the identity for every dimension.
void set_trivial_action(GCellComplex& x);

// boundary[k] maps (k+1)-chains to k-chains, k = 0, 1, 2.
std::array<IntMatrix, 3> boundary_matrices(const GCellComplex& x);
// H_0 .. H_3 over Z.
std::vector<AbelianGroup> cellular_homology(const GCellComplex& x);
int euler_characteristic(const GCellComplex& x);

// Structural checks, each as a named verdict: attaching data, d∘d = 0, the
// action is a homomorphism, commutes with attaching data, and is rigid
// (a cell mapped to itself is fixed with its boundary).
std::vector<Check> validate_complex(const GCellComplex& x);
// Throws the first failing check as an Error.
void require_valid(const GCellComplex& x);

// One vertex per object, one edge per generator, one 2-cell per relator.
GCellComplex presentation_complex(const PresentedGroupoid& p);
PresentedGroupoid fundamental_groupoid(const GCellComplex& x);

// A subcomplex with trivial group, plus the index of each cell in the
// ambient complex.
struct Subcomplex {
  GCellComplex complex;
  std::array<std::vector<int>, 4> embedding;
};

// Cells fixed with sign +1 by every element of h.
Subcomplex fixed_subcomplex(const GCellComplex& x, const Subgroup& h);

// A cellular map between complexes with trivial group. Edges go to edge
// paths; 2-cells to 2-chains when those are known.
struct CellularMap {
  GCellComplex source;
  GCellComplex target;
  std::vector<int> vertex_map;
  std::vector<Word> edge_map;
  std::optional<std::vector<Chain>> face_map;
};

// Edge paths must run between the mapped endpoints; face chains must have the
// boundary of the mapped attaching word. Throws NotCellular.
void validate_cellular_map(const CellularMap& f);

// The cellular map |source| -> |target| of a groupoid morphism between the
// presentation complexes. The 2-cell part is filled in when the morphism is
// rigid: every generator goes to a generator, its inverse or an identity,
// and every relator to a target relator up to rotation and inversion, or to
// the empty word. Throws RelationsRefuted when a relator image is provably
// nontrivial.
CellularMap realize_morphism(const GroupoidMorphism& t);

// Mapping cylinder of f: A -> B. Cells: B, then A (the free end), then
// v×I, e×I, c×I. v×I runs from the A-copy of v to f(v).
struct MappingCylinder {
  GCellComplex complex;
  std::array<std::vector<int>, 4> free_end;  // A cell -> cylinder cell
  std::array<std::vector<int>, 4> base;      // B cell -> cylinder cell
  std::array<std::vector<int>, 3> vertical;  // A cell of dim k -> (k+1)-cell
  bool solids = true;                        // c×I present
};

// Without a face map the c×I cells are omitted (solids = false) unless
// `require_solids`, which throws MissingFaceMap.
MappingCylinder mapping_cylinder(const CellularMap& f, bool require_solids = false);

// G/H × C for a complex C with trivial group: one copy per coset, in the
// order of the canonical representatives, G permuting the copies.
// Cell (i, c) has index i * count(dim) + c.
GCellComplex orbit_product(const GCellComplex& c, const SubgroupLattice& lattice, int h);

struct Identification {
  int dim = 0;
  int part_a = 0;
  int cell_a = 0;
  int part_b = 0;
  int cell_b = 0;
};

struct Gluing {
  GCellComplex complex;
  // cell_map[part][dim][cell] -> glued cell
  std::vector<std::array<std::vector<int>, 4>> cell_map;
};

// Quotient of the disjoint union by cell identifications, orientation
// preserved. Each class is represented by its first cell in part order.
// Throws IncompatibleIdentification when identified cells attach
// differently or carry different actions.
Gluing glue(const std::vector<GCellComplex>& parts, const std::vector<Identification>& identifications);

struct Contraction {
  GCellComplex complex;
  std::vector<int> vertex_map;  // old vertex -> new vertex
  std::vector<int> edge_map;    // old edge -> new edge or -1
};

// Collapses the given edges, identifying their endpoints and deleting them
// from attaching words. The edge set must be G-invariant.
Contraction contract_edges(const GCellComplex& x, const std::vector<int>& edges);

// Cells of dimension 3 dropped.
GCellComplex two_skeleton(const GCellComplex& x);

std::string to_dot(const GCellComplex& x, const std::string& name);

}  // namespace eqfg
