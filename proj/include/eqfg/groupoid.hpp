#pragma once

// Finitely presented groupoids: objects, generating arrows and relator
// loops. Vertex groups are usually infinite (Z, Z^2), so everything works on
// presentations. Isomorphism questions are undecidable in general; the
// decision procedures here answer Verified / Refuted / Undecided, and a
// Refuted answer always carries a computable witness.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqfg/linalg.hpp"
#include "eqfg/verdict.hpp"

namespace eqfg {

struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1

  Letter inverse() const { return {generator, -exponent}; }
  bool operator==(const Letter&) const = default;
};

// A word in a one-object presentation.
using GroupWord = std::vector<Letter>;

// A path in a groupoid. `start` pins the object, so the empty word at an
// object is representable.
struct Word {
  int start = 0;
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const Word&) const = default;
};

struct Generator {
  std::string label;
  int source = 0;
  int target = 0;

  bool operator==(const Generator&) const = default;
};

struct PresentedGroupoid {
  std::vector<std::string> objects;
  std::vector<Generator> generators;
  std::vector<Word> relators;  // closed loops

  bool empty() const { return objects.empty(); }
  int object_count() const { return static_cast<int>(objects.size()); }
  int generator_count() const { return static_cast<int>(generators.size()); }
  std::optional<int> find_object(std::string_view label) const;
  std::optional<int> find_generator(std::string_view label) const;

  bool operator==(const PresentedGroupoid&) const = default;
};

// One object, the given generators as loops, the given relators.
PresentedGroupoid one_object_groupoid(const std::string& object,
                                      const std::vector<std::string>& generators,
                                      const std::vector<GroupWord>& relators);

// Throws DuplicateLabel, DanglingReference, NotComposable or NotClosed.
void validate_groupoid(const PresentedGroupoid& p);

int letter_source(const PresentedGroupoid& p, const Letter& l);
int letter_target(const PresentedGroupoid& p, const Letter& l);
// End object of a composable word; throws NotComposable.
int word_end(const PresentedGroupoid& p, const Word& w);

// Cancels adjacent inverse pairs to a fixed point. Throws NotComposable.
Word free_reduce(const PresentedGroupoid& p, const Word& w);
GroupWord free_reduce(GroupWord w);
// Free reduction followed by cancelling inverse pairs across the ends.
GroupWord cyclic_reduce(GroupWord w);
GroupWord inverse(const GroupWord& w);
Word inverse(const PresentedGroupoid& p, const Word& w);
Word concat(const PresentedGroupoid& p, const Word& a, const Word& b);
// Replaces every letter of `w` by the corresponding word in `images`.
GroupWord substitute(const GroupWord& w, const std::vector<GroupWord>& images);

// Lexicographically least rotation of the word or its inverse, after
// cyclic reduction. Two relators define the same normal closure element up
// to conjugacy and inversion iff their canonical forms agree.
GroupWord canonical_cyclic(const GroupWord& w);

std::string format_word(const PresentedGroupoid& p, const Word& w);
std::string format_group_word(const std::vector<std::string>& names, const GroupWord& w);

// Whitespace-separated tokens "g", "g^-1", "g^n"; "1" is the empty word.
// Throws SyntaxError or DanglingReference.
GroupWord parse_group_word(std::string_view text, const std::vector<std::string>& names);
// As above, over the generators of `p`. The start object is taken from the
// first letter; `start` is required for the empty word and checked
// otherwise. Throws NotComposable for broken paths.
Word parse_word(const PresentedGroupoid& p, std::string_view text, std::optional<int> start = std::nullopt);

struct Components {
  std::vector<int> component_of;          // per object
  std::vector<std::vector<int>> members;  // sorted, ordered by least member

  int count() const { return static_cast<int>(members.size()); }
};

// Connected components under the generating arrows, ignoring direction.
Components components(const PresentedGroupoid& p);

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<GroupWord> relators;

  bool operator==(const GroupPresentation&) const = default;
};

// Relators x generators exponent-sum matrix.
IntMatrix relator_matrix(const GroupPresentation& g);
AbelianGroup abelianization(const GroupPresentation& g);

// Result of Tietze generator elimination: a smaller presentation of the same
// group and, for every generator of the input, its value as a word in the
// surviving generators.
struct SimplifiedPresentation {
  GroupPresentation presentation;
  std::vector<GroupWord> substitution;
};

// Repeatedly solves a relator for a generator occurring in it exactly once,
// shortest relator first. Drops trivial and duplicate relators.
SimplifiedPresentation simplify(const GroupPresentation& g);

// Sufficient test: at most one generator, or every pair of generators has a
// commutator among the relators.
bool evidently_abelian(const GroupPresentation& g);

// Vertex group at `base` via a breadth-first spanning tree of its component
// (from `base`, generators in declaration order). The free generators are the
// component's non-tree generators, named after them.
struct IsotropyPresentation {
  int base = 0;
  std::vector<int> objects;      // the component, in BFS order
  std::vector<bool> in_tree;     // per generator of the groupoid
  std::vector<int> slot;         // per generator: free generator index or -1
  std::vector<Word> tree_path;   // per object in the component: base -> object
  GroupPresentation presentation;

  // Loop at any object of the component -> word in the free generators
  // (conjugated to the base along the tree).
  GroupWord rewrite(const Word& loop) const;
  // The loop at `base` represented by free generator `index`.
  Word loop(const PresentedGroupoid& p, int index) const;
};

// Throws ObjectNotFound.
IsotropyPresentation isotropy_presentation(const PresentedGroupoid& p, int object);
AbelianGroup abelianized_isotropy(const PresentedGroupoid& p, int object);

// Per-component isotropy data computed once for a groupoid, used to compare
// words and decide triviality of loops.
class GroupoidOracle {
 public:
  struct Component {
    IsotropyPresentation isotropy;
    SimplifiedPresentation simplified;
    AbelianGroup abelian_invariants;
    bool abelian = false;
    SmithForm<Integer> relation_lattice;  // of the simplified relators, transposed
  };

  explicit GroupoidOracle(PresentedGroupoid p);

  const PresentedGroupoid& groupoid() const { return groupoid_; }
  const Components& components() const { return components_; }
  const Component& component(int index) const { return data_.at(static_cast<std::size_t>(index)); }
  const Component& component_of(int object) const;

  // Loop -> word in the simplified generators of its component.
  GroupWord to_group_word(const Word& loop) const;
  IntVector abelianize(const Word& loop) const;

  // Whether a loop represents the identity arrow.
  Verdict trivial(const Word& loop) const;
  // Whether two paths represent the same arrow.
  Verdict equal(const Word& a, const Word& b) const;

 private:
  PresentedGroupoid groupoid_;
  Components components_;
  std::vector<Component> data_;
};

struct GroupoidMorphism {
  PresentedGroupoid source;
  PresentedGroupoid target;
  std::vector<int> object_map;
  std::vector<Word> generator_map;  // words in the target

  bool operator==(const GroupoidMorphism&) const = default;
};

GroupoidMorphism identity_morphism(const PresentedGroupoid& p);

// Throws MalformedMorphism / NotComposable when images do not run between
// the mapped endpoints.
void validate_morphism(const GroupoidMorphism& t);

// Image of a source path, freely reduced.
Word apply(const GroupoidMorphism& t, const Word& w);

// t2 ∘ t1. Throws NotComposable.
GroupoidMorphism compose_morphisms(const GroupoidMorphism& t2, const GroupoidMorphism& t1);

// Verified when every relator image reduces to the empty word, or vanishes in
// the abelianized isotropy of a target component known to be abelian;
// Refuted when an image is nonzero in the abelianization; else Undecided.
Verdict check_respects_relations(const GroupoidMorphism& t);

// Equivalence test: bijection on components plus, per source component, an
// isomorphism of isotropy groups decided for free, abelian, or identical
// presentations.
Verdict equivalence_report(const GroupoidMorphism& t);

// An equivalence that is bijective on objects is an isomorphism.
Verdict strict_isomorphism(const GroupoidMorphism& t);

// Objects as nodes, generators as labeled directed edges.
std::string to_dot(const PresentedGroupoid& p, const std::string& name);

}  // namespace eqfg
