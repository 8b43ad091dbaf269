#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqfg {

// Elements of a finite group are indices 0..order-1 into its table.
using Element = int;

// Images of 0..degree-1.
using Permutation = std::vector<int>;

// Parses cycle notation such as "(0 1 2)(3 4)" or "()" on `degree` points.
Permutation parse_cycles(std::string_view text, int degree);
std::string format_cycles(const Permutation& p);

// A finite group given by its multiplication table. table[a][b] is the
// product a·b. Immutable after construction.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<Element>>;

  FiniteGroup();  // the trivial group

  // Throws NotAGroupTable (shape/range), NoIdentity, NoInverse or
  // NotAssociative with the witnessing element(s).
  static FiniteGroup from_table(Table table);

  // Closure of the generators. Products compose left to right: (a·b)(x) =
  // b(a(x)). Elements are ordered lexicographically by image list, so the
  // identity is element 0. Labels are cycle notation.
  static FiniteGroup from_permutations(const std::vector<Permutation>& generators, int degree);

  int order() const { return static_cast<int>(table_.size()); }
  Element identity() const { return identity_; }
  Element inverse(Element g) const { return inverse_[static_cast<std::size_t>(g)]; }
  Element mul(Element a, Element b) const {
    return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  // g^-1 · h · g
  Element conjugate(Element g, Element h) const { return mul(mul(inverse(g), h), g); }

  const Table& table() const { return table_; }
  const std::string& label(Element g) const { return labels_[static_cast<std::size_t>(g)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Accepts a label or a decimal index.
  std::optional<Element> find(std::string_view label) const;

  // Only set for permutation groups: the degree, the declared generators and
  // the permutation realizing each element.
  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& permutations() const { return permutations_; }

  bool operator==(const FiniteGroup&) const = default;

 private:
  Table table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> permutations_;
};

struct Subgroup {
  std::vector<Element> elements;  // sorted
  int id = -1;                    // index in the enumerated lattice

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(Element g) const;
  bool operator==(const Subgroup&) const = default;
};

// All subgroups, ordered by order and then lexicographically by element list.
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g);

struct Coset {
  int subgroup = -1;
  Element representative = 0;  // minimal element of the coset
  std::vector<Element> elements;
};

// The enumerated subgroups of a group plus coset and conjugation queries.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(FiniteGroup group);

  const FiniteGroup& group() const { return group_; }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  const Subgroup& operator[](int id) const { return subgroups_.at(static_cast<std::size_t>(id)); }
  int size() const { return static_cast<int>(subgroups_.size()); }
  int trivial() const { return 0; }
  int whole() const { return size() - 1; }

  std::optional<int> find(std::span<const Element> elements) const;
  int conjugate(Element g, int h) const;  // id of g^-1 H g
  bool is_subgroup_of(int h, int k) const;

  // Left coset g·K in canonical form.
  Coset coset(Element g, int k) const;
  Element canonical(Element g, int k) const;
  // Canonical representatives of G/K in increasing order.
  std::vector<Element> coset_representatives(int k) const;

  // "H2{(), (0 1)}"
  std::string describe(int id) const;

  bool operator==(const SubgroupLattice& o) const { return group_ == o.group_; }

 private:
  FiniteGroup group_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::vector<Element>> canonical_;  // [subgroup][element] -> min of gK
  std::vector<std::vector<int>> conjugates_;     // [element][subgroup] -> id
};

Subgroup conjugate_subgroup(const SubgroupLattice& lattice, Element g, const Subgroup& h);

// A set of subgroups closed under conjugation and passage to subgroups.
struct SubgroupFamily {
  std::vector<int> members;  // sorted subgroup ids

  bool contains(int id) const;
  bool operator==(const SubgroupFamily&) const = default;
};

SubgroupFamily family_all(const SubgroupLattice& lattice);
SubgroupFamily family_trivial(const SubgroupLattice& lattice);

// Throws EmptyFamily, NotConjugationClosed (element, subgroup) or
// NotSubgroupClosed (member, missing subgroup).
SubgroupFamily validate_family(const SubgroupLattice& lattice, std::vector<int> members);

}  // namespace eqfg
