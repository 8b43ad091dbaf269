#include "eqfg/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "eqfg/error.hpp"

namespace eqfg {

Permutation parse_cycles(std::string_view text, int degree) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  std::vector<bool> seen(static_cast<std::size_t>(degree), false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error("MalformedPermutation", "'" + std::string(text) + "': " + why);
  };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
        ++pos;
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      int value = 0;
      auto [next, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc()) fail("expected a point index");
      if (value < 0 || value >= degree) fail("point " + std::to_string(value) + " out of range");
      if (seen[static_cast<std::size_t>(value)]) fail("point " + std::to_string(value) + " repeated");
      seen[static_cast<std::size_t>(value)] = true;
      cycle.push_back(value);
      pos = static_cast<std::size_t>(next - text.data());
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      p[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
  }
  return p;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

FiniteGroup::FiniteGroup() : table_{{0}}, identity_(0), inverse_{0}, labels_{"0"} {}

FiniteGroup FiniteGroup::from_table(Table table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error("NotAGroupTable", "empty table");
  for (int a = 0; a < n; ++a) {
    const auto& row = table[static_cast<std::size_t>(a)];
    if (static_cast<int>(row.size()) != n)
      throw Error("NotAGroupTable", "row " + std::to_string(a) + " has " +
                                        std::to_string(row.size()) + " entries, expected " +
                                        std::to_string(n));
    for (int b = 0; b < n; ++b)
      if (row[static_cast<std::size_t>(b)] < 0 || row[static_cast<std::size_t>(b)] >= n)
        throw Error("NotAGroupTable", "entry (" + std::to_string(a) + ", " + std::to_string(b) +
                                          ") out of range");
  }
  auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error("NoIdentity", "no element is a two-sided identity");

  std::vector<Element> inverse(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h)
      if (at(h, g) == identity && at(g, h) == identity) {
        inverse[static_cast<std::size_t>(g)] = h;
        break;
      }
    if (inverse[static_cast<std::size_t>(g)] < 0)
      throw Error("NoInverse", "element " + std::to_string(g) + " has no two-sided inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          throw Error("NotAssociative", "(" + std::to_string(a) + "·" + std::to_string(b) + ")·" +
                                            std::to_string(c) + " != " + std::to_string(a) + "·(" +
                                            std::to_string(b) + "·" + std::to_string(c) + ")");

  FiniteGroup g;
  g.table_ = std::move(table);
  g.identity_ = identity;
  g.inverse_ = std::move(inverse);
  g.labels_.clear();
  for (int i = 0; i < n; ++i) g.labels_.push_back(std::to_string(i));
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<Permutation>& generators, int degree) {
  if (degree < 1) throw Error("MalformedPermutation", "degree must be positive");
  for (const auto& p : generators) {
    if (static_cast<int>(p.size()) != degree)
      throw Error("MalformedPermutation", "generator " + format_cycles(p) + " has wrong degree");
    std::vector<bool> hit(static_cast<std::size_t>(degree), false);
    for (int x : p) {
      if (x < 0 || x >= degree || hit[static_cast<std::size_t>(x)])
        throw Error("MalformedPermutation", "generator is not a bijection");
      hit[static_cast<std::size_t>(x)] = true;
    }
  }
  // a then b
  auto compose = [](const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[static_cast<std::size_t>(a[x])];
    return c;
  };

  Permutation id(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) id[static_cast<std::size_t>(i)] = i;
  std::set<Permutation> elements{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation p = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      Permutation q = compose(p, s);
      if (elements.insert(q).second) queue.push_back(std::move(q));
    }
  }

  std::vector<Permutation> sorted(elements.begin(), elements.end());
  std::map<Permutation, int> index;
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<int>(i);
  const std::size_t n = sorted.size();

  FiniteGroup g;
  g.table_.assign(n, std::vector<Element>(n));
  g.inverse_.assign(n, 0);
  g.labels_.clear();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g.table_[a][b] = index.at(compose(sorted[a], sorted[b]));
    Permutation inv(sorted[a].size());
    for (std::size_t x = 0; x < inv.size(); ++x) inv[static_cast<std::size_t>(sorted[a][x])] = static_cast<int>(x);
    g.inverse_[a] = index.at(inv);
    g.labels_.push_back(format_cycles(sorted[a]));
  }
  g.identity_ = 0;
  g.degree_ = degree;
  g.generators_ = generators;
  g.permutations_ = std::move(sorted);
  return g;
}

std::optional<Element> FiniteGroup::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Element>(i);
  if (!permutations_.empty() && !label.empty() && label.front() == '(') {
    try {
      const Permutation p = parse_cycles(label, degree_);
      for (std::size_t i = 0; i < permutations_.size(); ++i)
        if (permutations_[i] == p) return static_cast<Element>(i);
    } catch (const Error&) {
    }
    return std::nullopt;
  }
  int value = 0;
  auto [end, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
  if (ec == std::errc() && end == label.data() + label.size() && value >= 0 && value < order())
    return value;
  return std::nullopt;
}

bool Subgroup::contains(Element g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

namespace {

std::vector<Element> closure(const FiniteGroup& g, std::vector<Element> seed) {
  std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
  std::vector<Element> out{g.identity()};
  in[static_cast<std::size_t>(g.identity())] = true;
  for (Element s : seed)
    if (!in[static_cast<std::size_t>(s)]) {
      in[static_cast<std::size_t>(s)] = true;
      out.push_back(s);
    }
  // Finite groups: closure under products suffices.
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (Element p : {g.mul(out[i], out[j]), g.mul(out[j], out[i])})
        if (!in[static_cast<std::size_t>(p)]) {
          in[static_cast<std::size_t>(p)] = true;
          out.push_back(p);
        }
  std::sort(out.begin(), out.end());
  return out;
}

bool subgroup_less(const std::vector<Element>& a, const std::vector<Element>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  std::set<std::vector<Element>> found;
  std::deque<std::vector<Element>> queue;
  auto trivial = closure(g, {});
  found.insert(trivial);
  queue.push_back(trivial);
  while (!queue.empty()) {
    auto h = queue.front();
    queue.pop_front();
    for (Element x = 0; x < g.order(); ++x) {
      if (std::binary_search(h.begin(), h.end(), x)) continue;
      auto seed = h;
      seed.push_back(x);
      auto k = closure(g, seed);
      if (found.insert(k).second) queue.push_back(std::move(k));
    }
  }
  std::vector<std::vector<Element>> sorted(found.begin(), found.end());
  std::sort(sorted.begin(), sorted.end(), subgroup_less);
  std::vector<Subgroup> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) out.push_back({std::move(sorted[i]), static_cast<int>(i)});
  return out;
}

SubgroupLattice::SubgroupLattice(FiniteGroup group)
    : group_(std::move(group)), subgroups_(enumerate_subgroups(group_)) {
  const int n = group_.order();
  canonical_.assign(subgroups_.size(), std::vector<Element>(static_cast<std::size_t>(n)));
  for (const auto& k : subgroups_)
    for (Element g = 0; g < n; ++g) {
      Element best = n;
      for (Element x : k.elements) best = std::min(best, group_.mul(g, x));
      canonical_[static_cast<std::size_t>(k.id)][static_cast<std::size_t>(g)] = best;
    }
  conjugates_.assign(static_cast<std::size_t>(n), std::vector<int>(subgroups_.size()));
  for (Element g = 0; g < n; ++g)
    for (const auto& h : subgroups_) {
      std::vector<Element> c;
      c.reserve(h.elements.size());
      for (Element x : h.elements) c.push_back(group_.conjugate(g, x));
      std::sort(c.begin(), c.end());
      conjugates_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h.id)] = *find(c);
    }
}

std::optional<int> SubgroupLattice::find(std::span<const Element> elements) const {
  std::vector<Element> key(elements.begin(), elements.end());
  std::sort(key.begin(), key.end());
  auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), key,
                             [](const Subgroup& s, const std::vector<Element>& k) {
                               return subgroup_less(s.elements, k);
                             });
  if (it != subgroups_.end() && it->elements == key) return it->id;
  return std::nullopt;
}

int SubgroupLattice::conjugate(Element g, int h) const {
  return conjugates_.at(static_cast<std::size_t>(g)).at(static_cast<std::size_t>(h));
}

bool SubgroupLattice::is_subgroup_of(int h, int k) const {
  const auto& big = (*this)[k].elements;
  const auto& small = (*this)[h].elements;
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Coset SubgroupLattice::coset(Element g, int k) const {
  Coset c;
  c.subgroup = k;
  for (Element x : (*this)[k].elements) c.elements.push_back(group_.mul(g, x));
  std::sort(c.elements.begin(), c.elements.end());
  c.representative = c.elements.front();
  return c;
}

Element SubgroupLattice::canonical(Element g, int k) const {
  return canonical_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(g));
}

std::vector<Element> SubgroupLattice::coset_representatives(int k) const {
  std::vector<Element> reps;
  for (Element g = 0; g < group_.order(); ++g)
    if (canonical(g, k) == g) reps.push_back(g);
  return reps;
}

std::string SubgroupLattice::describe(int id) const {
  std::string s = "H" + std::to_string(id) + "{";
  const auto& elems = (*this)[id].elements;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ", ";
    s += group_.label(elems[i]);
  }
  return s + "}";
}

Subgroup conjugate_subgroup(const SubgroupLattice& lattice, Element g, const Subgroup& h) {
  const auto id = h.id >= 0 ? std::optional<int>(h.id) : lattice.find(h.elements);
  if (!id) throw Error("NotASubgroup", "element set is not a subgroup of the group");
  return lattice[lattice.conjugate(g, *id)];
}

bool SubgroupFamily::contains(int id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

SubgroupFamily family_all(const SubgroupLattice& lattice) {
  SubgroupFamily f;
  for (int i = 0; i < lattice.size(); ++i) f.members.push_back(i);
  return f;
}

SubgroupFamily family_trivial(const SubgroupLattice& lattice) {
  return SubgroupFamily{{lattice.trivial()}};
}

SubgroupFamily validate_family(const SubgroupLattice& lattice, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) throw Error("EmptyFamily", "a family must contain at least one subgroup");
  for (int id : members)
    if (id < 0 || id >= lattice.size())
      throw Error("NotASubgroup", "subgroup id " + std::to_string(id) + " out of range");
  SubgroupFamily f{members};
  const auto& g = lattice.group();
  for (int h : members)
    for (Element x = 0; x < g.order(); ++x) {
      const int c = lattice.conjugate(x, h);
      if (!f.contains(c))
        throw Error("NotConjugationClosed", "conjugating " + lattice.describe(h) + " by " +
                                                g.label(x) + " gives " + lattice.describe(c) +
                                                ", which is not in the family");
    }
  for (int h : members)
    for (int k = 0; k < lattice.size(); ++k)
      if (!f.contains(k) && lattice.is_subgroup_of(k, h))
        throw Error("NotSubgroupClosed", lattice.describe(k) + " is a subgroup of member " +
                                             lattice.describe(h) + " but not in the family");
  return f;
}

}  // namespace eqfg
