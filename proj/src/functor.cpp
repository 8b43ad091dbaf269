#include "eqfg/functor.hpp"

#include <optional>

#include "eqfg/error.hpp"

namespace eqfg {

namespace {

template <typename T>
std::size_t at(T i) {
  return static_cast<std::size_t>(i);
}

const PresentedGroupoid& empty_groupoid() {
  static const PresentedGroupoid empty;
  return empty;
}

// ambient index -> local index, -1 outside.
std::vector<int> invert(const std::vector<int>& embedding, int size) {
  std::vector<int> local(at(size), -1);
  for (std::size_t i = 0; i < embedding.size(); ++i) local[at(embedding[i])] = static_cast<int>(i);
  return local;
}

Verdict merge(Verdict acc, Verdict v, const std::string& where) {
  if (!v.is_verified() && !where.empty()) v.detail = where + ": " + v.detail;
  return worst(acc, v);
}

}  // namespace

const PresentedGroupoid& OrbFunctor::value(int h) const {
  const auto it = values.find(h);
  return it == values.end() ? empty_groupoid() : it->second;
}

const GroupoidMorphism& OrbFunctor::arrow(const OrbitMorphism& m) const {
  return arrows.at(at(category->index_of(m)));
}

OrbFunctor complete_functor(std::shared_ptr<const OrbitCategory> category, std::map<int, PresentedGroupoid> values,
                            const std::map<int, GroupoidMorphism>& given) {
  OrbFunctor f;
  f.category = std::move(category);
  f.values = std::move(values);
  const auto& c = *f.category;
  for (int h : c.objects())
    if (!f.values.count(h))
      throw Error("MissingValue", "no groupoid for " + c.lattice().describe(h));

  const auto& ms = c.morphisms();
  std::vector<std::optional<GroupoidMorphism>> known(ms.size());
  for (const auto& [index, t] : given) {
    if (index < 0 || at(index) >= ms.size()) throw Error("UnknownMorphism", "morphism index " + std::to_string(index));
    const auto& m = ms[at(index)];
    if (!(t.source == f.value(m.target)) || !(t.target == f.value(m.source)))
      throw Error("MalformedMorphism", "arrow for " + c.describe(m) + " must run from the value at H" +
                                           std::to_string(m.target) + " to the value at H" +
                                           std::to_string(m.source));
    validate_morphism(t);
    known[at(index)] = t;
  }
  for (int h : c.objects()) {
    const int i = c.index_of(c.identity(h));
    if (!known[at(i)]) known[at(i)] = identity_morphism(f.value(h));
  }

  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t a = 0; a < ms.size(); ++a) {
      if (!known[a]) continue;
      for (std::size_t b = 0; b < ms.size(); ++b) {
        if (!known[b] || ms[b].source != ms[a].target) continue;
        const int ba = c.index_of(c.compose(ms[b], ms[a]));
        if (known[at(ba)]) continue;
        known[at(ba)] = compose_morphisms(*known[a], *known[b]);
        grew = true;
      }
    }
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!known[i]) throw Error("MissingArrow", "no arrow given or composable for " + c.describe(ms[i]));
    f.arrows.push_back(std::move(*known[i]));
  }
  return f;
}

Verdict compare_morphisms(const GroupoidMorphism& a, const GroupoidMorphism& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    return Verdict::refuted("morphisms have different source or target");
  for (std::size_t o = 0; o < a.object_map.size(); ++o)
    if (a.object_map[o] != b.object_map[o])
      return Verdict::refuted("object " + a.source.objects[o] + " goes to " + a.target.objects[at(a.object_map[o])] +
                              " and to " + a.target.objects[at(b.object_map[o])]);
  Verdict v = Verdict::verified();
  std::optional<GroupoidOracle> oracle;
  for (std::size_t g = 0; g < a.generator_map.size(); ++g) {
    const Word wa = free_reduce(a.target, a.generator_map[g]);
    const Word wb = free_reduce(b.target, b.generator_map[g]);
    if (wa == wb) continue;
    if (!oracle) oracle.emplace(a.target);
    v = merge(v, oracle->equal(wa, wb), "generator " + a.source.generators[g].label);
    if (v.is_refuted()) return v;
  }
  return v;
}

std::vector<Check> validate_functoriality(const OrbFunctor& f) {
  const auto& c = *f.category;
  const auto& ms = c.morphisms();
  Verdict relations = Verdict::verified();
  Verdict identities = Verdict::verified();
  Verdict composition = Verdict::verified();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    relations = merge(relations, check_respects_relations(f.arrows[i]), c.describe(ms[i]));
    if (c.is_identity(ms[i]))
      identities = merge(identities, compare_morphisms(f.arrows[i], identity_morphism(f.value(ms[i].source))),
                         c.describe(ms[i]));
  }
  for (const auto& a : ms)
    for (const auto& b : ms) {
      if (b.source != a.target) continue;
      const auto ba = c.compose(b, a);
      const auto composite = compose_morphisms(f.arrow(a), f.arrow(b));
      composition = merge(composition, compare_morphisms(f.arrow(ba), composite),
                          "(" + c.describe(b) + ") ∘ (" + c.describe(a) + ")");
    }
  return {{"arrows respect relations", relations}, {"identities", identities}, {"composition", composition}};
}

OrbFunctor induced_functor_from_complex(const GCellComplex& x) {
  require_valid(x);
  SubgroupLattice lattice(x.group);
  auto category = build_category(x.group, family_all(lattice));
  const auto& c = *category;

  std::map<int, Subcomplex> fixed;
  std::map<int, std::array<std::vector<int>, 2>> local;
  OrbFunctor f;
  for (int h : c.objects()) {
    fixed.emplace(h, fixed_subcomplex(x, c.lattice()[h]));
    const auto& sub = fixed.at(h);
    local[h] = {invert(sub.embedding[0], x.count(0)), invert(sub.embedding[1], x.count(1))};
    f.values.emplace(h, fundamental_groupoid(sub.complex));
  }
  std::map<int, GroupoidMorphism> arrows;
  for (std::size_t i = 0; i < c.morphisms().size(); ++i) {
    const auto& m = c.morphisms()[i];
    const auto& from = fixed.at(m.target);
    const auto& to = local.at(m.source);
    GroupoidMorphism t{f.values.at(m.target), f.values.at(m.source), {}, {}};
    for (int v : from.embedding[0]) t.object_map.push_back(to[0][at(x.act(0, m.coset, v).cell)]);
    for (int e : from.embedding[1]) {
      const auto s = x.act(1, m.coset, e);
      const Letter l{to[1][at(s.cell)], s.sign};
      t.generator_map.push_back({letter_source(t.target, l), {l}});
    }
    arrows.emplace(static_cast<int>(i), std::move(t));
  }
  return complete_functor(std::move(category), std::move(f.values), arrows);
}

std::vector<Check> validate_naturality(const NaturalTransformation& t) {
  const auto& c = *t.source.category;
  std::vector<Check> checks;
  for (const auto& m : c.morphisms()) {
    const auto& eta_h = t.components.at(m.source);
    const auto& eta_k = t.components.at(m.target);
    const auto left = compose_morphisms(eta_h, t.source.arrow(m));
    const auto right = compose_morphisms(t.target.arrow(m), eta_k);
    checks.push_back({"naturality at " + c.describe(m), compare_morphisms(left, right)});
  }
  return checks;
}

NaturalTransformation induced_transformation(const GCellComplex& y, const GCellComplex& x,
                                             const std::vector<int>& vertex_map,
                                             const std::vector<SignedCell>& edge_map) {
  if (!(y.group == x.group)) throw Error("NotEquivariant", "complexes carry different groups");
  if (vertex_map.size() != at(y.count(0)) || edge_map.size() != at(y.count(1)))
    throw Error("NotEquivariant", "map sizes do not match the source cells");
  for (int e = 0; e < y.count(1); ++e) {
    const auto [s, t] = y.edge_ends[at(e)];
    const auto img = edge_map[at(e)];
    if (img.cell < 0) {
      if (vertex_map[at(s)] != vertex_map[at(t)])
        throw Error("NotEquivariant", "collapsed edge " + y.cells[1][at(e)] + " joins different vertices");
      continue;
    }
    auto ends = x.edge_ends[at(img.cell)];
    if (img.sign < 0) std::swap(ends.first, ends.second);
    if (ends != std::pair<int, int>{vertex_map[at(s)], vertex_map[at(t)]})
      throw Error("NotEquivariant", "edge " + y.cells[1][at(e)] + " is not mapped along its endpoints");
  }
  for (Element g = 0; g < y.group.order(); ++g) {
    for (int v = 0; v < y.count(0); ++v)
      if (vertex_map[at(y.act(0, g, v).cell)] != x.act(0, g, vertex_map[at(v)]).cell)
        throw Error("NotEquivariant", "vertex " + y.cells[0][at(v)] + " under " + y.group.label(g));
    for (int e = 0; e < y.count(1); ++e) {
      const auto moved = y.act(1, g, e);
      const auto img = edge_map[at(moved.cell)];
      const auto direct = edge_map[at(e)];
      bool ok;
      if (direct.cell < 0) {
        ok = img.cell < 0;
      } else {
        const auto want = x.act(1, g, direct.cell);
        ok = img.cell == want.cell && img.sign * moved.sign == direct.sign * want.sign;
      }
      if (!ok) throw Error("NotEquivariant", "edge " + y.cells[1][at(e)] + " under " + y.group.label(g));
    }
  }

  NaturalTransformation nt;
  nt.source = induced_functor_from_complex(y);
  nt.target = induced_functor_from_complex(x);
  const auto& lattice = nt.source.category->lattice();
  for (int h : nt.source.category->objects()) {
    const auto ys = fixed_subcomplex(y, lattice[h]);
    const auto xs = fixed_subcomplex(x, lattice[h]);
    const auto xv = invert(xs.embedding[0], x.count(0));
    const auto xe = invert(xs.embedding[1], x.count(1));
    GroupoidMorphism t{nt.source.value(h), nt.target.value(h), {}, {}};
    for (int v : ys.embedding[0]) t.object_map.push_back(xv[at(vertex_map[at(v)])]);
    for (std::size_t i = 0; i < ys.embedding[1].size(); ++i) {
      const int e = ys.embedding[1][i];
      const auto img = edge_map[at(e)];
      const int start = t.object_map[at(ys.complex.edge_ends[i].first)];
      if (img.cell < 0)
        t.generator_map.push_back({start, {}});
      else
        t.generator_map.push_back({start, {Letter{xe[at(img.cell)], img.sign}}});
    }
    validate_morphism(t);
    nt.components.emplace(h, std::move(t));
  }
  return nt;
}

std::vector<Check> equivalence_of_functors(const NaturalTransformation& t) {
  std::vector<Check> checks;
  const auto& lattice = t.source.category->lattice();
  for (const auto& [h, component] : t.components)
    checks.push_back({"equivalence at " + lattice.describe(h), equivalence_report(component)});
  return checks;
}

}  // namespace eqfg
