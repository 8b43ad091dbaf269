#include "eqfg/realization.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "eqfg/error.hpp"

namespace eqfg {

namespace {

template <typename T>
std::size_t at(T i) {
  return static_cast<std::size_t>(i);
}

int position(const std::vector<Element>& reps, Element g) {
  return static_cast<int>(std::find(reps.begin(), reps.end(), g) - reps.begin());
}

std::string object_suffix(int h, Element g) { return "@H" + std::to_string(h) + "." + std::to_string(g); }
std::string cylinder_suffix(int m, Element g) { return "@m" + std::to_string(m) + "." + std::to_string(g); }

}  // namespace

int ZeroSkeleton::index(int subgroup, Element coset, int object) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& p = elements[i];
    if (p.subgroup == subgroup && p.coset == coset && p.object == object) return static_cast<int>(i);
  }
  throw Error("OutOfRange", "no 0-skeleton point (H" + std::to_string(subgroup) + ", " + std::to_string(coset) +
                                ", " + std::to_string(object) + ")");
}

ZeroSkeleton zero_skeleton_coend(const OrbFunctor& f) {
  const auto& c = *f.category;
  const auto& lattice = c.lattice();
  const auto& g = c.group();
  ZeroSkeleton z;
  std::map<std::tuple<int, Element, int>, int> index;
  for (int h : c.objects())
    for (Element r : lattice.coset_representatives(h))
      for (int x = 0; x < f.value(h).object_count(); ++x) {
        index[{h, r, x}] = static_cast<int>(z.elements.size());
        z.elements.push_back({h, r, x});
      }

  std::vector<int> parent(z.elements.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[at(x)] != x) x = parent[at(x)] = parent[at(parent[at(x)])];
    return x;
  };
  for (const auto& m : c.morphisms()) {
    const auto& arrow = f.arrow(m);
    for (Element r : lattice.coset_representatives(m.source))
      for (int x = 0; x < f.value(m.target).object_count(); ++x) {
        const int a = index.at({m.target, c.apply(m, r), x});
        const int b = index.at({m.source, r, arrow.object_map[at(x)]});
        int ra = find(a), rb = find(b);
        if (ra == rb) continue;
        z.trace.emplace_back(a, b);
        if (rb < ra) std::swap(ra, rb);
        parent[at(rb)] = ra;
      }
  }

  z.class_of.assign(z.elements.size(), -1);
  for (std::size_t i = 0; i < z.elements.size(); ++i) {
    const int root = find(static_cast<int>(i));
    if (root == static_cast<int>(i)) {
      z.class_of[i] = static_cast<int>(z.classes.size());
      z.classes.emplace_back();
      const auto& p = z.elements[i];
      z.labels.push_back(f.value(p.subgroup).objects[at(p.object)] + object_suffix(p.subgroup, p.coset));
    }
    z.class_of[i] = z.class_of[at(root)];
    z.classes[at(z.class_of[i])].push_back(static_cast<int>(i));
  }

  z.action.assign(at(g.order()), std::vector<int>(z.classes.size(), -1));
  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t k = 0; k < z.classes.size(); ++k) {
      const auto& p = z.elements[at(z.classes[k].front())];
      const Element moved = lattice.canonical(g.mul(a, p.coset), p.subgroup);
      z.action[at(a)][k] = z.class_of[at(index.at({p.subgroup, moved, p.object}))];
    }
  return z;
}

const char* to_string(Step2Kind k) {
  switch (k) {
    case Step2Kind::Bijection: return "Bijection";
    case Step2Kind::ProperQuotient: return "ProperQuotient";
    case Step2Kind::Deficit: return "Deficit";
  }
  return "?";
}

std::vector<Step2Entry> verify_step2(const OrbFunctor& f, const ZeroSkeleton& z) {
  const auto& c = *f.category;
  const auto& lattice = c.lattice();
  std::vector<Step2Entry> out;
  for (int h : c.objects()) {
    const auto& value = f.value(h);
    const Element e = lattice.canonical(c.group().identity(), h);
    Step2Entry entry{h, Step2Kind::Bijection, {}};

    std::map<int, int> hit;  // class -> object
    for (int x = 0; x < value.object_count() && entry.kind == Step2Kind::Bijection; ++x) {
      const int k = z.class_of[at(z.index(h, e, x))];
      auto [it, fresh] = hit.emplace(k, x);
      if (!fresh) {
        entry.kind = Step2Kind::ProperQuotient;
        entry.witness = "(" + value.objects[at(it->second)] + ", " + value.objects[at(x)] + ")";
      }
    }
    if (entry.kind == Step2Kind::Bijection)
      for (std::size_t k = 0; k < z.classes.size(); ++k) {
        const bool fixed = std::all_of(lattice[h].elements.begin(), lattice[h].elements.end(),
                                       [&](Element g) { return z.action[at(g)][k] == static_cast<int>(k); });
        if (fixed && !hit.count(static_cast<int>(k))) {
          entry.kind = Step2Kind::Deficit;
          entry.witness = z.labels[k];
          break;
        }
      }
    out.push_back(std::move(entry));
  }
  return out;
}

RealizationResult build_space(const OrbFunctor& f, const RealizeOptions& options) {
  if (options.max_dim != 2 && options.max_dim != 3)
    throw Error("InvalidOption", "maximal dimension must be 2 or 3");
  const auto& c = *f.category;
  const auto& lattice = c.lattice();

  RealizationResult result;
  result.zero_skeleton = zero_skeleton_coend(f);
  result.step2 = verify_step2(f, result.zero_skeleton);

  std::vector<GCellComplex> parts;
  std::vector<std::array<std::vector<CellOrigin>, 4>> origins;
  std::map<int, int> object_part;
  for (int h : c.objects()) {
    GCellComplex body = presentation_complex(f.value(h));
    GCellComplex part = orbit_product(body, lattice, h);
    const auto reps = lattice.coset_representatives(h);
    std::array<std::vector<CellOrigin>, 4> origin;
    for (int d = 0; d < 4; ++d)
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (int cell = 0; cell < body.count(d); ++cell) {
          part.cells[at(d)][i * at(body.count(d)) + at(cell)] = body.cells[at(d)][at(cell)] + object_suffix(h, reps[i]);
          origin[at(d)].push_back({CellOrigin::Kind::Object, h, reps[i], -1, cell});
        }
    object_part[h] = static_cast<int>(parts.size());
    parts.push_back(std::move(part));
    origins.push_back(std::move(origin));
  }

  std::vector<Identification> ids;
  struct VerticalEdges {
    int part;
    std::vector<int> cells;  // local cells of the orbit product
  };
  std::vector<VerticalEdges> verticals;
  for (std::size_t mi = 0; mi < c.morphisms().size(); ++mi) {
    const auto& m = c.morphisms()[mi];
    const CellularMap map = realize_morphism(f.arrow(m));
    const MappingCylinder cyl = mapping_cylinder(map);
    if (!cyl.solids && result.solids) {
      result.solids = false;
      result.notes.push_back("3-cells omitted: the arrow of " + c.describe(m) +
                             " is not rigid, so H_2 and H_3 are unavailable");
    }
    GCellComplex part = orbit_product(cyl.complex, lattice, m.source);
    const auto reps = lattice.coset_representatives(m.source);
    const auto target_reps = lattice.coset_representatives(m.target);
    const int self = static_cast<int>(parts.size());

    // local cylinder cell -> (free-end cell it is vertical over)
    std::array<std::vector<int>, 4> over;
    for (int d = 0; d < 4; ++d) over[at(d)].assign(at(cyl.complex.count(d)), -1);
    for (int d = 0; d < 3; ++d)
      for (std::size_t a = 0; a < cyl.vertical[at(d)].size(); ++a)
        over[at(d + 1)][at(cyl.vertical[at(d)][a])] = static_cast<int>(a);

    std::array<std::vector<CellOrigin>, 4> origin;
    VerticalEdges vertical{self, {}};
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const int copy_h = static_cast<int>(i);
      const int copy_k = position(target_reps, c.apply(m, reps[i]));
      for (int d = 0; d < 4; ++d) {
        const int per = cyl.complex.count(d);
        for (int cell = 0; cell < per; ++cell) {
          const int local = copy_h * per + cell;
          part.cells[at(d)][at(local)] =
              cyl.complex.cells[at(d)][at(cell)] + cylinder_suffix(static_cast<int>(mi), reps[i]);
          origin[at(d)].push_back(
              {CellOrigin::Kind::Cylinder, m.source, reps[i], static_cast<int>(mi), over[at(d)][at(cell)]});
        }
        const int per_h = parts[at(object_part[m.source])].count(d) / static_cast<int>(reps.size());
        const int per_k = parts[at(object_part[m.target])].count(d) / static_cast<int>(target_reps.size());
        for (std::size_t b = 0; b < cyl.base[at(d)].size(); ++b)
          ids.push_back({d, self, copy_h * per + cyl.base[at(d)][b], object_part[m.source],
                         copy_h * per_h + static_cast<int>(b)});
        for (std::size_t a = 0; a < cyl.free_end[at(d)].size(); ++a)
          ids.push_back({d, self, copy_h * per + cyl.free_end[at(d)][a], object_part[m.target],
                         copy_k * per_k + static_cast<int>(a)});
      }
      for (int v : cyl.vertical[0]) vertical.cells.push_back(copy_h * cyl.complex.count(1) + v);
    }
    verticals.push_back(std::move(vertical));
    parts.push_back(std::move(part));
    origins.push_back(std::move(origin));
  }

  Gluing w = glue(parts, ids);
  if (!result.solids || options.max_dim == 2) {
    if (options.max_dim == 2 && result.solids) result.notes.push_back("3-cells omitted on request");
    result.solids = false;
    w.complex = two_skeleton(w.complex);
  }
  result.cylinder_space = w.complex;

  // Provenance of W from the first cell of every class.
  for (int d = 0; d < 4; ++d) {
    result.cylinder_provenance[at(d)].resize(at(w.complex.count(d)));
    std::vector<bool> seen(at(w.complex.count(d)), false);
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (int cell = 0; cell < parts[p].count(d); ++cell) {
        const int target = w.cell_map[p][at(d)][at(cell)];
        if (target >= w.complex.count(d) || seen[at(target)]) continue;
        seen[at(target)] = true;
        result.cylinder_provenance[at(d)][at(target)] = origins[p][at(d)][at(cell)];
      }
  }

  std::set<int> collapse;
  for (const auto& v : verticals)
    for (int cell : v.cells) collapse.insert(w.cell_map[at(v.part)][1][at(cell)]);
  const Contraction x = contract_edges(w.complex, {collapse.begin(), collapse.end()});
  result.space = x.complex;

  result.space_origin[0].assign(at(x.complex.count(0)), -1);
  for (int v = 0; v < w.complex.count(0); ++v)
    if (result.space_origin[0][at(x.vertex_map[at(v)])] < 0) result.space_origin[0][at(x.vertex_map[at(v)])] = v;
  result.space_origin[1].assign(at(x.complex.count(1)), -1);
  for (int e = 0; e < w.complex.count(1); ++e)
    if (x.edge_map[at(e)] >= 0) result.space_origin[1][at(x.edge_map[at(e)])] = e;
  for (int d = 2; d < 4; ++d) {
    result.space_origin[at(d)].resize(at(x.complex.count(d)));
    std::iota(result.space_origin[at(d)].begin(), result.space_origin[at(d)].end(), 0);
  }

  for (int h : c.objects()) {
    const int p = object_part[h];
    const int copies = static_cast<int>(lattice.coset_representatives(h).size());
    std::array<std::vector<int>, 4> cells;
    for (int d = 0; d < 4; ++d) {
      const int per = parts[at(p)].count(d) / copies;
      for (int cell = 0; cell < per; ++cell) {
        const int wc = w.cell_map[at(p)][at(d)][at(cell)];
        int xc = wc;
        if (d == 0) xc = x.vertex_map[at(wc)];
        if (d == 1) xc = x.edge_map[at(wc)];
        cells[at(d)].push_back(xc);
      }
    }
    result.identity_copy[h] = std::move(cells);
  }
  require_valid(result.space);
  return result;
}

std::vector<Check> verify_fundamental_functor(const OrbFunctor& f, const RealizationResult& result) {
  const auto& c = *f.category;
  const auto& lattice = c.lattice();
  const GCellComplex& x = result.space;
  const OrbFunctor computed = induced_functor_from_complex(x);

  std::map<int, bool> bijective;
  for (const auto& e : result.step2) bijective[e.subgroup] = e.kind == Step2Kind::Bijection;

  std::map<int, GroupoidMorphism> phi;
  for (int h : c.objects()) {
    const Subcomplex fixed = fixed_subcomplex(x, lattice[h]);
    std::array<std::vector<int>, 2> local;
    for (int d = 0; d < 2; ++d) {
      local[at(d)].assign(at(x.count(d)), -1);
      for (std::size_t i = 0; i < fixed.embedding[at(d)].size(); ++i)
        local[at(d)][at(fixed.embedding[at(d)][i])] = static_cast<int>(i);
    }
    const auto& copy = result.identity_copy.at(h);
    const auto& value = f.value(h);
    GroupoidMorphism t{value, computed.value(h), {}, {}};
    for (int v = 0; v < value.object_count(); ++v) t.object_map.push_back(local[0][at(copy[0][at(v)])]);
    for (const auto& gen : value.generators) {
      const int e = local[1][at(copy[1][at(&gen - value.generators.data())])];
      t.generator_map.push_back({t.object_map[at(gen.source)], {Letter{e, 1}}});
    }
    phi.emplace(h, std::move(t));
  }

  std::vector<Check> checks;
  for (int h : c.objects())
    checks.push_back({"equivalence at " + lattice.describe(h), equivalence_report(phi.at(h)), bijective[h]});
  for (int h : c.objects())
    checks.push_back({"strict isomorphism at " + lattice.describe(h), strict_isomorphism(phi.at(h)), bijective[h]});
  for (const auto& m : c.morphisms()) {
    const auto left = compose_morphisms(phi.at(m.source), f.arrow(m));
    const auto right = compose_morphisms(computed.arrow(m), phi.at(m.target));
    checks.push_back(
        {"naturality at " + c.describe(m), compare_morphisms(left, right), bijective[m.source] && bijective[m.target]});
  }
  return checks;
}

}  // namespace eqfg
