#include "eqfg/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "eqfg/error.hpp"

namespace eqfg {

namespace {

template <typename T>
std::size_t at(T i) {
  return static_cast<std::size_t>(i);
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(at(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[at(x)] != x) x = parent_[at(x)] = parent_[at(parent_[at(x)])];
    return x;
  }
  // The smaller index stays the root.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[at(b)] = a;
  }

 private:
  std::vector<int> parent_;
};

// Word chain: exponent sum per edge.
Chain word_chain(const Word& w) {
  Chain c;
  for (const auto& l : w.letters) c.emplace_back(l.generator, l.exponent);
  return normalize(std::move(c));
}

Chain edge_boundary(const GCellComplex& x, int e) {
  const auto [s, t] = x.edge_ends[at(e)];
  return normalize({{t, 1}, {s, -1}});
}

// Chain boundary of a 2-chain.
Chain face_chain_boundary(const GCellComplex& x, const Chain& c) {
  Chain out;
  for (const auto& [face, coeff] : c)
    for (const auto& [edge, k] : word_chain(x.face_words[at(face)])) out.emplace_back(edge, coeff * k);
  return normalize(std::move(out));
}

bool same_cycle(const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size()) return false;
  if (a.letters.empty()) return a.start == b.start;
  const std::size_t n = a.letters.size();
  for (std::size_t k = 0; k < n; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = a.letters[(i + k) % n] == b.letters[i];
    if (ok) return true;
  }
  return false;
}

Word translate_word(const GCellComplex& x, Element g, const Word& w) {
  Word out{x.act(0, g, w.start).cell, {}};
  for (const auto& l : w.letters) {
    const auto e = x.act(1, g, l.generator);
    out.letters.push_back({e.cell, l.exponent * e.sign});
  }
  return out;
}

Word reversed(const Word& w, int end) { return {end, inverse(w.letters)}; }

int word_end_vertex(const GCellComplex& x, const Word& w) {
  int here = w.start;
  for (const auto& l : w.letters) {
    const auto [s, t] = x.edge_ends.at(at(l.generator));
    here = l.exponent > 0 ? t : s;
  }
  return here;
}

Chain translate_chain(const GCellComplex& x, int dim, Element g, const Chain& c) {
  Chain out;
  for (const auto& [cell, k] : c) {
    const auto s = x.act(dim, g, cell);
    out.emplace_back(s.cell, k * s.sign);
  }
  return normalize(std::move(out));
}

Chain scale(Chain c, int k) {
  for (auto& p : c) p.second *= k;
  return c;
}

std::string chain_string(const GCellComplex& x, int dim, const Chain& c) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [cell, k] : c) {
    if (!out.empty()) out += k < 0 ? " - " : " + ";
    else if (k < 0) out += "-";
    const int m = std::abs(k);
    if (m != 1) out += std::to_string(m) + "·";
    out += x.cells[at(dim)][at(cell)];
  }
  return out;
}

std::string face_string(const GCellComplex& x, const Word& w) { return format_word(x.one_skeleton(), w); }

void copy_labels(GCellComplex& out, const GCellComplex& in, const std::array<std::vector<int>, 4>& keep) {
  for (std::size_t d = 0; d < 4; ++d)
    for (int c : keep[d]) out.cells[d].push_back(in.cells[d][at(c)]);
}

}  // namespace

Chain normalize(Chain c) {
  std::map<int, int> sum;
  for (const auto& [cell, k] : c) sum[cell] += k;
  Chain out;
  for (const auto& [cell, k] : sum)
    if (k != 0) out.emplace_back(cell, k);
  return out;
}

int GCellComplex::dimension() const {
  for (int d = 3; d >= 0; --d)
    if (count(d) > 0) return d;
  return -1;
}

SignedCell GCellComplex::act(int dim, Element g, int cell) const {
  const auto& a = action.at(at(dim));
  if (a.empty()) return {cell, 1};
  return a.at(at(g)).at(at(cell));
}

std::optional<int> GCellComplex::find(int dim, std::string_view label) const {
  const auto& labels = cells.at(at(dim));
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

PresentedGroupoid GCellComplex::one_skeleton() const {
  PresentedGroupoid p;
  p.objects = cells[0];
  for (std::size_t e = 0; e < cells[1].size(); ++e)
    p.generators.push_back({cells[1][e], edge_ends.at(e).first, edge_ends.at(e).second});
  return p;
}

void set_trivial_action(GCellComplex& x) {
  for (std::size_t d = 0; d < 4; ++d) {
    x.action[d].assign(at(x.group.order()), {});
    for (auto& row : x.action[d])
      for (int c = 0; c < x.count(static_cast<int>(d)); ++c) row.push_back({c, 1});
  }
}

std::array<IntMatrix, 3> boundary_matrices(const GCellComplex& x) {
  std::array<IntMatrix, 3> b;
  b[0] = IntMatrix::Zero(x.count(0), x.count(1));
  for (int e = 0; e < x.count(1); ++e)
    for (const auto& [v, k] : edge_boundary(x, e)) b[0](v, e) += k;
  b[1] = IntMatrix::Zero(x.count(1), x.count(2));
  for (int c = 0; c < x.count(2); ++c)
    for (const auto& [e, k] : word_chain(x.face_words[at(c)])) b[1](e, c) += k;
  b[2] = IntMatrix::Zero(x.count(2), x.count(3));
  for (int s = 0; s < x.count(3); ++s)
    for (const auto& [c, k] : x.solid_boundaries[at(s)]) b[2](c, s) += k;
  return b;
}

std::vector<AbelianGroup> cellular_homology(const GCellComplex& x) {
  const auto b = boundary_matrices(x);
  return homology(std::span<const IntMatrix>(b.data(), b.size()));
}

int euler_characteristic(const GCellComplex& x) { return x.count(0) - x.count(1) + x.count(2) - x.count(3); }

namespace {

Verdict check_attaching(const GCellComplex& x) {
  if (x.edge_ends.size() != x.cells[1].size() || x.face_words.size() != x.cells[2].size() ||
      x.solid_boundaries.size() != x.cells[3].size())
    return Verdict::refuted("attaching data does not match the cell counts");
  for (int e = 0; e < x.count(1); ++e) {
    const auto [s, t] = x.edge_ends[at(e)];
    if (s < 0 || s >= x.count(0) || t < 0 || t >= x.count(0))
      return Verdict::refuted("edge " + x.cells[1][at(e)] + " has an endpoint outside the vertices");
  }
  for (int c = 0; c < x.count(2); ++c) {
    const auto& w = x.face_words[at(c)];
    if (w.start < 0 || w.start >= x.count(0))
      return Verdict::refuted("2-cell " + x.cells[2][at(c)] + " starts outside the vertices");
    int here = w.start;
    for (const auto& l : w.letters) {
      if (l.generator < 0 || l.generator >= x.count(1) || (l.exponent != 1 && l.exponent != -1))
        return Verdict::refuted("2-cell " + x.cells[2][at(c)] + " uses an unknown edge");
      const auto [s, t] = x.edge_ends[at(l.generator)];
      const int from = l.exponent > 0 ? s : t;
      if (from != here)
        return Verdict::refuted("attaching word of " + x.cells[2][at(c)] + " breaks at edge " +
                                x.cells[1][at(l.generator)]);
      here = l.exponent > 0 ? t : s;
    }
    if (here != w.start)
      return Verdict::refuted("attaching word of " + x.cells[2][at(c)] + " is not closed");
  }
  for (int s = 0; s < x.count(3); ++s)
    for (const auto& [c, k] : x.solid_boundaries[at(s)])
      if (c < 0 || c >= x.count(2))
        return Verdict::refuted("3-cell " + x.cells[3][at(s)] + " has a boundary term outside the 2-cells");
  return Verdict::verified();
}

Verdict check_chain_complex(const GCellComplex& x) {
  for (int s = 0; s < x.count(3); ++s) {
    const Chain b = face_chain_boundary(x, x.solid_boundaries[at(s)]);
    if (!b.empty())
      return Verdict::refuted("boundary of the boundary of " + x.cells[3][at(s)] + " is " + chain_string(x, 1, b));
  }
  return Verdict::verified();
}

Verdict check_action(const GCellComplex& x) {
  const int order = x.group.order();
  for (int d = 0; d < 4; ++d) {
    const auto& a = x.action[at(d)];
    if (a.empty()) continue;
    if (static_cast<int>(a.size()) != order)
      return Verdict::refuted("dimension " + std::to_string(d) + " action lists " + std::to_string(a.size()) +
                              " elements, group has " + std::to_string(order));
    for (Element g = 0; g < order; ++g) {
      const auto& row = a[at(g)];
      if (static_cast<int>(row.size()) != x.count(d))
        return Verdict::refuted("action of " + x.group.label(g) + " in dimension " + std::to_string(d) +
                                " has the wrong length");
      std::vector<bool> hit(at(x.count(d)), false);
      for (int c = 0; c < x.count(d); ++c) {
        const auto s = row[at(c)];
        if (s.cell < 0 || s.cell >= x.count(d) || (s.sign != 1 && s.sign != -1) || (d == 0 && s.sign != 1))
          return Verdict::refuted("action of " + x.group.label(g) + " on " + x.cells[at(d)][at(c)] +
                                  " is malformed");
        if (hit[at(s.cell)])
          return Verdict::refuted("action of " + x.group.label(g) + " is not injective on dimension " +
                                  std::to_string(d) + " (" + x.cells[at(d)][at(s.cell)] + " hit twice)");
        hit[at(s.cell)] = true;
      }
    }
    for (int c = 0; c < x.count(d); ++c)
      if (x.act(d, x.group.identity(), c) != SignedCell{c, 1})
        return Verdict::refuted("identity moves " + x.cells[at(d)][at(c)]);
    for (Element g = 0; g < order; ++g)
      for (Element h = 0; h < order; ++h)
        for (int c = 0; c < x.count(d); ++c) {
          const auto inner = x.act(d, h, c);
          const auto outer = x.act(d, g, inner.cell);
          const SignedCell composed{outer.cell, outer.sign * inner.sign};
          if (x.act(d, x.group.mul(g, h), c) != composed)
            return Verdict::refuted("(" + x.group.label(g) + "·" + x.group.label(h) + ")·" + x.cells[at(d)][at(c)] +
                                    " differs from " + x.group.label(g) + "·(" + x.group.label(h) + "·" +
                                    x.cells[at(d)][at(c)] + ")");
        }
  }
  return Verdict::verified();
}

Verdict check_equivariance(const GCellComplex& x) {
  for (Element g = 0; g < x.group.order(); ++g) {
    const std::string& gl = x.group.label(g);
    for (int e = 0; e < x.count(1); ++e) {
      const auto img = x.act(1, g, e);
      auto [s, t] = x.edge_ends[at(e)];
      std::pair<int, int> want{x.act(0, g, s).cell, x.act(0, g, t).cell};
      if (img.sign < 0) std::swap(want.first, want.second);
      if (x.edge_ends[at(img.cell)] != want)
        return Verdict::refuted(gl + " maps edge " + x.cells[1][at(e)] + " to " + x.cells[1][at(img.cell)] +
                                " but not its endpoints");
    }
    for (int c = 0; c < x.count(2); ++c) {
      const auto img = x.act(2, g, c);
      Word moved = translate_word(x, g, x.face_words[at(c)]);
      if (img.sign < 0) moved = reversed(moved, word_end_vertex(x, moved));
      if (!same_cycle(moved, x.face_words[at(img.cell)]))
        return Verdict::refuted(gl + " maps 2-cell " + x.cells[2][at(c)] + " to " + x.cells[2][at(img.cell)] +
                                " but its attaching word to " + face_string(x, moved) + " instead of " +
                                face_string(x, x.face_words[at(img.cell)]));
    }
    for (int s = 0; s < x.count(3); ++s) {
      const auto img = x.act(3, g, s);
      const Chain moved = translate_chain(x, 2, g, x.solid_boundaries[at(s)]);
      const Chain want = normalize(scale(x.solid_boundaries[at(img.cell)], img.sign));
      if (moved != want)
        return Verdict::refuted(gl + " does not commute with the boundary of " + x.cells[3][at(s)]);
    }
  }
  return Verdict::verified();
}

Verdict check_rigidity(const GCellComplex& x) {
  for (Element g = 0; g < x.group.order(); ++g)
    for (int d = 1; d < 4; ++d)
      for (int c = 0; c < x.count(d); ++c) {
        const auto img = x.act(d, g, c);
        if (img.cell != c) continue;
        const std::string where = x.group.label(g) + " maps " + x.cells[at(d)][at(c)] + " to itself";
        if (img.sign < 0) return Verdict::refuted(where + " reversing orientation");
        if (d == 2 && translate_word(x, g, x.face_words[at(c)]) != x.face_words[at(c)])
          return Verdict::refuted(where + " without fixing its boundary");
        if (d == 3)
          for (const auto& [f, k] : x.solid_boundaries[at(c)])
            if (x.act(2, g, f) != SignedCell{f, 1}) return Verdict::refuted(where + " without fixing its boundary");
      }
  return Verdict::verified();
}

}  // namespace

std::vector<Check> validate_complex(const GCellComplex& x) {
  std::vector<Check> checks;
  checks.push_back({"attaching data", check_attaching(x)});
  if (checks.back().verdict.is_refuted()) return checks;
  checks.push_back({"boundary of boundary", check_chain_complex(x)});
  checks.push_back({"group action", check_action(x)});
  if (checks.back().verdict.is_refuted()) return checks;
  checks.push_back({"equivariance", check_equivariance(x)});
  checks.push_back({"rigidity", check_rigidity(x)});
  return checks;
}

void require_valid(const GCellComplex& x) {
  static const std::map<std::string, std::string> codes = {{"attaching data", "MalformedComplex"},
                                                           {"boundary of boundary", "NotAChainComplex"},
                                                           {"group action", "NotAnAction"},
                                                           {"equivariance", "NotEquivariant"},
                                                           {"rigidity", "NotRigid"}};
  for (const auto& c : validate_complex(x))
    if (c.verdict.is_refuted()) throw Error(codes.at(c.subject), c.verdict.detail);
}

GCellComplex presentation_complex(const PresentedGroupoid& p) {
  GCellComplex x;
  x.cells[0] = p.objects;
  for (const auto& g : p.generators) {
    x.cells[1].push_back(g.label);
    x.edge_ends.emplace_back(g.source, g.target);
  }
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    x.cells[2].push_back("r" + std::to_string(r));
    x.face_words.push_back(p.relators[r]);
  }
  set_trivial_action(x);
  return x;
}

PresentedGroupoid fundamental_groupoid(const GCellComplex& x) {
  PresentedGroupoid p = x.one_skeleton();
  p.relators = x.face_words;
  return p;
}

Subcomplex fixed_subcomplex(const GCellComplex& x, const Subgroup& h) {
  Subcomplex out;
  std::array<std::vector<int>, 4> index;
  for (int d = 0; d < 4; ++d) {
    index[at(d)].assign(at(x.count(d)), -1);
    for (int c = 0; c < x.count(d); ++c) {
      bool fixed = true;
      for (Element g : h.elements)
        if (x.act(d, g, c) != SignedCell{c, 1}) {
          fixed = false;
          break;
        }
      if (!fixed) continue;
      index[at(d)][at(c)] = static_cast<int>(out.embedding[at(d)].size());
      out.embedding[at(d)].push_back(c);
    }
  }
  auto local = [&](int d, int c) {
    const int i = index[at(d)][at(c)];
    if (i < 0)
      throw Error("NotRigid", "a fixed cell has " + x.cells[at(d)][at(c)] + " in its boundary, which is not fixed");
    return i;
  };
  auto& y = out.complex;
  copy_labels(y, x, out.embedding);
  for (int e : out.embedding[1]) {
    const auto [s, t] = x.edge_ends[at(e)];
    y.edge_ends.emplace_back(local(0, s), local(0, t));
  }
  for (int c : out.embedding[2]) {
    const auto& w = x.face_words[at(c)];
    Word v{local(0, w.start), {}};
    for (const auto& l : w.letters) v.letters.push_back({local(1, l.generator), l.exponent});
    y.face_words.push_back(std::move(v));
  }
  for (int s : out.embedding[3]) {
    Chain b;
    for (const auto& [c, k] : x.solid_boundaries[at(s)]) b.emplace_back(local(2, c), k);
    y.solid_boundaries.push_back(std::move(b));
  }
  set_trivial_action(y);
  return out;
}

void validate_cellular_map(const CellularMap& f) {
  const auto& a = f.source;
  const auto& b = f.target;
  if (f.vertex_map.size() != at(a.count(0)) || f.edge_map.size() != at(a.count(1)))
    throw Error("NotCellular", "map sizes do not match the source cells");
  for (int v : f.vertex_map)
    if (v < 0 || v >= b.count(0)) throw Error("NotCellular", "a vertex maps outside the target");
  const auto skeleton = b.one_skeleton();
  for (int e = 0; e < a.count(1); ++e) {
    const auto& w = f.edge_map[at(e)];
    const auto [s, t] = a.edge_ends[at(e)];
    bool ok = w.start == f.vertex_map[at(s)];
    if (ok) {
      try {
        ok = word_end(skeleton, w) == f.vertex_map[at(t)];
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok)
      throw Error("NotCellular", "edge " + a.cells[1][at(e)] + " does not map to a path between its mapped ends");
  }
  if (!f.face_map) return;
  if (f.face_map->size() != at(a.count(2))) throw Error("NotCellular", "face map has the wrong length");
  for (int c = 0; c < a.count(2); ++c) {
    Chain image;
    for (const auto& l : a.face_words[at(c)].letters)
      for (const auto& [e, k] : word_chain(f.edge_map[at(l.generator)])) image.emplace_back(e, k * l.exponent);
    if (face_chain_boundary(b, (*f.face_map)[at(c)]) != normalize(std::move(image)))
      throw Error("NotCellular", "2-cell " + a.cells[2][at(c)] + " maps to a chain with the wrong boundary");
  }
}

CellularMap realize_morphism(const GroupoidMorphism& t) {
  validate_morphism(t);
  CellularMap f;
  f.source = presentation_complex(t.source);
  f.target = presentation_complex(t.target);
  f.vertex_map = t.object_map;
  f.edge_map = t.generator_map;

  bool rigid = std::all_of(t.generator_map.begin(), t.generator_map.end(),
                           [](const Word& w) { return w.letters.size() <= 1; });
  std::vector<Chain> faces;
  for (std::size_t r = 0; r < t.source.relators.size() && rigid; ++r) {
    const GroupWord image = cyclic_reduce(apply(t, t.source.relators[r]).letters);
    if (image.empty()) {
      faces.emplace_back();
      continue;
    }
    std::optional<Chain> match;
    for (std::size_t j = 0; j < t.target.relators.size() && !match; ++j) {
      const GroupWord rel = cyclic_reduce(t.target.relators[j].letters);
      const int c = static_cast<int>(j);
      if (same_cycle(Word{0, image}, Word{0, rel}))
        match = Chain{{c, 1}};
      else if (same_cycle(Word{0, image}, Word{0, inverse(rel)}))
        match = Chain{{c, -1}};
    }
    if (match)
      faces.push_back(*match);
    else
      rigid = false;
  }
  if (rigid) {
    f.face_map = std::move(faces);
  } else {
    const Verdict v = check_respects_relations(t);
    if (v.is_refuted()) throw Error("RelationsRefuted", v.detail);
  }
  return f;
}

MappingCylinder mapping_cylinder(const CellularMap& f, bool require_solids) {
  validate_cellular_map(f);
  if (require_solids && !f.face_map)
    throw Error("MissingFaceMap", "the map has no 2-cell part, so the cylinder has no 3-cells");
  const auto& a = f.source;
  const auto& b = f.target;
  MappingCylinder m;
  auto& y = m.complex;

  // B, then A, per dimension.
  for (int d = 0; d < 4; ++d) {
    for (int c = 0; c < b.count(d); ++c) {
      m.base[at(d)].push_back(c);
      y.cells[at(d)].push_back(b.cells[at(d)][at(c)]);
    }
    for (int c = 0; c < a.count(d); ++c) {
      m.free_end[at(d)].push_back(b.count(d) + c);
      y.cells[at(d)].push_back(a.cells[at(d)][at(c)] + "'");
    }
  }
  auto av = [&](int v) { return m.free_end[0][at(v)]; };
  auto ae = [&](int e) { return m.free_end[1][at(e)]; };
  auto af = [&](int c) { return m.free_end[2][at(c)]; };

  y.edge_ends = b.edge_ends;
  for (const auto& [s, t] : a.edge_ends) y.edge_ends.emplace_back(av(s), av(t));
  y.face_words = b.face_words;
  for (const auto& w : a.face_words) {
    Word v{av(w.start), {}};
    for (const auto& l : w.letters) v.letters.push_back({ae(l.generator), l.exponent});
    y.face_words.push_back(std::move(v));
  }
  y.solid_boundaries = b.solid_boundaries;
  for (const auto& ch : a.solid_boundaries) {
    Chain c;
    for (const auto& [face, k] : ch) c.emplace_back(af(face), k);
    y.solid_boundaries.push_back(std::move(c));
  }

  for (int v = 0; v < a.count(0); ++v) {
    m.vertical[0].push_back(y.count(1));
    y.cells[1].push_back(a.cells[0][at(v)] + "×I");
    y.edge_ends.emplace_back(av(v), f.vertex_map[at(v)]);
  }
  for (int e = 0; e < a.count(1); ++e) {
    const auto [s, t] = a.edge_ends[at(e)];
    Word w{av(s), {{ae(e), 1}, {m.vertical[0][at(t)], 1}}};
    const auto back = inverse(f.edge_map[at(e)].letters);
    w.letters.insert(w.letters.end(), back.begin(), back.end());
    w.letters.push_back({m.vertical[0][at(s)], -1});
    m.vertical[1].push_back(y.count(2));
    y.cells[2].push_back(a.cells[1][at(e)] + "×I");
    y.face_words.push_back(std::move(w));
  }
  m.solids = f.face_map.has_value();
  if (m.solids)
    for (int c = 0; c < a.count(2); ++c) {
      Chain ch{{af(c), 1}};
      for (const auto& [face, k] : (*f.face_map)[at(c)]) ch.emplace_back(face, -k);
      for (const auto& l : a.face_words[at(c)].letters) ch.emplace_back(m.vertical[1][at(l.generator)], -l.exponent);
      m.vertical[2].push_back(y.count(3));
      y.cells[3].push_back(a.cells[2][at(c)] + "×I");
      y.solid_boundaries.push_back(normalize(std::move(ch)));
    }
  set_trivial_action(y);
  return m;
}

GCellComplex orbit_product(const GCellComplex& c, const SubgroupLattice& lattice, int h) {
  const auto& g = lattice.group();
  const auto reps = lattice.coset_representatives(h);
  const int n = static_cast<int>(reps.size());
  std::vector<int> slot(at(g.order()), -1);
  for (int i = 0; i < n; ++i) slot[at(reps[at(i)])] = i;

  GCellComplex x;
  x.group = g;
  for (int i = 0; i < n; ++i) {
    const std::string suffix = "@" + g.label(reps[at(i)]);
    for (int d = 0; d < 4; ++d)
      for (const auto& label : c.cells[at(d)]) x.cells[at(d)].push_back(label + suffix);
    const int v0 = i * c.count(0), e0 = i * c.count(1), f0 = i * c.count(2);
    for (const auto& [s, t] : c.edge_ends) x.edge_ends.emplace_back(v0 + s, v0 + t);
    for (const auto& w : c.face_words) {
      Word v{v0 + w.start, {}};
      for (const auto& l : w.letters) v.letters.push_back({e0 + l.generator, l.exponent});
      x.face_words.push_back(std::move(v));
    }
    for (const auto& ch : c.solid_boundaries) {
      Chain b;
      for (const auto& [face, k] : ch) b.emplace_back(f0 + face, k);
      x.solid_boundaries.push_back(std::move(b));
    }
  }
  for (int d = 0; d < 4; ++d) {
    const int per = c.count(d);
    x.action[at(d)].assign(at(g.order()), {});
    for (Element a = 0; a < g.order(); ++a)
      for (int i = 0; i < n; ++i) {
        const int j = slot[at(lattice.canonical(g.mul(a, reps[at(i)]), h))];
        for (int cell = 0; cell < per; ++cell) x.action[at(d)][at(a)].push_back({j * per + cell, 1});
      }
  }
  return x;
}

Gluing glue(const std::vector<GCellComplex>& parts, const std::vector<Identification>& identifications) {
  Gluing out;
  if (parts.empty()) return out;
  const FiniteGroup& group = parts.front().group;
  for (const auto& p : parts)
    if (!(p.group == group)) throw Error("IncompatibleIdentification", "parts carry different groups");

  std::array<std::vector<int>, 4> offset;
  std::array<int, 4> total{};
  for (int d = 0; d < 4; ++d)
    for (const auto& p : parts) {
      offset[at(d)].push_back(total[at(d)]);
      total[at(d)] += p.count(d);
    }
  // Global cell -> (part, local cell).
  std::array<std::vector<std::pair<int, int>>, 4> origin;
  for (int d = 0; d < 4; ++d)
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (int c = 0; c < parts[p].count(d); ++c) origin[at(d)].emplace_back(static_cast<int>(p), c);

  std::vector<UnionFind> uf;
  for (int d = 0; d < 4; ++d) uf.emplace_back(total[at(d)]);
  for (const auto& id : identifications) {
    if (id.dim < 0 || id.dim > 3 || id.part_a < 0 || at(id.part_a) >= parts.size() || id.part_b < 0 ||
        at(id.part_b) >= parts.size() || id.cell_a < 0 || id.cell_a >= parts[at(id.part_a)].count(id.dim) ||
        id.cell_b < 0 || id.cell_b >= parts[at(id.part_b)].count(id.dim))
      throw Error("IncompatibleIdentification", "identification refers to a missing cell");
    uf[at(id.dim)].unite(offset[at(id.dim)][at(id.part_a)] + id.cell_a,
                         offset[at(id.dim)][at(id.part_b)] + id.cell_b);
  }

  std::array<std::vector<int>, 4> class_of;  // global -> glued
  std::array<std::vector<int>, 4> reps;      // glued -> global
  for (int d = 0; d < 4; ++d) {
    class_of[at(d)].assign(at(total[at(d)]), -1);
    for (int c = 0; c < total[at(d)]; ++c) {
      const int root = uf[at(d)].find(c);
      if (root == c) {
        class_of[at(d)][at(c)] = static_cast<int>(reps[at(d)].size());
        reps[at(d)].push_back(c);
      }
    }
    for (int c = 0; c < total[at(d)]; ++c) class_of[at(d)][at(c)] = class_of[at(d)][at(uf[at(d)].find(c))];
  }
  out.cell_map.resize(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int d = 0; d < 4; ++d)
      for (int c = 0; c < parts[p].count(d); ++c)
        out.cell_map[p][at(d)].push_back(class_of[at(d)][at(offset[at(d)][p] + c)]);

  auto glued = [&](int d, int global) { return class_of[at(d)][at(global)]; };
  auto local_to_glued = [&](int p, int d, int c) { return out.cell_map[at(p)][at(d)][at(c)]; };

  auto edge_of = [&](int global) {
    const auto [p, c] = origin[1][at(global)];
    const auto [s, t] = parts[at(p)].edge_ends[at(c)];
    return std::pair<int, int>{local_to_glued(p, 0, s), local_to_glued(p, 0, t)};
  };
  auto face_of = [&](int global) {
    const auto [p, c] = origin[2][at(global)];
    const auto& w = parts[at(p)].face_words[at(c)];
    Word v{local_to_glued(p, 0, w.start), {}};
    for (const auto& l : w.letters) v.letters.push_back({local_to_glued(p, 1, l.generator), l.exponent});
    return v;
  };
  auto solid_of = [&](int global) {
    const auto [p, c] = origin[3][at(global)];
    Chain ch;
    for (const auto& [f, k] : parts[at(p)].solid_boundaries[at(c)]) ch.emplace_back(local_to_glued(p, 2, f), k);
    return normalize(std::move(ch));
  };
  auto label_of = [&](int d, int global) {
    const auto [p, c] = origin[at(d)][at(global)];
    return parts[at(p)].cells[at(d)][at(c)];
  };
  auto action_of = [&](int d, Element g, int global) {
    const auto [p, c] = origin[at(d)][at(global)];
    const auto s = parts[at(p)].act(d, g, c);
    return SignedCell{local_to_glued(p, d, s.cell), s.sign};
  };

  auto& x = out.complex;
  x.group = group;
  for (int d = 0; d < 4; ++d)
    for (int r : reps[at(d)]) x.cells[at(d)].push_back(label_of(d, r));
  for (int r : reps[1]) x.edge_ends.push_back(edge_of(r));
  for (int r : reps[2]) x.face_words.push_back(face_of(r));
  for (int r : reps[3]) x.solid_boundaries.push_back(solid_of(r));

  auto clash = [&](int d, int a, int b, const std::string& what) {
    return Error("IncompatibleIdentification",
                 label_of(d, a) + " and " + label_of(d, b) + " are identified but " + what);
  };
  for (int d = 0; d < 4; ++d)
    for (int c = 0; c < total[at(d)]; ++c) {
      const int r = reps[at(d)][at(glued(d, c))];
      if (r == c) continue;
      if (d == 1 && edge_of(c) != edge_of(r)) throw clash(d, c, r, "have different endpoints");
      if (d == 2 && !same_cycle(face_of(c), face_of(r))) throw clash(d, c, r, "attach along different words");
      if (d == 3 && solid_of(c) != solid_of(r)) throw clash(d, c, r, "have different boundaries");
      for (Element g = 0; g < group.order(); ++g)
        if (action_of(d, g, c) != action_of(d, g, r)) throw clash(d, c, r, "are moved differently by " + group.label(g));
    }
  for (int d = 0; d < 4; ++d) {
    x.action[at(d)].assign(at(group.order()), {});
    for (Element g = 0; g < group.order(); ++g)
      for (int r : reps[at(d)]) x.action[at(d)][at(g)].push_back(action_of(d, g, r));
  }
  return out;
}

Contraction contract_edges(const GCellComplex& x, const std::vector<int>& edges) {
  std::vector<bool> drop(at(x.count(1)), false);
  for (int e : edges) {
    if (e < 0 || e >= x.count(1)) throw Error("OutOfRange", "edge index " + std::to_string(e));
    drop[at(e)] = true;
  }
  for (int e : edges)
    for (Element g = 0; g < x.group.order(); ++g)
      if (!drop[at(x.act(1, g, e).cell)])
        throw Error("NotEquivariant", "contracted edges are not invariant: " + x.group.label(g) + " moves " +
                                          x.cells[1][at(e)] + " outside the set");

  UnionFind uf(x.count(0));
  for (int e : edges) uf.unite(x.edge_ends[at(e)].first, x.edge_ends[at(e)].second);

  Contraction out;
  out.vertex_map.assign(at(x.count(0)), -1);
  out.edge_map.assign(at(x.count(1)), -1);
  auto& y = out.complex;
  y.group = x.group;
  std::vector<int> vreps;
  for (int v = 0; v < x.count(0); ++v)
    if (uf.find(v) == v) {
      out.vertex_map[at(v)] = static_cast<int>(vreps.size());
      vreps.push_back(v);
      y.cells[0].push_back(x.cells[0][at(v)]);
    }
  for (int v = 0; v < x.count(0); ++v) out.vertex_map[at(v)] = out.vertex_map[at(uf.find(v))];
  std::vector<int> ereps;
  for (int e = 0; e < x.count(1); ++e)
    if (!drop[at(e)]) {
      out.edge_map[at(e)] = static_cast<int>(ereps.size());
      ereps.push_back(e);
      y.cells[1].push_back(x.cells[1][at(e)]);
      y.edge_ends.emplace_back(out.vertex_map[at(x.edge_ends[at(e)].first)],
                               out.vertex_map[at(x.edge_ends[at(e)].second)]);
    }
  y.cells[2] = x.cells[2];
  y.cells[3] = x.cells[3];
  for (const auto& w : x.face_words) {
    Word v{out.vertex_map[at(w.start)], {}};
    for (const auto& l : w.letters)
      if (!drop[at(l.generator)]) v.letters.push_back({out.edge_map[at(l.generator)], l.exponent});
    y.face_words.push_back(std::move(v));
  }
  y.solid_boundaries = x.solid_boundaries;

  y.action[0].assign(at(x.group.order()), {});
  y.action[1].assign(at(x.group.order()), {});
  for (Element g = 0; g < x.group.order(); ++g) {
    for (int v : vreps) y.action[0][at(g)].push_back({out.vertex_map[at(x.act(0, g, v).cell)], 1});
    for (int e : ereps) {
      const auto s = x.act(1, g, e);
      y.action[1][at(g)].push_back({out.edge_map[at(s.cell)], s.sign});
    }
  }
  y.action[2] = x.action[2];
  y.action[3] = x.action[3];
  return out;
}

GCellComplex two_skeleton(const GCellComplex& x) {
  GCellComplex y = x;
  y.cells[3].clear();
  y.solid_boundaries.clear();
  if (!y.action[3].empty())
    for (auto& row : y.action[3]) row.clear();
  return y;
}

std::string to_dot(const GCellComplex& x, const std::string& name) {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  for (const auto& v : x.cells[0]) os << "  \"" << v << "\";\n";
  for (int e = 0; e < x.count(1); ++e) {
    const auto [s, t] = x.edge_ends[at(e)];
    os << "  \"" << x.cells[0][at(s)] << "\" -- \"" << x.cells[0][at(t)] << "\" [label=\"" << x.cells[1][at(e)]
       << "\"];\n";
  }
  for (int c = 0; c < x.count(2); ++c)
    os << "  // 2-cell " << x.cells[2][at(c)] << ": " << face_string(x, x.face_words[at(c)]) << "\n";
  for (int s = 0; s < x.count(3); ++s)
    os << "  // 3-cell " << x.cells[3][at(s)] << ": " << chain_string(x, 2, x.solid_boundaries[at(s)]) << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace eqfg
