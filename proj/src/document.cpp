#include "eqfg/document.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "eqfg/error.hpp"

namespace eqfg {

namespace {

template <typename T>
std::size_t at(T i) {
  return static_cast<std::size_t>(i);
}

std::string where(const YAML::Node& n) {
  const auto m = n.Mark();
  if (m.is_null()) return "";
  return "line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ": ";
}

[[noreturn]] void fail(const std::string& code, const YAML::Node& n, const std::string& message) {
  throw Error(code, where(n) + message);
}

// Re-raises library errors with the location of the node being read.
template <typename F>
auto located(const YAML::Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string prefix = e.code() + ": ";
    std::string message = e.what();
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    fail(e.code(), n, message);
  }
}

YAML::Node required(const YAML::Node& parent, const char* key, const std::string& context) {
  const YAML::Node n = parent[key];
  if (!n) fail("SchemaViolation", parent, context + " is missing '" + key + "'");
  return n;
}

std::string scalar(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) fail("SchemaViolation", n, what + " must be a scalar");
  return n.Scalar();
}

int integer(const YAML::Node& n, const std::string& what) {
  const std::string s = scalar(n, what);
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail("SchemaViolation", n, what + " must be an integer, got '" + s + "'");
}

void expect_sequence(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence()) fail("SchemaViolation", n, what + " must be a list");
}

void expect_map(const YAML::Node& n, const std::string& what) {
  if (!n.IsMap()) fail("SchemaViolation", n, what + " must be a mapping");
}

FiniteGroup parse_group(const YAML::Node& n) {
  expect_map(n, "group");
  if (n["table"]) {
    const YAML::Node t = n["table"];
    expect_sequence(t, "group table");
    FiniteGroup::Table table;
    for (const auto& row : t) {
      expect_sequence(row, "group table row");
      std::vector<Element> r;
      for (const auto& x : row) r.push_back(integer(x, "table entry"));
      table.push_back(std::move(r));
    }
    return located(t, [&] { return FiniteGroup::from_table(table); });
  }
  const int degree = integer(required(n, "degree", "group"), "degree");
  const YAML::Node gens = required(n, "generators", "group");
  expect_sequence(gens, "generators");
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(located(g, [&] { return parse_cycles(scalar(g, "generator"), degree); }));
  return located(n, [&] { return FiniteGroup::from_permutations(perms, degree); });
}

Element element_ref(const FiniteGroup& g, const YAML::Node& n) {
  const std::string s = scalar(n, "group element");
  const auto e = g.find(s);
  if (!e) fail("DanglingReference", n, "unknown group element '" + s + "'");
  return *e;
}

int subgroup_ref(const SubgroupLattice& lattice, const YAML::Node& n) {
  if (n.IsSequence()) {
    std::vector<Element> elements;
    for (const auto& x : n) elements.push_back(element_ref(lattice.group(), x));
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    const auto id = lattice.find(elements);
    if (!id) fail("SchemaViolation", n, "the listed elements do not form a subgroup");
    return *id;
  }
  const int id = integer(n, "subgroup id");
  if (id < 0 || id >= lattice.size())
    fail("DanglingReference", n, "no subgroup with id " + std::to_string(id) + " (there are " +
                                     std::to_string(lattice.size()) + ")");
  return id;
}

FamilySpec parse_family(const YAML::Node& n, const SubgroupLattice& lattice) {
  FamilySpec f;
  if (!n) return f;
  if (n.IsScalar()) {
    const std::string s = n.Scalar();
    if (s == "ALL") f.kind = FamilySpec::Kind::All;
    else if (s == "TRIVIAL") f.kind = FamilySpec::Kind::Trivial;
    else if (s == "FIN") f.kind = FamilySpec::Kind::Fin;
    else fail("SchemaViolation", n, "family must be ALL, TRIVIAL, FIN or a list of subgroups, got '" + s + "'");
    return f;
  }
  expect_sequence(n, "family");
  f.kind = FamilySpec::Kind::Explicit;
  for (const auto& x : n) f.members.push_back(subgroup_ref(lattice, x));
  std::sort(f.members.begin(), f.members.end());
  f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
  return f;
}

int object_ref(const PresentedGroupoid& p, const YAML::Node& n, const std::string& context) {
  const std::string s = scalar(n, "object");
  const auto o = p.find_object(s);
  if (!o) fail("DanglingReference", n, "unknown object '" + s + "' in " + context);
  return *o;
}

PresentedGroupoid parse_groupoid(const std::string& name, const YAML::Node& n) {
  const std::string context = "groupoid '" + name + "'";
  expect_map(n, context);
  PresentedGroupoid p;
  const YAML::Node objects = required(n, "objects", context);
  expect_sequence(objects, "objects");
  std::set<std::string> seen;
  for (const auto& o : objects) {
    p.objects.push_back(scalar(o, "object"));
    if (!seen.insert(p.objects.back()).second)
      fail("DuplicateLabel", o, "object '" + p.objects.back() + "' declared twice in " + context);
  }
  if (const YAML::Node gens = n["generators"]) {
    expect_sequence(gens, "generators");
    for (const auto& g : gens) {
      if (!g.IsSequence() || g.size() != 3) fail("SchemaViolation", g, "generator must be [label, source, target]");
      const std::string label = scalar(g[0], "generator label");
      if (!seen.insert(label).second) fail("DuplicateLabel", g, "label '" + label + "' declared twice in " + context);
      p.generators.push_back({label, object_ref(p, g[1], context), object_ref(p, g[2], context)});
    }
  }
  if (const YAML::Node rels = n["relators"]) {
    expect_sequence(rels, "relators");
    for (const auto& r : rels) {
      const Word w = located(r, [&] { return parse_word(p, scalar(r, "relator")); });
      if (located(r, [&] { return word_end(p, w); }) != w.start)
        fail("SchemaViolation", r, "relator '" + r.Scalar() + "' in " + context + " is not a closed loop");
      p.relators.push_back(w);
    }
  }
  return p;
}

struct Named {
  std::vector<std::pair<std::string, PresentedGroupoid>>* groupoids;
  const PresentedGroupoid* find(const std::string& name) const {
    for (const auto& [n, p] : *groupoids)
      if (n == name) return &p;
    return nullptr;
  }
};

FunctorSpec parse_functor(const YAML::Node& n, const SubgroupLattice& lattice, const Named& named) {
  expect_map(n, "functor");
  FunctorSpec f;
  const YAML::Node values = required(n, "values", "functor");
  expect_map(values, "functor values");
  for (const auto& kv : values) {
    const int h = subgroup_ref(lattice, kv.first);
    const std::string name = scalar(kv.second, "groupoid name");
    if (!named.find(name)) fail("DanglingReference", kv.second, "functor refers to undeclared groupoid '" + name + "'");
    if (!f.values.emplace(h, name).second) fail("SchemaViolation", kv.first, "subgroup given two values");
  }
  const YAML::Node arrows = n["arrows"];
  if (!arrows) return f;
  expect_sequence(arrows, "functor arrows");
  for (const auto& a : arrows) {
    expect_map(a, "arrow");
    const YAML::Node m = required(a, "morphism", "arrow");
    if (!m.IsSequence() || m.size() != 3) fail("SchemaViolation", m, "morphism must be [source, target, coset]");
    const int h = subgroup_ref(lattice, m[0]);
    const int k = subgroup_ref(lattice, m[1]);
    const Element rep = lattice.canonical(element_ref(lattice.group(), m[2]), k);
    if (!lattice.is_subgroup_of(lattice.conjugate(rep, h), k))
      fail("SchemaViolation", m, lattice.group().label(rep) + " does not give a morphism H" + std::to_string(h) +
                                     " -> H" + std::to_string(k));
    if (!f.values.count(h) || !f.values.count(k))
      fail("SchemaViolation", m, "arrow between subgroups without values");
    const PresentedGroupoid& source = *named.find(f.values.at(k));
    const PresentedGroupoid& target = *named.find(f.values.at(h));
    GroupoidMorphism t{source, target, {}, {}};

    const YAML::Node objects = a["objects"];
    if (objects) expect_map(objects, "arrow objects");
    for (const auto& o : source.objects) {
      if (objects && objects[o]) {
        t.object_map.push_back(object_ref(target, objects[o], "arrow target"));
      } else if (target.object_count() == 1) {
        t.object_map.push_back(0);
      } else {
        fail("SchemaViolation", objects ? objects : a, "arrow does not map object '" + o + "'");
      }
    }
    if (objects)
      for (const auto& kv : objects)
        if (!source.find_object(scalar(kv.first, "object")))
          fail("DanglingReference", kv.first, "unknown object '" + kv.first.Scalar() + "' in arrow source");

    const YAML::Node gens = a["generators"];
    if (gens) expect_map(gens, "arrow generators");
    for (const auto& g : source.generators) {
      if (!gens || !gens[g.label]) fail("SchemaViolation", gens ? gens : a, "arrow does not map generator '" + g.label + "'");
      const YAML::Node w = gens[g.label];
      const int start = t.object_map[at(g.source)];
      t.generator_map.push_back(located(w, [&] { return parse_word(target, scalar(w, "word"), start); }));
    }
    if (gens)
      for (const auto& kv : gens)
        if (!source.find_generator(scalar(kv.first, "generator")))
          fail("DanglingReference", kv.first, "unknown generator '" + kv.first.Scalar() + "' in arrow source");
    located(a, [&] {
      validate_morphism(t);
      return 0;
    });
    f.arrows.push_back({{h, k, rep}, std::move(t)});
  }
  return f;
}

Chain parse_chain(const GCellComplex& x, const YAML::Node& n) {
  const std::string s = scalar(n, "boundary chain");
  Chain c;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (s.substr(i) == "0") return c;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-' || std::isspace(static_cast<unsigned char>(s[i])))) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    int coeff = 1;
    const std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > digits && i < s.size() && s[i] == '*') {
      coeff = std::stoi(s.substr(digits, i - digits));
      ++i;
    } else {
      i = digits;
    }
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '+' && s[i] != '-') ++i;
    const std::string label = s.substr(start, i - start);
    if (label.empty()) fail("SyntaxError", n, "malformed chain '" + s + "'");
    const auto face = x.find(2, label);
    if (!face) fail("DanglingReference", n, "unknown 2-cell '" + label + "' in chain '" + s + "'");
    c.emplace_back(*face, sign * coeff);
    skip();
  }
  return normalize(std::move(c));
}

void parse_action(GCellComplex& x, const YAML::Node& n) {
  const auto& g = x.group;
  const int order = g.order();
  using Table = std::array<std::vector<SignedCell>, 4>;
  std::vector<std::optional<Table>> known(at(order));
  Table identity;
  for (int d = 0; d < 4; ++d)
    for (int c = 0; c < x.count(d); ++c) identity[at(d)].push_back({c, 1});
  known[at(g.identity())] = identity;

  if (n) {
    expect_map(n, "action");
    for (const auto& kv : n) {
      const Element e = element_ref(g, kv.first);
      Table t = identity;
      if (!kv.second.IsNull()) {
        expect_map(kv.second, "action of an element");
        for (const auto& cell : kv.second) {
          const std::string from = scalar(cell.first, "cell");
          std::string to = scalar(cell.second, "cell");
          int sign = 1;
          if (!to.empty() && to[0] == '-') {
            sign = -1;
            to = to.substr(1);
          }
          bool placed = false;
          for (int d = 0; d < 4 && !placed; ++d) {
            const auto a = x.find(d, from);
            if (!a) continue;
            const auto b = x.find(d, to);
            if (!b) fail("DanglingReference", cell.second, "'" + to + "' is not a cell of dimension " + std::to_string(d));
            t[at(d)][at(*a)] = {*b, sign};
            placed = true;
          }
          if (!placed) fail("DanglingReference", cell.first, "unknown cell '" + from + "'");
        }
      }
      if (e == g.identity() && t != identity) fail("SchemaViolation", kv.first, "the identity must act trivially");
      known[at(e)] = std::move(t);
    }
  }

  bool any = false;
  for (Element e = 0; e < order; ++e) any = any || (e != g.identity() && known[at(e)]);
  if (!any)
    for (auto& k : known) k = identity;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Element a = 0; a < order; ++a)
      for (Element b = 0; b < order; ++b) {
        const Element ab = g.mul(a, b);
        if (!known[at(a)] || !known[at(b)] || known[at(ab)]) continue;
        Table t;
        for (int d = 0; d < 4; ++d)
          for (int c = 0; c < x.count(d); ++c) {
            const auto inner = (*known[at(b)])[at(d)][at(c)];
            const auto outer = (*known[at(a)])[at(d)][at(inner.cell)];
            t[at(d)].push_back({outer.cell, outer.sign * inner.sign});
          }
        known[at(ab)] = std::move(t);
        grew = true;
      }
  }
  for (int d = 0; d < 4; ++d) x.action[at(d)].assign(at(order), {});
  for (Element e = 0; e < order; ++e) {
    if (!known[at(e)]) fail("SchemaViolation", n, "the listed elements do not determine the action of " + g.label(e));
    for (int d = 0; d < 4; ++d) x.action[at(d)][at(e)] = (*known[at(e)])[at(d)];
  }
}

GCellComplex parse_complex(const std::string& name, const YAML::Node& n, const FiniteGroup& group) {
  const std::string context = "complex '" + name + "'";
  expect_map(n, context);
  GCellComplex x;
  x.group = group;
  std::set<std::string> seen;
  auto declare = [&](int d, const YAML::Node& label_node) {
    const std::string label = scalar(label_node, "cell label");
    if (!seen.insert(label).second) fail("DuplicateLabel", label_node, "cell '" + label + "' declared twice in " + context);
    x.cells[at(d)].push_back(label);
  };
  auto vertex = [&](const YAML::Node& v) {
    const auto i = x.find(0, scalar(v, "vertex"));
    if (!i) fail("DanglingReference", v, "unknown vertex '" + v.Scalar() + "' in " + context);
    return *i;
  };

  if (const YAML::Node vs = n["vertices"]) {
    expect_sequence(vs, "vertices");
    for (const auto& v : vs) declare(0, v);
  }
  if (const YAML::Node es = n["edges"]) {
    expect_sequence(es, "edges");
    for (const auto& e : es) {
      if (!e.IsSequence() || e.size() != 3) fail("SchemaViolation", e, "edge must be [label, source, target]");
      declare(1, e[0]);
      x.edge_ends.emplace_back(vertex(e[1]), vertex(e[2]));
    }
  }
  if (const YAML::Node fs = n["faces"]) {
    expect_sequence(fs, "faces");
    const PresentedGroupoid skeleton = x.one_skeleton();
    for (const auto& f : fs) {
      if (!f.IsSequence() || f.size() != 2) fail("SchemaViolation", f, "face must be [label, attaching word]");
      declare(2, f[0]);
      const std::string text = scalar(f[1], "attaching word");
      Word w;
      if (text.starts_with("1@")) {
        const auto v = x.find(0, text.substr(2));
        if (!v) fail("DanglingReference", f[1], "unknown vertex '" + text.substr(2) + "' in " + context);
        w.start = *v;
      } else {
        w = located(f[1], [&] { return parse_word(skeleton, text); });
      }
      if (located(f[1], [&] { return word_end(skeleton, w); }) != w.start)
        fail("SchemaViolation", f[1], "attaching word of '" + f[0].Scalar() + "' is not closed");
      x.face_words.push_back(w);
    }
  }
  if (const YAML::Node ss = n["solids"]) {
    expect_sequence(ss, "solids");
    for (const auto& s : ss) {
      if (!s.IsSequence() || s.size() != 2) fail("SchemaViolation", s, "solid must be [label, boundary chain]");
      declare(3, s[0]);
      x.solid_boundaries.push_back(parse_chain(x, s[1]));
    }
  }
  parse_action(x, n["action"]);
  return x;
}

std::string chain_text(const GCellComplex& x, const Chain& c) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [cell, k] : c) {
    if (out.empty()) out += k < 0 ? "-" : "";
    else out += k < 0 ? " - " : " + ";
    if (std::abs(k) != 1) out += std::to_string(std::abs(k)) + "*";
    out += x.cells[2][at(cell)];
  }
  return out;
}

std::string family_keyword(FamilySpec::Kind k) {
  switch (k) {
    case FamilySpec::Kind::All: return "ALL";
    case FamilySpec::Kind::Trivial: return "TRIVIAL";
    case FamilySpec::Kind::Fin: return "FIN";
    case FamilySpec::Kind::Explicit: return "";
  }
  return "";
}

// Elements acting nontrivially, and for each the moved cells.
std::vector<std::pair<Element, std::vector<std::pair<std::string, std::string>>>> action_entries(
    const GCellComplex& x) {
  std::vector<std::pair<Element, std::vector<std::pair<std::string, std::string>>>> out;
  for (Element g = 0; g < x.group.order(); ++g) {
    std::vector<std::pair<std::string, std::string>> moved;
    for (int d = 0; d < 4; ++d)
      for (int c = 0; c < x.count(d); ++c) {
        const auto s = x.act(d, g, c);
        if (s == SignedCell{c, 1}) continue;
        moved.emplace_back(x.cells[at(d)][at(c)], (s.sign < 0 ? "-" : "") + x.cells[at(d)][at(s.cell)]);
      }
    if (!moved.empty()) out.emplace_back(g, std::move(moved));
  }
  return out;
}

}  // namespace

const PresentedGroupoid* Document::find_groupoid(std::string_view name) const {
  for (const auto& [n, p] : groupoids)
    if (n == name) return &p;
  return nullptr;
}

const GCellComplex* Document::find_complex(std::string_view name) const {
  for (const auto& [n, x] : complexes)
    if (n == name) return &x;
  return nullptr;
}

Document parse_document(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw Error("SyntaxError", "line " + std::to_string(e.mark.line + 1) + ", column " +
                                   std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (!root || root.IsNull()) throw Error("SchemaViolation", "empty document: missing group");
  if (!root.IsMap()) fail("SchemaViolation", root, "document must be a mapping");
  static const std::set<std::string> sections = {"group", "family", "groupoids", "functor", "complexes"};
  for (const auto& kv : root)
    if (!sections.count(kv.first.Scalar())) fail("SchemaViolation", kv.first, "unknown section '" + kv.first.Scalar() + "'");

  Document d;
  d.group = parse_group(required(root, "group", "document"));
  const SubgroupLattice lattice(d.group);
  d.family = parse_family(root["family"], lattice);

  if (const YAML::Node gs = root["groupoids"]) {
    expect_map(gs, "groupoids");
    for (const auto& kv : gs) {
      const std::string name = scalar(kv.first, "groupoid name");
      if (d.find_groupoid(name)) fail("DuplicateLabel", kv.first, "groupoid '" + name + "' declared twice");
      d.groupoids.emplace_back(name, parse_groupoid(name, kv.second));
    }
  }
  if (const YAML::Node f = root["functor"]) d.functor = parse_functor(f, lattice, Named{&d.groupoids});
  if (const YAML::Node cs = root["complexes"]) {
    expect_map(cs, "complexes");
    for (const auto& kv : cs) {
      const std::string name = scalar(kv.first, "complex name");
      if (d.find_complex(name)) fail("DuplicateLabel", kv.first, "complex '" + name + "' declared twice");
      d.complexes.emplace_back(name, parse_complex(name, kv.second, d.group));
    }
  }
  return d;
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

nlohmann::ordered_json to_json(const Document& d) {
  using json = nlohmann::ordered_json;
  json out = json::object();
  const auto& g = d.group;
  if (g.degree() > 0) {
    json gens = json::array();
    for (const auto& p : g.generators()) gens.push_back(format_cycles(p));
    out["group"] = {{"degree", g.degree()}, {"generators", gens}};
  } else {
    out["group"] = {{"table", g.table()}};
  }

  if (d.family.kind == FamilySpec::Kind::Explicit) {
    const SubgroupLattice lattice(g);
    json members = json::array();
    for (int h : d.family.members) {
      json elements = json::array();
      for (Element e : lattice[h].elements) elements.push_back(g.label(e));
      members.push_back(elements);
    }
    out["family"] = members;
  } else {
    out["family"] = family_keyword(d.family.kind);
  }

  if (!d.groupoids.empty()) {
    json gs = json::object();
    for (const auto& [name, p] : d.groupoids) {
      json gens = json::array();
      for (const auto& gen : p.generators)
        gens.push_back({gen.label, p.objects[at(gen.source)], p.objects[at(gen.target)]});
      json rels = json::array();
      for (const auto& r : p.relators) rels.push_back(format_word(p, r));
      gs[name] = {{"objects", p.objects}, {"generators", gens}, {"relators", rels}};
    }
    out["groupoids"] = gs;
  }

  if (d.functor) {
    json values = json::object();
    for (const auto& [h, name] : d.functor->values) values[std::to_string(h)] = name;
    json arrows = json::array();
    for (const auto& a : d.functor->arrows) {
      json objects = json::object();
      for (std::size_t o = 0; o < a.arrow.source.objects.size(); ++o)
        objects[a.arrow.source.objects[o]] = a.arrow.target.objects[at(a.arrow.object_map[o])];
      json gens = json::object();
      for (std::size_t i = 0; i < a.arrow.source.generators.size(); ++i)
        gens[a.arrow.source.generators[i].label] = format_word(a.arrow.target, a.arrow.generator_map[i]);
      arrows.push_back({{"morphism", {a.morphism.source, a.morphism.target, g.label(a.morphism.coset)}},
                        {"objects", objects},
                        {"generators", gens}});
    }
    out["functor"] = {{"values", values}, {"arrows", arrows}};
  }

  if (!d.complexes.empty()) {
    json cs = json::object();
    for (const auto& [name, x] : d.complexes) {
      json c = json::object();
      c["vertices"] = x.cells[0];
      json edges = json::array();
      for (int e = 0; e < x.count(1); ++e)
        edges.push_back({x.cells[1][at(e)], x.cells[0][at(x.edge_ends[at(e)].first)],
                         x.cells[0][at(x.edge_ends[at(e)].second)]});
      c["edges"] = edges;
      const auto skeleton = x.one_skeleton();
      json faces = json::array();
      for (int f = 0; f < x.count(2); ++f) {
        const Word& w = x.face_words[at(f)];
        faces.push_back({x.cells[2][at(f)], w.empty() ? "1@" + x.cells[0][at(w.start)] : format_word(skeleton, w)});
      }
      c["faces"] = faces;
      json solids = json::array();
      for (int s = 0; s < x.count(3); ++s) solids.push_back({x.cells[3][at(s)], chain_text(x, x.solid_boundaries[at(s)])});
      c["solids"] = solids;
      json action = json::object();
      for (const auto& [e, moved] : action_entries(x)) {
        json m = json::object();
        for (const auto& [from, to] : moved) m[from] = to;
        action[g.label(e)] = m;
      }
      c["action"] = action;
      cs[name] = c;
    }
    out["complexes"] = cs;
  }
  return out;
}

namespace {

// Leaf lists in flow style, everything else in block style.
YAML::Node to_yaml(const nlohmann::ordered_json& j) {
  YAML::Node n;
  if (j.is_object()) {
    n = YAML::Node(YAML::NodeType::Map);
    for (const auto& [k, v] : j.items()) n[k] = to_yaml(v);
  } else if (j.is_array()) {
    n = YAML::Node(YAML::NodeType::Sequence);
    for (const auto& x : j) n.push_back(to_yaml(x));
    if (std::all_of(j.begin(), j.end(), [](const auto& x) { return x.is_primitive(); }))
      n.SetStyle(YAML::EmitterStyle::Flow);
  } else if (j.is_string()) {
    n = j.get<std::string>();
  } else if (j.is_number_integer()) {
    n = j.get<long long>();
  } else if (j.is_boolean()) {
    n = j.get<bool>();
  }
  return n;
}

}  // namespace

std::string render_document(const Document& d) {
  YAML::Emitter out;
  out.SetIndent(2);
  out << to_yaml(to_json(d));
  return std::string(out.c_str()) + "\n";
}

SubgroupFamily resolve_family(const Document& d, const SubgroupLattice& lattice) {
  switch (d.family.kind) {
    case FamilySpec::Kind::All:
    case FamilySpec::Kind::Fin: return family_all(lattice);
    case FamilySpec::Kind::Trivial: return family_trivial(lattice);
    case FamilySpec::Kind::Explicit: return validate_family(lattice, d.family.members);
  }
  return family_all(lattice);
}

OrbFunctor build_functor(const Document& d) {
  if (!d.functor) throw Error("SchemaViolation", "document has no functor section");
  const SubgroupLattice lattice(d.group);
  auto category = build_category(d.group, resolve_family(d, lattice));
  std::map<int, PresentedGroupoid> values;
  for (const auto& [h, name] : d.functor->values) {
    if (!category->family().contains(h)) continue;
    values.emplace(h, *d.find_groupoid(name));
  }
  std::map<int, GroupoidMorphism> given;
  for (const auto& a : d.functor->arrows) {
    if (!category->contains(a.morphism))
      throw Error("SchemaViolation", "arrow for " + category->describe(a.morphism) + " lies outside the family");
    given[category->index_of(a.morphism)] = a.arrow;
  }
  return complete_functor(std::move(category), std::move(values), given);
}

Document functor_document(const OrbFunctor& f) {
  const auto& c = *f.category;
  Document d;
  d.group = c.group();
  if (c.family() == family_all(c.lattice())) {
    d.family.kind = FamilySpec::Kind::All;
  } else {
    d.family.kind = FamilySpec::Kind::Explicit;
    d.family.members = c.family().members;
  }
  FunctorSpec out;
  for (int h : c.objects()) {
    const std::string name = "H" + std::to_string(h);
    d.groupoids.emplace_back(name, f.value(h));
    out.values[h] = name;
  }
  for (const auto& m : c.morphisms())
    if (!c.is_identity(m)) out.arrows.push_back({m, f.arrow(m)});
  d.functor = std::move(out);
  return d;
}

}  // namespace eqfg
