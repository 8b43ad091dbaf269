#include "eqfg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "eqfg/document.hpp"
#include "eqfg/error.hpp"
#include "eqfg/realization.hpp"
#include "eqfg/report.hpp"

namespace eqfg {

namespace {

struct Options {
  std::string command;
  std::string path;
  std::vector<std::string> arguments;
  std::string format = "text";
  std::string dot_path;
  int max_dim = 3;
  bool strict = false;
};

// Failures of the input rather than of the mathematics.
struct InputError : Error {
  using Error::Error;
};

std::string homology_line(int k, const AbelianGroup& g) { return "H_" + std::to_string(k) + " = " + to_string(g); }

void homology_section(Section& s, const std::vector<AbelianGroup>& h) {
  for (std::size_t k = 0; k < h.size(); ++k) s.lines.push_back(homology_line(static_cast<int>(k), h[k]));
}

const GCellComplex& complex_arg(const Document& d, const Options& o, std::size_t i) {
  if (o.arguments.size() <= i) throw InputError("MissingArgument", o.command + " needs a complex name");
  const auto* x = d.find_complex(o.arguments[i]);
  if (!x) throw InputError("DanglingReference", "no complex named '" + o.arguments[i] + "'");
  return *x;
}

std::string groupoid_summary(const PresentedGroupoid& p) {
  const GroupoidOracle oracle(p);
  std::string s = std::to_string(p.object_count()) + " objects, " + std::to_string(oracle.components().count()) +
                  " components";
  for (int i = 0; i < oracle.components().count(); ++i) {
    const auto& c = oracle.component(i);
    s += i == 0 ? "; isotropy " : ", ";
    s += to_string(c.abelian_invariants);
  }
  return s;
}

void isotropy_lines(Section& s, const PresentedGroupoid& p) {
  const GroupoidOracle oracle(p);
  for (int i = 0; i < oracle.components().count(); ++i) {
    const auto& c = oracle.component(i);
    const auto& pres = c.simplified.presentation;
    std::string rels;
    for (const auto& r : pres.relators) rels += (rels.empty() ? "" : ", ") + format_group_word(pres.generators, r);
    std::string gens;
    for (const auto& g : pres.generators) gens += (gens.empty() ? "" : " ") + g;
    s.lines.push_back("component at " + p.objects[static_cast<std::size_t>(c.isotropy.base)] + ": <" + gens + " | " +
                      rels + ">, abelianized " + to_string(c.abelian_invariants));
  }
}

Section validate(const std::string& path) {
  Section r;
  r.title = "validate";
  Document d;
  try {
    d = read_document(path);
  } catch (const Error& e) {
    static const std::set<std::string> group_codes = {"NotAGroupTable", "NoIdentity", "NoInverse", "NotAssociative"};
    if (!group_codes.count(e.code())) throw InputError(e.code(), e.what());
    r.checks.push_back({"group axioms", Verdict::refuted(e.what())});
    return r;
  }
  const SubgroupLattice lattice(d.group);
  r.child("group")
      .field("order", std::to_string(d.group.order()))
      .field("subgroups", std::to_string(lattice.size()))
      .checks.push_back({"group axioms", Verdict::verified()});

  auto& fam = r.child("family");
  SubgroupFamily family;
  try {
    family = resolve_family(d, lattice);
  } catch (const Error& e) {
    fam.checks.push_back({"family closure", Verdict::refuted(e.what())});
    return r;
  }
  fam.field("members", std::to_string(family.members.size()));
  fam.checks.push_back({"family closure", Verdict::verified()});

  const auto category = build_category(d.group, family);
  auto& orb = r.child("orbit category");
  orb.field("morphisms", std::to_string(category->morphisms().size()));
  orb.add(category->check_laws());

  for (const auto& [name, p] : d.groupoids) {
    auto& s = r.child("groupoid " + name);
    s.field("summary", groupoid_summary(p));
    s.checks.push_back({"presentation", Verdict::verified()});
  }
  if (d.functor) {
    auto& s = r.child("functor");
    try {
      s.add(validate_functoriality(build_functor(d)));
    } catch (const Error& e) {
      s.checks.push_back({"functor", Verdict::refuted(e.what())});
    }
  }
  for (const auto& [name, x] : d.complexes) r.child("complex " + name).add(validate_complex(x));
  return r;
}

Section orbit_cat(const Document& d) {
  Section r;
  r.title = "orbit-cat";
  const SubgroupLattice lattice(d.group);
  const auto category = build_category(d.group, resolve_family(d, lattice));
  auto& subs = r.child("subgroups");
  for (int h : category->objects()) subs.lines.push_back(lattice.describe(h));
  auto& homs = r.child("hom");
  for (int h : category->objects())
    for (int k : category->objects()) {
      const auto& hs = category->hom(h, k);
      if (hs.empty()) continue;
      std::string cosets;
      for (const auto& m : hs) cosets += (cosets.empty() ? "" : ", ") + d.group.label(m.coset);
      homs.lines.push_back("Hom(G/H" + std::to_string(h) + ", G/H" + std::to_string(k) + ") = " +
                           std::to_string(hs.size()) + ": " + cosets);
    }
  r.field("morphisms", std::to_string(category->morphisms().size()));
  r.add(category->check_laws());
  return r;
}

Section realize(const Document& d, const Options& o) {
  Section r;
  r.title = "realize";
  OrbFunctor f;
  try {
    f = build_functor(d);
  } catch (const Error& e) {
    throw InputError(e.code(), e.what());
  }
  auto& fun = r.child("functoriality");
  fun.add(validate_functoriality(f));
  if (overall(fun.checks).is_refuted()) return r;

  const RealizationResult result = build_space(f, {o.max_dim});
  const auto& lattice = f.category->lattice();

  auto& zero = r.child("0-skeleton");
  zero.field("points", std::to_string(result.zero_skeleton.elements.size()));
  zero.field("classes", std::to_string(result.zero_skeleton.classes.size()));
  for (const auto& e : result.step2) {
    const std::string subject = "step2 at H" + std::to_string(e.subgroup);
    zero.lines.push_back("H" + std::to_string(e.subgroup) + ": " + to_string(e.kind) +
                         (e.witness.empty() ? "" : " " + e.witness));
    zero.checks.push_back({subject,
                           e.kind == Step2Kind::Bijection ? Verdict::verified()
                                                          : Verdict::refuted(std::string(to_string(e.kind)) + " " + e.witness),
                           false});
  }

  auto& w = r.child("cylinder space");
  w.field("cells", std::to_string(result.cylinder_space.count(0)) + " " + std::to_string(result.cylinder_space.count(1)) +
                       " " + std::to_string(result.cylinder_space.count(2)) + " " +
                       std::to_string(result.cylinder_space.count(3)));
  homology_section(w, cellular_homology(result.cylinder_space));

  auto& x = r.child("space");
  x.field("cells", std::to_string(result.space.count(0)) + " " + std::to_string(result.space.count(1)) + " " +
                       std::to_string(result.space.count(2)) + " " + std::to_string(result.space.count(3)));
  const auto h = cellular_homology(result.space);
  homology_section(x, h);
  const auto co = cohomology_ranks(h);
  for (std::size_t k = 0; k < co.size(); ++k)
    x.lines.push_back("H^" + std::to_string(k) + " = " + to_string(co[k]));
  x.add(validate_complex(result.space));

  auto& step45 = r.child("recovered functor");
  step45.add(verify_fundamental_functor(f, result));
  for (int hh : f.category->objects())
    step45.lines.push_back(lattice.describe(hh) + ": " + groupoid_summary(f.value(hh)));

  if (!result.notes.empty()) r.child("notes").lines = result.notes;

  Document out;
  out.group = d.group;
  out.complexes.emplace_back("X", result.space);
  auto& doc = r.child("complex document");
  std::istringstream lines(render_document(out));
  for (std::string line; std::getline(lines, line);) doc.lines.push_back(line);

  if (!o.dot_path.empty()) {
    std::ofstream dot(o.dot_path);
    if (!dot) throw InputError("FileNotWritable", "cannot write " + o.dot_path);
    dot << to_dot(result.space, "X");
  }
  return r;
}

Section homology(const Document& d, const Options& o) {
  const auto& x = complex_arg(d, o, 0);
  Section r;
  r.title = "homology " + o.arguments[0];
  r.field("cells", std::to_string(x.count(0)) + " " + std::to_string(x.count(1)) + " " + std::to_string(x.count(2)) +
                       " " + std::to_string(x.count(3)));
  r.field("euler characteristic", std::to_string(euler_characteristic(x)));
  r.add(validate_complex(x));
  const auto h = cellular_homology(x);
  homology_section(r, h);
  const auto co = cohomology_ranks(h);
  for (std::size_t k = 0; k < co.size(); ++k) r.lines.push_back("H^" + std::to_string(k) + " = " + to_string(co[k]));
  return r;
}

int subgroup_arg(const SubgroupLattice& lattice, const Options& o, std::size_t i) {
  if (o.arguments.size() <= i) throw InputError("MissingArgument", o.command + " needs a subgroup id");
  try {
    std::size_t used = 0;
    const int h = std::stoi(o.arguments[i], &used);
    if (used == o.arguments[i].size() && h >= 0 && h < lattice.size()) return h;
  } catch (const std::exception&) {
  }
  throw InputError("DanglingReference", "no subgroup with id '" + o.arguments[i] + "'");
}

Section fixed(const Document& d, const Options& o) {
  const auto& x = complex_arg(d, o, 0);
  require_valid(x);
  const SubgroupLattice lattice(d.group);
  const int h = subgroup_arg(lattice, o, 1);
  const Subcomplex sub = fixed_subcomplex(x, lattice[h]);
  Section r;
  r.title = "fixed " + o.arguments[0] + " " + lattice.describe(h);
  for (int dim = 0; dim < 4; ++dim) {
    std::string cells;
    for (const auto& c : sub.complex.cells[static_cast<std::size_t>(dim)]) cells += (cells.empty() ? "" : " ") + c;
    r.field("cells " + std::to_string(dim), cells.empty() ? "-" : cells);
  }
  homology_section(r, cellular_homology(sub.complex));
  auto& pi = r.child("fundamental groupoid");
  const auto p = fundamental_groupoid(sub.complex);
  pi.field("summary", groupoid_summary(p));
  isotropy_lines(pi, p);
  return r;
}

Section pi1(const Document& d, const Options& o) {
  const auto& x = complex_arg(d, o, 0);
  Section r;
  r.title = "pi1 " + o.arguments[0];
  const auto p = fundamental_groupoid(x);
  r.field("summary", groupoid_summary(p));
  isotropy_lines(r, p);
  return r;
}

Section induced(const Document& d, const Options& o, Document& emitted) {
  const auto& x = complex_arg(d, o, 0);
  require_valid(x);
  const OrbFunctor f = induced_functor_from_complex(x);
  Section r;
  r.title = "induced-functor " + o.arguments[0];
  r.add(validate_functoriality(f));
  const auto& lattice = f.category->lattice();
  for (int h : f.category->objects()) r.lines.push_back(lattice.describe(h) + ": " + groupoid_summary(f.value(h)));
  for (const auto& m : f.category->morphisms()) {
    if (f.category->is_identity(m)) continue;
    const auto& a = f.arrow(m);
    const GroupoidOracle src(a.source);
    const GroupoidOracle tgt(a.target);
    if (src.components().count() != 1 || tgt.components().count() != 1) continue;
    std::string rows;
    const auto& iso = src.component(0).isotropy;
    for (const auto& name : src.component(0).simplified.presentation.generators) {
      const auto& all = iso.presentation.generators;
      const auto i = std::find(all.begin(), all.end(), name) - all.begin();
      const Word loop = iso.loop(a.source, static_cast<int>(i));
      const IntVector v = tgt.abelianize(apply(a, loop));
      std::string row;
      for (Eigen::Index j = 0; j < v.size(); ++j) row += (j ? " " : "") + v(j).str();
      rows += (rows.empty() ? "" : "; ") + row;
    }
    r.lines.push_back("abelianized " + f.category->describe(m) + ": [" + rows + "]");
  }
  emitted = functor_document(f);
  emitted.complexes.emplace_back(o.arguments[0], x);
  return r;
}

std::string export_dot(const Document& d, const Options& o) {
  if (o.arguments.empty()) throw InputError("MissingArgument", "export-dot needs a groupoid or complex name");
  const std::string& name = o.arguments[0];
  if (const auto* x = d.find_complex(name)) return to_dot(*x, name);
  if (const auto* p = d.find_groupoid(name)) return to_dot(*p, name);
  throw InputError("DanglingReference", "no groupoid or complex named '" + name + "'");
}

int dispatch(const Options& o, std::ostream& out) {
  static const std::set<std::string> commands = {"validate", "orbit-cat", "realize",         "homology",   "fixed",
                                                 "pi1",      "export",    "induced-functor", "export-dot"};
  if (!commands.count(o.command)) throw InputError("UnknownCommand", "unknown command '" + o.command + "'");
  if (o.max_dim != 2 && o.max_dim != 3) throw InputError("InvalidOption", "--max-dim must be 2 or 3");
  if (o.format != "text" && o.format != "machine") throw InputError("InvalidOption", "--format must be text or machine");

  Section report;
  if (o.command == "validate") {
    report = validate(o.path);
  } else {
    Document d;
    try {
      d = read_document(o.path);
    } catch (const Error& e) {
      throw InputError(e.code(), e.what());
    }
    if (o.command == "export") {
      out << to_json(d).dump(2) << "\n";
      return 0;
    }
    if (o.command == "export-dot") {
      out << export_dot(d, o);
      return 0;
    }
    if (o.command == "induced-functor") {
      Document emitted;
      report = induced(d, o, emitted);
      if (o.format == "machine") {
        nlohmann::ordered_json j = render_json(report);
        j["document"] = to_json(emitted);
        out << j.dump(2) << "\n";
      } else {
        std::istringstream text(render_text(report));
        for (std::string line; std::getline(text, line);) out << "# " << line << "\n";
        out << render_document(emitted);
      }
      return exit_code(report, o.strict);
    }
    if (o.command == "orbit-cat") report = orbit_cat(d);
    else if (o.command == "realize") report = realize(d, o);
    else if (o.command == "homology") report = homology(d, o);
    else if (o.command == "fixed") report = fixed(d, o);
    else report = pi1(d, o);
  }
  if (o.format == "machine") out << render_json(report).dump(2) << "\n";
  else out << render_text(report);
  return exit_code(report, o.strict);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Equivariant fundamental groupoids of finite G-complexes", "eqfg"};
  app.add_option("command", o.command,
                 "validate | orbit-cat | realize | homology | fixed | pi1 | induced-functor | export-dot | export")
      ->required();
  app.add_option("document", o.path, "input document")->required();
  app.add_option("arguments", o.arguments, "complex, subgroup id or object name");
  app.add_option("--format", o.format, "text or machine");
  app.add_option("--emit-dot", o.dot_path, "write the 1-skeleton of the realized complex as DOT");
  app.add_option("--max-dim", o.max_dim, "2 or 3");
  app.add_flag("--strict", o.strict, "treat Undecided as failure");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    return dispatch(o, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace eqfg
