// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "eqfg/cli.hpp"
#include "eqfg/document.hpp"
#include "eqfg/error.hpp"
#include "eqfg/realization.hpp"
#include "support.hpp"

using namespace eqfg;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

AbelianGroup ab(std::size_t rank, std::vector<int> torsion = {}) {
  AbelianGroup g;
  g.rank = rank;
  for (int t : torsion) g.torsion.emplace_back(t);
  return g;
}

std::string cli(std::vector<std::string> args, int& code) {
  std::ostringstream out, err;
  code = run(args, out, err);
  return out.str();
}

bool contains(const std::string& text, const std::string& s) { return text.find(s) != std::string::npos; }

std::vector<std::pair<std::string, GCellComplex>> corpus_complexes() {
  std::vector<std::pair<std::string, GCellComplex>> out;
  for (const auto& entry : std::filesystem::directory_iterator(EQFG_DATA_DIR)) {
    try {
      for (auto& [name, x] : read_document(entry.path().string()).complexes)
        out.emplace_back(entry.path().filename().string() + ":" + name, x);
    } catch (const Error&) {
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Result torus_end_to_end() {
  Result o;
  const auto start = Clock::now();
  int code = 0;
  const auto text = cli({"realize", support::data("torus_z2.yaml")}, code);
  o.require(code == 0, "realize exited with " + std::to_string(code));
  o.require(contains(text, "H_3 = Z^3\n"), "H_3 is not Z^3");
  o.require(contains(text, "H^3 = Z^3\n"), "H^3 is not Z^3");
  const auto r = build_space(build_functor(read_document(support::data("torus_z2.yaml"))));
  const auto h = cellular_homology(r.space);
  o.require(h[3].rank == 3, "library H_3 rank " + std::to_string(h[3].rank));
  o.require(cohomology_ranks(h)[3].rank == 3, "library H^3 rank");
  o.require(support::betti(r.space).q[3] == 3, "oracle b_3 differs");
  const double t = seconds_since(start);
  o.require(t < 5.0, "took " + std::to_string(t) + " s");
  return o;
}

Result fixed_set_structure() {
  Result o;
  int code = 0;
  const auto text = cli({"induced-functor", support::data("torus_z2.yaml"), "torus"}, code);
  o.require(code == 0, "induced-functor exited with " + std::to_string(code));
  o.require(contains(text, "H1{0, 1}: 2 objects, 2 components; isotropy Z, Z"), "value(Z2) summary");
  o.require(contains(text, "H0{0}: 2 objects, 1 components; isotropy Z^2"), "value({0}) summary");
  o.require(contains(text, "abelianized H0 -> H0 via 1·H0: [-1 0; 0 1]"), "tau matrix");

  const auto f = induced_functor_from_complex(*read_document(support::data("torus_z2.yaml")).find_complex("torus"));
  const auto& top = f.value(1);
  const auto ct = components(top);
  o.require(ct.count() == 2, "value(Z2) components");
  for (const auto& m : ct.members) o.require(abelianized_isotropy(top, m.front()) == ab(1), "value(Z2) isotropy");
  o.require(components(f.value(0)).count() == 1, "value({0}) components");
  o.require(abelianized_isotropy(f.value(0), 0) == ab(2), "value({0}) isotropy");
  return o;
}

Result step2_discrepancy() {
  Result o;
  const auto honest = build_functor(read_document(support::data("torus_z2_honest.yaml")));
  for (const auto& e : verify_step2(honest, zero_skeleton_coend(honest)))
    o.require(e.kind == Step2Kind::Bijection, "honest functor not a bijection at H" + std::to_string(e.subgroup));
  const auto compressed = build_functor(read_document(support::data("torus_z2.yaml")));
  const auto s = verify_step2(compressed, zero_skeleton_coend(compressed));
  bool found = false;
  for (const auto& e : s)
    if (e.subgroup == 1) {
      found = true;
      o.require(e.kind == Step2Kind::ProperQuotient, std::string("compressed at Z2: ") + to_string(e.kind));
      o.require(e.witness == "(v1, v2)", "witness " + e.witness);
    } else {
      o.require(e.kind == Step2Kind::Bijection, "compressed at {0}");
    }
  o.require(found, "no entry for Z2");
  return o;
}

Result classifying_spaces() {
  Result o;
  const std::vector<std::pair<std::string, std::vector<AbelianGroup>>> cases = {
      {"k_z2_squared.yaml", {ab(1), ab(2), ab(1), ab(0)}},
      {"k_cyclic2.yaml", {ab(1), ab(0, {2}), ab(0), ab(0)}},
      {"k_free2.yaml", {ab(1), ab(2), ab(0), ab(0)}},
  };
  for (const auto& [name, expected] : cases) {
    const auto f = build_functor(read_document(support::data(name)));
    o.require(cellular_homology(presentation_complex(f.value(0))) == expected, name + ": presentation homology");
    const auto r = build_space(f);
    for (const auto& c : verify_fundamental_functor(f, r))
      o.require(c.verdict.is_verified(), name + ": " + c.subject + " " + to_string(c.verdict));
  }
  return o;
}

Result mapping_torus() {
  Result o;
  PresentedGroupoid p;
  p.objects = {"pt"};
  p.generators = {{"a", 0, 0}, {"b", 0, 0}};
  p.relators = {parse_word(p, "a b a^-1 b^-1")};
  const auto cyl = mapping_cylinder(realize_morphism(identity_morphism(p)), true);
  std::vector<Identification> ids;
  for (int d = 0; d < 3; ++d)
    for (std::size_t c = 0; c < cyl.free_end[static_cast<std::size_t>(d)].size(); ++c)
      ids.push_back({d, 0, cyl.free_end[static_cast<std::size_t>(d)][c], 0, cyl.base[static_cast<std::size_t>(d)][c]});
  const auto t3 = glue({cyl.complex}, ids).complex;
  const auto h = cellular_homology(t3);
  o.require(h == std::vector<AbelianGroup>{ab(1), ab(3), ab(3), ab(1)}, "homology is not that of T^3");
  o.require(support::betti(t3).q == std::array<int, 4>{1, 3, 3, 1}, "oracle Betti numbers differ");
  return o;
}

Result orbit_category_laws() {
  Result o;
  const auto start = Clock::now();
  auto cyclic = [](int n) {
    FiniteGroup::Table t(static_cast<std::size_t>(n), std::vector<Element>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return FiniteGroup::from_table(t);
  };
  const std::vector<std::pair<std::string, FiniteGroup>> groups = {
      {"Z2", cyclic(2)},
      {"Z4", cyclic(4)},
      {"S3", FiniteGroup::from_permutations({parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)}, 3)}};
  for (const auto& [name, g] : groups) {
    const SubgroupLattice lattice(g);
    const auto c = build_category(g, family_all(lattice));
    for (const auto& check : c->check_laws()) o.require(check.verdict.is_verified(), name + ": " + check.subject);
    const auto& ms = c->morphisms();
    for (const auto& a : ms) {
      o.require(c->compose(c->identity(a.target), a) == a && c->compose(a, c->identity(a.source)) == a,
                name + ": identity law");
      for (const auto& b : ms) {
        if (b.source != a.target) continue;
        for (const auto& d : ms)
          if (d.source == b.target)
            o.require(c->compose(d, c->compose(b, a)) == c->compose(c->compose(d, b), a), name + ": associativity");
      }
    }
    for (int k = 0; k < lattice.size(); ++k) {
      const auto index = static_cast<std::size_t>(g.order() / lattice[k].order());
      o.require(c->hom(lattice.trivial(), k).size() == index, name + ": |Hom(G/e, G/K)| for K = H" + std::to_string(k));
    }
  }
  const double t = seconds_since(start);
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
  return o;
}

Result smith_suite() {
  Result o;
  std::mt19937 rng(4711);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    support::Mat a = support::zeros(4, 4);
    IntMatrix A(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        a[i][j] = entry(rng);
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a[i][j];
      }
    const auto s = smith_normal_form(A);
    const std::string at = "trial " + std::to_string(trial) + ": ";
    o.require(s.U * A * s.V == s.D, at + "U A V != D");
    auto as_mat = [](const IntMatrix& m) {
      support::Mat out = support::zeros(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          out[i][j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).convert_to<long long>();
      return out;
    };
    o.require(std::abs(support::det(as_mat(s.U))) == 1, at + "U not unimodular");
    o.require(std::abs(support::det(as_mat(s.V))) == 1, at + "V not unimodular");
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      if (s.diagonal[i] != 0) o.require(s.diagonal[i + 1] % s.diagonal[i] == 0, at + "divisibility");
      else o.require(s.diagonal[i + 1] == 0, at + "zeros not last");
    }
    o.require(s.diagonal[0] == support::minor_gcd(a, 1), at + "d_1 is not the gcd of the entries");
  }
  for (const auto& [name, x] : corpus_complexes()) {
    int chi = 0;
    for (int d = 0; d < 4; ++d) chi += (d % 2 ? -1 : 1) * x.count(d);
    const auto h = cellular_homology(x);
    int alternating = 0;
    for (int d = 0; d < 4; ++d) alternating += (d % 2 ? -1 : 1) * static_cast<int>(h[static_cast<std::size_t>(d)].rank);
    o.require(euler_characteristic(x) == chi && alternating == chi, name + ": Euler characteristic");
  }
  return o;
}

Result round_trip() {
  Result o;
  const auto corpus = corpus_complexes();
  o.require(corpus.size() >= 3, "corpus has fewer than three complexes");
  for (const auto& [name, x] : corpus)
    for (const auto& c : validate_functoriality(induced_functor_from_complex(x)))
      o.require(!c.verdict.is_refuted(), name + ": " + c.subject);
  std::mt19937 rng(2718);
  for (int i = 0; i < 20; ++i) {
    const auto p = support::random_groupoid(rng);
    o.require(fundamental_groupoid(presentation_complex(p)) == p, "random groupoid " + std::to_string(i));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"torus end to end: H_3 and H^3 of rank 3", torus_end_to_end},
      {"fixed-set structure of the torus", fixed_set_structure},
      {"step 2 bijection and quotient", step2_discrepancy},
      {"trivial group classifying spaces", classifying_spaces},
      {"mapping torus of the identity is T^3", mapping_torus},
      {"orbit category laws for Z2, Z4, S3", orbit_category_laws},
      {"Smith normal form suite and Euler characteristics", smith_suite},
      {"induced functors and presentation round trip", round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
    if (!o.pass) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
    if (!o.pass) ++failures;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failures ? 1 : 0;
}
