#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqfg/document.hpp"
#include "eqfg/error.hpp"
#include "eqfg/functor.hpp"
#include "support.hpp"

using namespace eqfg;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

GCellComplex torus_complex() { return *read_document(support::data("torus_z2.yaml")).find_complex("torus"); }

GCellComplex complex_from(const std::string& yaml, const std::string& name) {
  return *parse_document(yaml).find_complex(name);
}


Outcome worst_of(const std::vector<Check>& checks) { return overall(checks).outcome; }

Outcome find(const std::vector<Check>& checks, const std::string& prefix) {
  for (const auto& c : checks)
    if (c.subject.starts_with(prefix)) return c.verdict.outcome;
  FAIL("no check " << prefix);
  return Outcome::Undecided;
}

// Per-subgroup count of components and abelianized isotropy ranks.
std::vector<std::size_t> ranks(const PresentedGroupoid& p) {
  std::vector<std::size_t> out;
  for (const auto& m : components(p).members) out.push_back(abelianized_isotropy(p, m.front()).rank);
  return out;
}

std::vector<SignedCell> identity_edges(const GCellComplex& x) {
  std::vector<SignedCell> out;
  for (int e = 0; e < x.count(1); ++e) out.push_back({e, 1});
  return out;
}

std::vector<int> identity_vertices(const GCellComplex& x) {
  std::vector<int> out;
  for (int v = 0; v < x.count(0); ++v) out.push_back(v);
  return out;
}

const std::string two_points = R"y(
group:
  table: [[0]]
complexes:
  two:
    vertices: [p, q]
  one:
    vertices: [pt]
)y";

}  // namespace

TEST_CASE("compressed torus functor is functorial") {
  const auto f = build_functor(read_document(support::data("torus_z2.yaml")));
  const auto checks = validate_functoriality(f);
  REQUIRE(checks.size() == 3);
  for (const auto& c : checks) {
    INFO(c.subject << ": " << c.verdict.detail);
    CHECK(c.verdict.is_verified());
  }
  CHECK(f.category->morphisms().size() == 4);
  const auto& tau = f.arrow({0, 0, 1});
  const auto twice = compose_morphisms(tau, tau);
  CHECK(compare_morphisms(twice, identity_morphism(f.value(0))).is_verified());
}

TEST_CASE("a non-involutive tau breaks composition") {
  auto text = slurp(support::data("torus_z2.yaml"));
  const std::string from = R"({a: "a^-1", b: "b"})";
  REQUIRE(text.find(from) != std::string::npos);
  text.replace(text.find(from), from.size(), R"({a: "a b", b: "b"})");
  const auto f = build_functor(parse_document(text));
  const auto checks = validate_functoriality(f);
  CHECK(find(checks, "composition") == Outcome::Refuted);
  CHECK(find(checks, "identities") == Outcome::Verified);
  CHECK(find(checks, "arrows respect relations") == Outcome::Verified);
}

TEST_CASE("trivial group functors") {
  for (const auto* name : {"k_cyclic2.yaml", "k_free2.yaml", "k_z2_squared.yaml"}) {
    const auto f = build_functor(read_document(support::data(name)));
    CHECK(f.category->morphisms().size() == 1);
    CHECK(worst_of(validate_functoriality(f)) == Outcome::Verified);
  }
}

TEST_CASE("functor built from missing arrows") {
  auto text = slurp(support::data("torus_z2.yaml"));
  const auto cut = text.find("    # collapse");
  const auto end = text.find("    # tau");
  text.erase(cut, end - cut);
  CHECK_THROWS_MATCHES(build_functor(parse_document(text)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == "MissingArrow"; }));
}

TEST_CASE("induced functor of the torus") {
  const auto f = induced_functor_from_complex(torus_complex());
  CHECK(ranks(f.value(1)) == std::vector<std::size_t>{1, 1});
  CHECK(ranks(f.value(0)) == std::vector<std::size_t>{2});
  CHECK(worst_of(validate_functoriality(f)) == Outcome::Verified);
  const auto& tau = f.arrow({0, 0, 1});
  CHECK(compare_morphisms(compose_morphisms(tau, tau), identity_morphism(f.value(0))).is_verified());
  CHECK_FALSE(compare_morphisms(tau, identity_morphism(f.value(0))).is_verified());
}

TEST_CASE("induced functors of small complexes") {
  const auto circle = read_document(support::data("reflection_circle.yaml")).complexes.front().second;
  const auto f = induced_functor_from_complex(circle);
  CHECK(ranks(f.value(0)) == std::vector<std::size_t>{1});
  CHECK(ranks(f.value(1)) == std::vector<std::size_t>{0, 0});

  const auto s0 = *read_document(support::data("free_s0.yaml")).find_complex("s0s0");
  const auto g = induced_functor_from_complex(s0);
  CHECK(g.value(1).empty());
  CHECK(components(g.value(0)).count() == 4);
  CHECK(worst_of(validate_functoriality(g)) == Outcome::Verified);
}

TEST_CASE("corpus induced functors") {
  for (const auto& entry : std::filesystem::directory_iterator(EQFG_DATA_DIR)) {
    Document d;
    try {
      d = read_document(entry.path().string());
    } catch (const Error&) {
      continue;
    }
    for (const auto& [name, x] : d.complexes) {
      INFO(entry.path().filename().string() << " " << name);
      const auto f = induced_functor_from_complex(x);
      CHECK(worst_of(validate_functoriality(f)) != Outcome::Refuted);
      const auto& c = *f.category;
      for (const auto& m : c.morphisms()) {
        if (m.source != m.target) continue;
        // a self map of G/H composed with itself |G| times is the identity
        OrbitMorphism power = c.identity(m.source);
        for (int i = 0; i < x.group.order(); ++i) power = c.compose(m, power);
        CHECK(c.is_identity(power));
        auto arrow = identity_morphism(f.value(m.source));
        for (int i = 0; i < x.group.order(); ++i) arrow = compose_morphisms(f.arrow(m), arrow);
        CHECK(compare_morphisms(arrow, identity_morphism(f.value(m.source))).is_verified());
      }
    }
  }
}

TEST_CASE("identity transformation") {
  const auto x = torus_complex();
  const auto t = induced_transformation(x, x, identity_vertices(x), identity_edges(x));
  CHECK(worst_of(validate_naturality(t)) == Outcome::Verified);
  CHECK(worst_of(equivalence_of_functors(t)) == Outcome::Verified);
  for (const auto& [h, m] : t.components) CHECK(m == identity_morphism(t.source.value(h)));
}

TEST_CASE("the group action as a transformation") {
  const auto x = torus_complex();
  std::vector<SignedCell> edges;
  for (int e = 0; e < x.count(1); ++e) edges.push_back(x.act(1, 1, e));
  const auto t = induced_transformation(x, x, identity_vertices(x), edges);
  CHECK(worst_of(validate_naturality(t)) == Outcome::Verified);
  CHECK(worst_of(equivalence_of_functors(t)) == Outcome::Verified);
}

TEST_CASE("non-equivariant maps are rejected") {
  const auto x = torus_complex();
  auto edges = identity_edges(x);
  edges[0] = {1, 1};  // e1 -> e2 but e2 -> e2
  CHECK_THROWS_MATCHES(induced_transformation(x, x, identity_vertices(x), edges), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == "NotEquivariant"; }));
  auto broken = identity_edges(x);
  broken[2] = {3, 1};  // l1 -> l2 runs between the wrong vertices
  CHECK_THROWS_MATCHES(induced_transformation(x, x, identity_vertices(x), broken), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == "NotEquivariant"; }));
}

TEST_CASE("merging the arcs of a reflected circle") {
  const auto y = read_document(support::data("reflection_circle.yaml")).complexes.front().second;
  const auto x = complex_from(R"y(
group:
  degree: 2
  generators: ["(0 1)"]
complexes:
  arc:
    vertices: [u, w]
    edges:
      - [f, u, w]
)y",
                              "arc");
  const auto t = induced_transformation(y, x, {0, 1}, {{0, 1}, {0, 1}});
  CHECK(worst_of(validate_naturality(t)) == Outcome::Verified);
  const auto eq = equivalence_of_functors(t);
  CHECK(eq.size() == 2);
  for (const auto& c : eq) CHECK(c.verdict.is_refuted());
}

TEST_CASE("component counts decide equivalence") {
  const auto two = complex_from(two_points, "two");
  const auto one = complex_from(two_points, "one");
  const auto merge = induced_transformation(two, one, {0, 0}, {});
  CHECK(worst_of(equivalence_of_functors(merge)) == Outcome::Refuted);
  const auto include = induced_transformation(one, two, {1}, {});
  CHECK(worst_of(equivalence_of_functors(include)) == Outcome::Refuted);
  CHECK(worst_of(validate_naturality(include)) == Outcome::Verified);
  const auto swap = induced_transformation(two, two, {1, 0}, {});
  CHECK(worst_of(equivalence_of_functors(swap)) == Outcome::Verified);
}

TEST_CASE("compressing the honest torus functor") {
  const auto honest = induced_functor_from_complex(torus_complex());
  const auto compressed = build_functor(read_document(support::data("torus_z2.yaml")));
  REQUIRE(honest.value(1) == compressed.value(1));

  NaturalTransformation t{honest, compressed, {}};
  t.components.emplace(1, identity_morphism(honest.value(1)));
  const auto& big = honest.value(0);
  const auto& small = compressed.value(0);
  GroupoidMorphism c{big, small, {0, 0}, {}};
  for (const auto* w : {"1", "a", "b", "b"}) c.generator_map.push_back(parse_word(small, w, 0));
  validate_morphism(c);
  CHECK(check_respects_relations(c).is_verified());
  t.components.emplace(0, c);

  CHECK(worst_of(equivalence_of_functors(t)) == Outcome::Verified);
  const auto nat = validate_naturality(t);
  CHECK(find(nat, "naturality at H0 -> H1") == Outcome::Verified);
  CHECK(find(nat, "naturality at H0 -> H0 via 1") == Outcome::Refuted);
}
