#include <catch_amalgamated.hpp>

#include <set>

#include "eqfg/error.hpp"
#include "eqfg/orbit_category.hpp"

using namespace eqfg;

namespace {

FiniteGroup cyclic(int n) {
  FiniteGroup::Table t(static_cast<std::size_t>(n), std::vector<Element>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return FiniteGroup::from_table(t);
}

FiniteGroup s3() { return FiniteGroup::from_permutations({parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)}, 3); }

std::shared_ptr<const OrbitCategory> all(const FiniteGroup& g) {
  return build_category(g, family_all(SubgroupLattice(g)));
}

// Cosets gK with g^-1 H g ⊆ K, straight from the definition.
std::set<std::vector<Element>> brute_hom(const SubgroupLattice& l, int h, int k) {
  const auto& g = l.group();
  std::set<std::vector<Element>> out;
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element y : l[h].elements) ok = ok && l[k].contains(g.conjugate(x, y));
    if (ok) out.insert(l.coset(x, k).elements);
  }
  return out;
}

}  // namespace

TEST_CASE("hom sets of Orb(Z2)") {
  const auto c = all(cyclic(2));
  CHECK(c->hom(0, 0).size() == 2);
  CHECK(c->hom(1, 0).empty());
  CHECK(c->hom(0, 1).size() == 1);
  CHECK(c->hom(1, 1).size() == 1);
  CHECK(c->morphisms().size() == 4);
  CHECK(hom_set(*c, 0, 0) == c->hom(0, 0));
}

TEST_CASE("composition in orbit categories") {
  const auto z4 = all(cyclic(4));
  // subgroups of Z4: {0}, {0, 2}, Z4
  const OrbitMorphism up{0, 1, z4->lattice().canonical(1, 1)};
  const OrbitMorphism collapse{1, 2, 0};
  REQUIRE(z4->contains(up));
  REQUIRE(z4->contains(collapse));
  const auto composite = z4->compose(collapse, up);
  CHECK(composite == z4->hom(0, 2).front());
  CHECK(z4->hom(0, 2).size() == 1);
  for (const auto& m : z4->morphisms()) {
    CHECK(z4->compose(z4->identity(m.target), m) == m);
    CHECK(z4->compose(m, z4->identity(m.source)) == m);
  }

  const auto z2 = all(cyclic(2));
  const OrbitMorphism tau{0, 0, 1};
  CHECK(z2->compose(tau, tau) == z2->identity(0));

  try {
    z2->compose(tau, OrbitMorphism{0, 1, 0});
    FAIL("expected NotComposable");
  } catch (const Error& e) {
    CHECK(e.code() == "NotComposable");
  }
}

TEST_CASE("category sizes") {
  const auto z2 = all(cyclic(2));
  CHECK(z2->objects().size() == 2);
  const auto trivial = all(cyclic(1));
  CHECK(trivial->objects().size() == 1);
  CHECK(trivial->morphisms().size() == 1);
  const auto s = all(s3());
  CHECK(s->objects().size() == 6);
}

TEST_CASE("laws and hom counts") {
  const std::vector<FiniteGroup> groups = {
      cyclic(2), cyclic(4), s3(), cyclic(6),
      FiniteGroup::from_permutations({parse_cycles("(0 1 2 3)", 4), parse_cycles("(0 2)", 4)}, 4),
      FiniteGroup::from_permutations({parse_cycles("(0 1 2)", 4), parse_cycles("(0 1)(2 3)", 4)}, 4)};
  for (const auto& g : groups) {
    const auto c = all(g);
    const auto& l = c->lattice();
    for (const auto& check : c->check_laws()) {
      INFO(check.subject << ": " << to_string(check.verdict));
      CHECK(check.verdict.is_verified());
    }
    for (int k : c->objects()) CHECK(static_cast<int>(c->hom(0, k).size()) * l[k].order() == g.order());
    for (int h : c->objects())
      for (int k : c->objects()) {
        const auto brute = brute_hom(l, h, k);
        std::set<std::vector<Element>> found;
        for (const auto& m : c->hom(h, k)) found.insert(l.coset(m.coset, k).elements);
        CHECK(found == brute);
        if (!found.empty()) {
          bool conj = false;
          for (Element x = 0; x < g.order(); ++x) conj = conj || l.is_subgroup_of(l.conjugate(x, h), k);
          CHECK(conj);
        }
      }
    // Exhaustive associativity, independently of check_laws.
    for (const auto& a : c->morphisms())
      for (const auto& b : c->morphisms()) {
        if (b.source != a.target) continue;
        for (const auto& d : c->morphisms())
          if (d.source == b.target) CHECK(c->compose(d, c->compose(b, a)) == c->compose(c->compose(d, b), a));
      }
  }
}

TEST_CASE("maps act as xH to xaK") {
  const auto c = all(s3());
  for (const auto& m : c->morphisms())
    for (Element x = 0; x < c->group().order(); ++x) {
      const auto& g = c->group();
      CHECK(c->apply(m, x) == c->lattice().canonical(g.mul(x, m.coset), m.target));
      // well defined on cosets
      for (Element h : c->lattice()[m.source].elements) CHECK(c->apply(m, g.mul(x, h)) == c->apply(m, x));
    }
}

TEST_CASE("objects outside the family") {
  const auto g = cyclic(2);
  const auto c = build_category(g, family_trivial(SubgroupLattice(g)));
  CHECK(c->morphisms().size() == 2);
  try {
    c->hom(0, 1);
    FAIL("expected ObjectNotInFamily");
  } catch (const Error& e) {
    CHECK(e.code() == "ObjectNotInFamily");
  }
}
