#include "eqfg/orbit_category.hpp"

#include <algorithm>

#include "eqfg/error.hpp"

namespace eqfg {

OrbitCategory::OrbitCategory(SubgroupLattice lattice, SubgroupFamily family)
    : lattice_(std::move(lattice)), family_(std::move(family)) {
  for (int h : family_.members)
    for (int k : family_.members) {
      auto& homs = homs_[{h, k}];
      for (Element rep : lattice_.coset_representatives(k)) {
        // rep^-1 H rep ⊆ K
        if (lattice_.is_subgroup_of(lattice_.conjugate(rep, h), k)) homs.push_back({h, k, rep});
      }
    }
  for (const auto& [key, homs] : homs_)
    morphisms_.insert(morphisms_.end(), homs.begin(), homs.end());
  for (std::size_t i = 0; i < morphisms_.size(); ++i) index_[morphisms_[i]] = static_cast<int>(i);
}

void OrbitCategory::require_object(int h) const {
  if (!family_.contains(h))
    throw Error("ObjectNotInFamily", "subgroup " + std::to_string(h) + " is not in the family");
}

const std::vector<OrbitMorphism>& OrbitCategory::hom(int h, int k) const {
  require_object(h);
  require_object(k);
  return homs_.at({h, k});
}

int OrbitCategory::index_of(const OrbitMorphism& m) const {
  auto it = index_.find(m);
  if (it == index_.end())
    throw Error("UnknownMorphism", "no morphism " + std::to_string(m.source) + " -> " +
                                       std::to_string(m.target) + " with coset representative " +
                                       std::to_string(m.coset));
  return it->second;
}

bool OrbitCategory::contains(const OrbitMorphism& m) const { return index_.count(m) != 0; }

OrbitMorphism OrbitCategory::compose(const OrbitMorphism& beta, const OrbitMorphism& alpha) const {
  if (alpha.target != beta.source)
    throw Error("NotComposable", describe(beta) + " after " + describe(alpha));
  const Element ab = group().mul(alpha.coset, beta.coset);
  return {alpha.source, beta.target, lattice_.canonical(ab, beta.target)};
}

Element OrbitCategory::apply(const OrbitMorphism& alpha, Element g) const {
  return lattice_.canonical(group().mul(g, alpha.coset), alpha.target);
}

std::string OrbitCategory::describe(const OrbitMorphism& m) const {
  return "H" + std::to_string(m.source) + " -> H" + std::to_string(m.target) + " via " +
         group().label(m.coset) + "·H" + std::to_string(m.target);
}

std::vector<Check> OrbitCategory::check_laws() const {
  std::vector<Check> checks;
  Verdict unit = Verdict::verified();
  for (const auto& m : morphisms_) {
    if (compose(identity(m.target), m) != m || compose(m, identity(m.source)) != m) {
      unit = Verdict::refuted("identity law fails for " + describe(m));
      break;
    }
  }
  checks.push_back({"identity law", unit});

  Verdict closed = Verdict::verified();
  Verdict assoc = Verdict::verified();
  for (const auto& a : morphisms_)
    for (const auto& b : morphisms_) {
      if (b.source != a.target) continue;
      const auto ba = compose(b, a);
      if (closed.is_verified() && !contains(ba))
        closed = Verdict::refuted(describe(b) + " ∘ " + describe(a) + " is not a morphism");
      for (const auto& c : morphisms_) {
        if (c.source != b.target) continue;
        if (compose(c, ba) != compose(compose(c, b), a) && assoc.is_verified())
          assoc = Verdict::refuted("(" + describe(c) + " ∘ " + describe(b) + ") ∘ " + describe(a));
      }
    }
  checks.push_back({"composition closed", closed});
  checks.push_back({"associativity", assoc});
  return checks;
}

std::shared_ptr<const OrbitCategory> build_category(const FiniteGroup& g, const SubgroupFamily& family) {
  SubgroupLattice lattice(g);
  return std::make_shared<const OrbitCategory>(std::move(lattice), family);
}

std::vector<OrbitMorphism> hom_set(const OrbitCategory& c, int h, int k) { return c.hom(h, k); }

}  // namespace eqfg
