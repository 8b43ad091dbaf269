#include "eqfg/linalg.hpp"

#include <sstream>

namespace eqfg {

std::string to_string(const AbelianGroup& g) {
  if (g.trivial()) return "0";
  std::vector<std::string> parts;
  if (g.rank == 1) parts.push_back("Z");
  if (g.rank > 1) parts.push_back("Z^" + std::to_string(g.rank));
  for (const auto& t : g.torsion) parts.push_back("Z/" + t.str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " ⊕ ";
    out += parts[i];
  }
  return out;
}

AbelianGroup abelian_group_from_relations(const IntMatrix& relations, Eigen::Index generators) {
  AbelianGroup g;
  if (relations.rows() == 0 || generators == 0) {
    g.rank = static_cast<std::size_t>(generators);
    return g;
  }
  if (relations.cols() != generators)
    throw Error("DimensionMismatch", "relation matrix has " + std::to_string(relations.cols()) +
                                         " columns, expected " + std::to_string(generators));
  const auto snf = smith_normal_form(relations);
  g.rank = static_cast<std::size_t>(generators - snf.rank());
  for (const auto& d : snf.diagonal)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

std::vector<AbelianGroup> homology(std::span<const IntMatrix> boundaries) {
  if (boundaries.empty()) throw Error("NotAChainComplex", "no boundary maps given");
  const std::size_t n = boundaries.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const auto& lower = boundaries[k];
    const auto& upper = boundaries[k + 1];
    if (lower.cols() != upper.rows())
      throw Error("NotAChainComplex", "boundary " + std::to_string(k + 1) + " has " +
                                          std::to_string(lower.cols()) + " columns but boundary " +
                                          std::to_string(k + 2) + " has " +
                                          std::to_string(upper.rows()) + " rows");
    if (lower.cols() == 0) continue;
    const IntMatrix composite = lower * upper;
    for (Eigen::Index i = 0; i < composite.rows(); ++i)
      for (Eigen::Index j = 0; j < composite.cols(); ++j)
        if (composite(i, j) != 0) {
          std::ostringstream os;
          os << "d" << k + 1 << " o d" << k + 2 << " has entry " << composite(i, j).str()
             << " at (" << i << ", " << j << ")";
          throw Error("NotAChainComplex", os.str());
        }
  }

  std::vector<SmithForm<Integer>> forms;
  forms.reserve(n);
  for (const auto& b : boundaries) forms.push_back(smith_normal_form(b));

  std::vector<AbelianGroup> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const Eigen::Index cells = k == 0 ? boundaries[0].rows() : boundaries[k - 1].cols();
    const Eigen::Index rank_out = k == 0 ? 0 : forms[k - 1].rank();
    const Eigen::Index rank_in = k < n ? forms[k].rank() : 0;
    out[k].rank = static_cast<std::size_t>(cells - rank_out - rank_in);
    if (k < n)
      for (const auto& d : forms[k].diagonal)
        if (d > 1) out[k].torsion.push_back(d);
  }
  return out;
}

std::vector<AbelianGroup> cohomology_ranks(std::span<const AbelianGroup> h) {
  std::vector<AbelianGroup> out(h.size());
  for (std::size_t n = 0; n < h.size(); ++n) {
    out[n].rank = h[n].rank;
    if (n > 0) out[n].torsion = h[n - 1].torsion;
  }
  return out;
}

IntMatrix top_cycle_basis(const IntMatrix& top_boundary) {
  return kernel_basis(smith_normal_form(top_boundary));
}

}  // namespace eqfg
