#pragma once

// Exact integer linear algebra: Smith normal form with unimodular
// certificates, finitely generated abelian groups, and homology of short
// chain complexes. Dense Eigen matrices over an arbitrary-precision integer
// scalar; the algorithms are templated on the scalar so small fixed-width
// instantiations can be used in tests.

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdlib>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eqfg/error.hpp"

namespace eqfg {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> D;
  Matrix<Scalar> U;  // rows x rows, unimodular
  Matrix<Scalar> V;  // cols x cols, unimodular
  // min(rows, cols) nonnegative invariant factors, d_i | d_{i+1}; zeros last.
  std::vector<Scalar> diagonal;

  Eigen::Index rank() const {
    Eigen::Index r = 0;
    for (const auto& d : diagonal)
      if (d != 0) ++r;
    return r;
  }
};

namespace detail {

template <typename Scalar>
Scalar magnitude(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

}  // namespace detail

// U * A * V == D with D diagonal. Pivots are chosen by minimal magnitude in
// the trailing block to keep intermediate entries small.
template <typename Derived>
SmithForm<typename Derived::Scalar> smith_normal_form(
    const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  using detail::magnitude;
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();

  SmithForm<Scalar> out;
  out.D = A;
  out.U = Matrix<Scalar>::Identity(m, m);
  out.V = Matrix<Scalar>::Identity(n, n);
  auto& D = out.D;
  auto& U = out.U;
  auto& V = out.V;

  const Eigen::Index steps = std::min(m, n);
  for (Eigen::Index t = 0; t < steps; ++t) {
    for (;;) {
      Eigen::Index pi = -1, pj = -1;
      Scalar best = 0;
      for (Eigen::Index j = t; j < n; ++j)
        for (Eigen::Index i = t; i < m; ++i)
          if (D(i, j) != 0 && (pi < 0 || magnitude(D(i, j)) < best)) {
            best = magnitude(D(i, j));
            pi = i;
            pj = j;
          }
      if (pi < 0) break;  // trailing block is zero

      if (pi != t) {
        D.row(t).swap(D.row(pi));
        U.row(t).swap(U.row(pi));
      }
      if (pj != t) {
        D.col(t).swap(D.col(pj));
        V.col(t).swap(V.col(pj));
      }

      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const Scalar q = D(i, t) / D(t, t);
        if (q != 0) {
          D.row(i) -= q * D.row(t);
          U.row(i) -= q * U.row(t);
        }
        if (D(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const Scalar q = D(t, j) / D(t, t);
        if (q != 0) {
          D.col(j) -= q * D.col(t);
          V.col(j) -= q * V.col(t);
        }
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold a row holding a non-multiple into the pivot row.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      D.row(t) += D.row(bad);
      U.row(t) += U.row(bad);
    }
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      U.row(t) = -U.row(t);
    }
  }

  out.diagonal.reserve(static_cast<std::size_t>(steps));
  for (Eigen::Index t = 0; t < steps; ++t) out.diagonal.push_back(D(t, t));
  return out;
}

// Columns of V spanning the integer kernel of A (a lattice basis).
template <typename Scalar>
Matrix<Scalar> kernel_basis(const SmithForm<Scalar>& s) {
  const Eigen::Index r = s.rank();
  return s.V.rightCols(s.V.cols() - r);
}

// Whether v lies in the lattice spanned by the columns of A.
template <typename Scalar>
bool in_column_lattice(const SmithForm<Scalar>& s, const Vector<Scalar>& v) {
  const Vector<Scalar> w = s.U * v;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const bool on_diagonal = i < static_cast<Eigen::Index>(s.diagonal.size());
    const Scalar d = on_diagonal ? s.diagonal[static_cast<std::size_t>(i)] : Scalar(0);
    if (d == 0) {
      if (w(i) != 0) return false;
    } else if (w(i) % d != 0) {
      return false;
    }
  }
  return true;
}

// Determinant by fraction-free elimination (Bareiss); exact for integers.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> M) {
  const Eigen::Index n = M.rows();
  if (n != M.cols()) throw Error("DimensionMismatch", "determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (M(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return Scalar(0);
      M.row(k).swap(M.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

// Finitely generated abelian group Z^rank + Z/t_1 + ... with t_i | t_{i+1}.
struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroup&) const = default;
};

// "0", "Z", "Z^3", "Z/2", "Z^2 ⊕ Z/2 ⊕ Z/4"
std::string to_string(const AbelianGroup& g);

// Z^generators modulo the row lattice of `relations` (relators x generators).
AbelianGroup abelian_group_from_relations(const IntMatrix& relations, Eigen::Index generators);

// boundaries[k] is the boundary map from k+1-chains to k-chains. Returns
// H_0 .. H_n with n = boundaries.size(). Throws NotAChainComplex when a
// composite of consecutive boundaries is nonzero.
std::vector<AbelianGroup> homology(std::span<const IntMatrix> boundaries);

// Universal coefficients: H^n has the free rank of H_n and the torsion of
// H_{n-1}.
std::vector<AbelianGroup> cohomology_ranks(std::span<const AbelianGroup> homology);

// Z-linear combinations spanning the free part of the top homology group,
// i.e. a basis of ker(boundaries.back()) when nothing lies above it.
IntMatrix top_cycle_basis(const IntMatrix& top_boundary);

}  // namespace eqfg
