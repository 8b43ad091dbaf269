#pragma once

// Independent oracles and generators shared by the test binaries. Nothing
// here calls the library's linear algebra.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "eqfg/complex.hpp"
#include "eqfg/groupoid.hpp"

namespace support {

using Mat = std::vector<std::vector<long long>>;
using Wide = __int128;

inline std::string data(const std::string& name) { return std::string(EQFG_DATA_DIR) + "/" + name; }

inline Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, std::vector<long long>(cols, 0)); }

// Rank over Q by Bareiss elimination in 128-bit integers.
inline int rank_q(const Mat& a) {
  if (a.empty()) return 0;
  std::vector<std::vector<Wide>> m;
  for (const auto& row : a) m.emplace_back(row.begin(), row.end());
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  Wide prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

inline int rank_mod(const Mat& a, long long p) {
  if (a.empty()) return 0;
  Mat m = a;
  for (auto& row : m)
    for (auto& x : row) x = ((x % p) + p) % p;
  const std::size_t rows = m.size(), cols = m[0].size();
  auto power = [p](long long b, long long e) {
    long long out = 1;
    for (b %= p; e; e >>= 1, b = b * b % p)
      if (e & 1) out = out * b % p;
    return out;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t q = r;
    while (q < rows && m[q][c] == 0) ++q;
    if (q == rows) continue;
    std::swap(m[q], m[r]);
    const long long inv = power(m[r][c], p - 2);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const long long f = m[i][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
    }
    ++r;
  }
  return static_cast<int>(r);
}

// Cofactor expansion; only used on tiny matrices.
inline long long det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Mat sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(row);
    }
    out += (j % 2 ? -1 : 1) * m[0][j] * det(sub);
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> s(k);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      out.push_back(s);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      s[depth] = i;
      go(i + 1, depth + 1);
    }
  };
  go(0, 0);
  return out;
}

// gcd of all k x k minors.
inline long long minor_gcd(const Mat& a, std::size_t k) {
  long long g = 0;
  for (const auto& rs : subsets(a.size(), k))
    for (const auto& cs : subsets(a[0].size(), k)) {
      Mat sub;
      for (auto r : rs) {
        std::vector<long long> row;
        for (auto c : cs) row.push_back(a[r][c]);
        sub.push_back(row);
      }
      g = std::gcd(g, std::abs(det(sub)));
    }
  return g;
}

// Boundary matrices read directly off the cell data: rows are k-cells,
// columns (k+1)-cells.
inline std::array<Mat, 3> boundaries(const eqfg::GCellComplex& x) {
  const auto n = [&](int d) { return static_cast<std::size_t>(x.count(d)); };
  std::array<Mat, 3> b = {zeros(n(0), n(1)), zeros(n(1), n(2)), zeros(n(2), n(3))};
  for (std::size_t e = 0; e < n(1); ++e) {
    b[0][static_cast<std::size_t>(x.edge_ends[e].second)][e] += 1;
    b[0][static_cast<std::size_t>(x.edge_ends[e].first)][e] -= 1;
  }
  for (std::size_t f = 0; f < n(2); ++f)
    for (const auto& l : x.face_words[f].letters) b[1][static_cast<std::size_t>(l.generator)][f] += l.exponent;
  for (std::size_t s = 0; s < n(3); ++s)
    for (const auto& [cell, k] : x.solid_boundaries[s]) b[2][static_cast<std::size_t>(cell)][s] += k;
  return b;
}

struct Betti {
  std::array<int, 4> q{};
  std::array<int, 4> mod2{};
  std::array<int, 4> mod3{};
};

inline Betti betti(const eqfg::GCellComplex& x) {
  const auto b = boundaries(x);
  Betti out;
  auto fill = [&](std::array<int, 4>& dims, auto rank) {
    std::array<int, 4> r{};  // r[k] = rank of the map out of k-chains
    for (int k = 1; k < 4; ++k) r[static_cast<std::size_t>(k)] = rank(b[static_cast<std::size_t>(k - 1)]);
    for (int k = 0; k < 4; ++k) {
      const int above = k < 3 ? r[static_cast<std::size_t>(k + 1)] : 0;
      dims[static_cast<std::size_t>(k)] = x.count(k) - r[static_cast<std::size_t>(k)] - above;
    }
  };
  fill(out.q, [](const Mat& m) { return m.empty() || m[0].empty() ? 0 : rank_q(m); });
  fill(out.mod2, [](const Mat& m) { return m.empty() || m[0].empty() ? 0 : rank_mod(m, 2); });
  fill(out.mod3, [](const Mat& m) { return m.empty() || m[0].empty() ? 0 : rank_mod(m, 3); });
  return out;
}

// Number of invariant factors of `g` divisible by p.
inline int torsion_count(const eqfg::AbelianGroup& g, int p) {
  int c = 0;
  for (const auto& t : g.torsion)
    if (t % p == 0) ++c;
  return c;
}

// Closed walk from `start`: a random walk, then the shortest undirected path
// back.
inline eqfg::Word random_loop(const eqfg::PresentedGroupoid& p, int start, std::mt19937& rng) {
  eqfg::Word w{start, {}};
  int at = start;
  std::uniform_int_distribution<int> len(1, 5);
  const int steps = len(rng);
  for (int s = 0; s < steps; ++s) {
    std::vector<eqfg::Letter> options;
    for (int g = 0; g < p.generator_count(); ++g) {
      const auto& gen = p.generators[static_cast<std::size_t>(g)];
      if (gen.source == at) options.push_back({g, 1});
      if (gen.target == at) options.push_back({g, -1});
    }
    if (options.empty()) break;
    const auto l = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    w.letters.push_back(l);
    at = l.exponent > 0 ? p.generators[static_cast<std::size_t>(l.generator)].target
                        : p.generators[static_cast<std::size_t>(l.generator)].source;
  }
  std::vector<int> seen(static_cast<std::size_t>(p.object_count()), 0);
  std::vector<eqfg::Letter> via(static_cast<std::size_t>(p.object_count()));
  std::queue<int> q;
  q.push(at);
  seen[static_cast<std::size_t>(at)] = 1;
  while (!q.empty()) {
    const int o = q.front();
    q.pop();
    for (int g = 0; g < p.generator_count(); ++g) {
      const auto& gen = p.generators[static_cast<std::size_t>(g)];
      for (const auto& [from, to, e] : {std::tuple{gen.source, gen.target, 1}, std::tuple{gen.target, gen.source, -1}})
        if (from == o && !seen[static_cast<std::size_t>(to)]) {
          seen[static_cast<std::size_t>(to)] = 1;
          via[static_cast<std::size_t>(to)] = {g, e};
          q.push(to);
        }
    }
  }
  std::vector<eqfg::Letter> back;
  for (int o = start; o != at;) {
    const auto l = via[static_cast<std::size_t>(o)];
    back.push_back(l);
    const auto& gen = p.generators[static_cast<std::size_t>(l.generator)];
    o = l.exponent > 0 ? gen.source : gen.target;
  }
  std::reverse(back.begin(), back.end());
  w.letters.insert(w.letters.end(), back.begin(), back.end());
  return w;
}

// 1-3 objects, 0-4 generators with random ends, 0-2 closed relators.
inline eqfg::PresentedGroupoid random_groupoid(std::mt19937& rng) {
  eqfg::PresentedGroupoid p;
  const int objects = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int o = 0; o < objects; ++o) p.objects.push_back("o" + std::to_string(o));
  const int gens = std::uniform_int_distribution<int>(0, 4)(rng);
  std::uniform_int_distribution<int> pick(0, objects - 1);
  for (int g = 0; g < gens; ++g) p.generators.push_back({"g" + std::to_string(g), pick(rng), pick(rng)});
  const int rels = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int r = 0; r < rels; ++r) {
    auto w = random_loop(p, pick(rng), rng);
    if (!w.empty()) p.relators.push_back(w);
  }
  return p;
}

}  // namespace support
