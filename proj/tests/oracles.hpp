// Independent reference implementations used by the tests.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "chainhom/chains.hpp"
#include "chainhom/metric.hpp"
#include "chainhom/presentation.hpp"

namespace test {

using chainhom::Chain;
using chainhom::FiniteMetricSpace;
using chainhom::PointIndex;

inline FiniteMetricSpace cycle_graph(std::size_t n, double w = 1) {
  std::vector<chainhom::WeightedEdge> edges;
  for (PointIndex i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
  return FiniteMetricSpace::from_graph(n, edges);
}

inline FiniteMetricSpace unit_square() {
  const double d = std::sqrt(2.0);
  return FiniteMetricSpace::from_matrix({{0, 1, d, 1}, {1, 0, 1, d}, {d, 1, 0, 1}, {1, d, 1, 0}});
}

/// Barycentric subdivision of the 6-vertex real projective plane with the
/// unit graph metric. Its Rips complex at scale 1.5 is the subdivision itself
/// (a flag complex), so π = Z/2 there.
inline FiniteMetricSpace rp2_subdivision() {
  const std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                              {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
  std::vector<std::vector<int>> simplices;
  for (int v = 0; v < 6; ++v) simplices.push_back({v});
  std::set<std::vector<int>> edges;
  for (const auto& f : faces)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) edges.insert({std::min(f[i], f[j]), std::max(f[i], f[j])});
  for (const auto& e : edges) simplices.push_back(e);
  for (auto f : faces) {
    std::sort(f.begin(), f.end());
    simplices.push_back({f[0], f[1], f[2]});
  }
  auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  std::vector<chainhom::WeightedEdge> graph;
  for (PointIndex i = 0; i < simplices.size(); ++i)
    for (PointIndex j = i + 1; j < simplices.size(); ++j)
      if (simplices[i].size() != simplices[j].size() &&
          (contains(simplices[i], simplices[j]) || contains(simplices[j], simplices[i])))
        graph.push_back({i, j, 1.0});
  return FiniteMetricSpace::from_graph(simplices.size(), graph);
}

inline std::vector<std::vector<double>> floyd_warshall(std::size_t n,
                                                       const std::vector<chainhom::WeightedEdge>& edges) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Planar points on a coarse integer grid (so distances repeat).
inline FiniteMetricSpace random_planar(std::mt19937_64& rng, std::size_t n, int grid = 6) {
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> pts;
  while (pts.size() < n) {
    std::pair<int, int> p{static_cast<int>(rng() % grid), static_cast<int>(rng() % grid)};
    if (used.insert(p).second) pts.push_back(p);
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
  return FiniteMetricSpace::from_matrix(d);
}

inline std::vector<std::size_t> bfs_components(const FiniteMetricSpace& space, double eps) {
  const std::size_t n = space.size();
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  for (PointIndex s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    std::deque<PointIndex> q{s};
    label[s] = next;
    while (!q.empty()) {
      auto u = q.front();
      q.pop_front();
      for (PointIndex v = 0; v < n; ++v) {
        if (label[v] == n && space(u, v) < eps) {
          label[v] = next;
          q.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

/// Rank of an integer matrix over Q, by fraction-free Gaussian elimination in long double.
inline std::size_t rational_rank(std::vector<std::vector<long double>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < m.size(); ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (std::fabs(m[piv][c]) < 1e-9) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank) continue;
      const long double f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// First Betti number of the Rips 2-complex component containing `base`,
/// from the simplicial boundary ranks: b1 = (E - rank ∂1) - rank ∂2.
inline std::size_t rips_betti1(const FiniteMetricSpace& space, double eps, PointIndex base) {
  auto comp = bfs_components(space, eps);
  std::vector<PointIndex> pts;
  for (PointIndex i = 0; i < space.size(); ++i)
    if (comp[i] == comp[base]) pts.push_back(i);
  std::vector<std::pair<PointIndex, PointIndex>> edges;
  std::map<std::pair<PointIndex, PointIndex>, std::size_t> edge_id;
  for (auto i : pts)
    for (auto j : pts)
      if (i < j && space(i, j) < eps) {
        edge_id[{i, j}] = edges.size();
        edges.push_back({i, j});
      }
  std::vector<std::vector<long double>> d2;
  for (auto i : pts)
    for (auto j : pts)
      for (auto k : pts)
        if (i < j && j < k && space(i, j) < eps && space(j, k) < eps && space(i, k) < eps) {
          std::vector<long double> row(edges.size(), 0);
          row[edge_id[{j, k}]] += 1;
          row[edge_id[{i, k}]] -= 1;
          row[edge_id[{i, j}]] += 1;
          d2.push_back(row);
        }
  const std::size_t rank_d1 = pts.size() - 1;  // connected component
  return edges.size() - rank_d1 - rational_rank(d2);
}

/// Random ε-loop at `base` with at most `max_len` points, by random walk
/// on the ε-graph that must return to the start (retrying until it does).
inline Chain random_loop(std::mt19937_64& rng, const FiniteMetricSpace& space, double eps, PointIndex base,
                         std::size_t max_len) {
  std::vector<std::vector<PointIndex>> nb(space.size());
  for (PointIndex i = 0; i < space.size(); ++i)
    for (PointIndex j = 0; j < space.size(); ++j)
      if (space(i, j) < eps) nb[i].push_back(j);  // includes i itself
  for (;;) {
    const std::size_t len = 1 + rng() % max_len;
    Chain c{eps, {base}};
    while (c.points.size() + 1 < len) c.points.push_back(nb[c.back()][rng() % nb[c.back()].size()]);
    if (len == 1) return c;
    if (space(c.back(), base) < eps) {
      c.points.push_back(base);
      return c;
    }
  }
}

/// Random ε-chain from `start` with `len` points.
inline Chain random_chain(std::mt19937_64& rng, const FiniteMetricSpace& space, double eps, PointIndex start,
                          std::size_t len) {
  Chain c{eps, {start}};
  while (c.points.size() < len) {
    std::vector<PointIndex> nb;
    for (PointIndex j = 0; j < space.size(); ++j)
      if (space(c.back(), j) < eps) nb.push_back(j);
    c.points.push_back(nb[rng() % nb.size()]);
  }
  return c;
}

}  // namespace test
