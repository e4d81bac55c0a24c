#include "chainhom/rips.hpp"

#include <algorithm>

namespace chainhom {

std::vector<std::array<PointIndex, 3>> graph_triangles(const ScaleGraph& graph,
                                                       const std::vector<bool>& keep) {
  std::vector<std::array<PointIndex, 3>> out;
  const std::size_t n = graph.neighbors.size();
  for (PointIndex i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    const auto& ni = graph.neighbors[i];
    for (auto j : ni) {
      if (j <= i || !keep[j]) continue;
      const auto& nj = graph.neighbors[j];
      // common neighbours above j, both lists ascending
      auto a = std::upper_bound(ni.begin(), ni.end(), j);
      auto b = std::upper_bound(nj.begin(), nj.end(), j);
      while (a != ni.end() && b != nj.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          if (keep[*a]) out.push_back({i, j, *a});
          ++a;
          ++b;
        }
      }
    }
  }
  return out;
}

RipsComplex2 rips2(const FiniteMetricSpace& space, double scale) {
  const auto graph = scale_graph(space, scale);
  RipsComplex2 complex;
  complex.scale = scale;
  complex.vertex_count = space.size();
  for (PointIndex i = 0; i < space.size(); ++i) {
    for (auto j : graph.neighbors[i]) {
      if (j > i) complex.edges.push_back({i, j});
    }
  }
  complex.triangles = graph_triangles(graph, std::vector<bool>(space.size(), true));
  return complex;
}

}  // namespace chainhom
