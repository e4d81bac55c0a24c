#pragma once

#include <array>
#include <vector>

#include "chainhom/metric.hpp"

namespace chainhom {

/// 2-skeleton of the Vietoris-Rips complex at a strict threshold.
struct RipsComplex2 {
  double scale = 0;
  std::size_t vertex_count = 0;
  std::vector<std::array<PointIndex, 2>> edges;      // i < j, lexicographic
  std::vector<std::array<PointIndex, 3>> triangles;  // i < j < k, lexicographic
};

RipsComplex2 rips2(const FiniteMetricSpace& space, double scale);

/// Triangles of the scale graph restricted to vertices for which `keep` is true.
std::vector<std::array<PointIndex, 3>> graph_triangles(const ScaleGraph& graph,
                                                       const std::vector<bool>& keep);

}  // namespace chainhom
