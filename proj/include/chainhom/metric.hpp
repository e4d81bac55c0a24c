#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chainhom/error.hpp"

namespace chainhom {

using PointIndex = std::size_t;

struct WeightedEdge {
  PointIndex u;
  PointIndex v;
  double weight;
};

/// Immutable finite metric space with a validated distance matrix.
///
/// Construction checks symmetry, zero diagonal, positivity off the diagonal
/// and the triangle inequality (relative tolerance 1e-9). Spaces built from a
/// weighted graph carry the geodesic flag.
class FiniteMetricSpace {
 public:
  static constexpr double kTriangleTolerance = 1e-9;

  /// `geodesic` restores the flag of a serialized graph-metric space.
  static FiniteMetricSpace from_matrix(const std::vector<std::vector<double>>& dist,
                                       std::vector<std::string> labels = {}, bool geodesic = false);
  static FiniteMetricSpace from_graph(std::size_t n, const std::vector<WeightedEdge>& edges,
                                      std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  double operator()(PointIndex i, PointIndex j) const noexcept { return dist_[i * n_ + j]; }
  double distance(PointIndex i, PointIndex j) const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool geodesic() const noexcept { return geodesic_; }

  double diameter() const;
  /// Sorted distinct positive pairwise distances.
  std::vector<double> distinct_distances() const;
  std::vector<std::vector<double>> matrix() const;

 private:
  FiniteMetricSpace() = default;
  static void validate(std::size_t n, const std::vector<double>& d);

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
  bool geodesic_ = false;
};

/// Adjacency of the scale graph: {i,j} is an edge iff d(i,j) < scale.
struct ScaleGraph {
  double scale = 0;
  std::vector<std::vector<PointIndex>> neighbors;  // ascending, no self loops

  std::size_t edge_count() const;
  bool adjacent(PointIndex i, PointIndex j) const;
};

ScaleGraph scale_graph(const FiniteMetricSpace& space, double scale);

/// Chain components at one scale. Component ids are the minimum member index.
struct Partition {
  std::vector<PointIndex> component;
  std::size_t count = 0;

  bool same(PointIndex i, PointIndex j) const { return component[i] == component[j]; }
  std::vector<PointIndex> members(PointIndex id) const;
};

Partition chain_components(const FiniteMetricSpace& space, double scale);

/// Largest edge of a minimum spanning tree of the complete distance graph.
double connectivity_threshold(const FiniteMetricSpace& space);

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t sets() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

/// Canonicalizes a union-find into a Partition keyed by minimum member.
Partition to_partition(DisjointSets& sets, std::size_t n);

}  // namespace chainhom
