#include "chainhom/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace chainhom {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::IllegalMove: return "IllegalMove";
    case ErrorKind::JunctionMismatch: return "JunctionMismatch";
    case ErrorKind::ScaleMismatch: return "ScaleMismatch";
    case ErrorKind::NotALoop: return "NotALoop";
    case ErrorKind::WrongComponent: return "WrongComponent";
    case ErrorKind::ScaleOrderViolation: return "ScaleOrderViolation";
    case ErrorKind::OutsideTruncation: return "OutsideTruncation";
    case ErrorKind::StartMismatch: return "StartMismatch";
    case ErrorKind::InconsistentThread: return "InconsistentThread";
    case ErrorKind::NotAHomotopy: return "NotAHomotopy";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ArithmeticOverflow: return "ArithmeticOverflow";
  }
  return "Unknown";
}

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

void FiniteMetricSpace::validate(std::size_t n, const std::vector<double>& d) {
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i * n + i] != 0.0) {
      throw Error(ErrorKind::InvalidInput, "nonzero diagonal at " + pair_text(i, i), {i, i});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = d[i * n + j];
      const double b = d[j * n + i];
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorKind::InvalidInput, "non-finite distance at " + pair_text(i, j), {i, j});
      }
      if (a != b) {
        throw Error(ErrorKind::AsymmetricMatrix, "asymmetric entry at " + pair_text(i, j), {i, j});
      }
      if (a <= 0.0) {
        throw Error(ErrorKind::NegativeDistance,
                    "distance between distinct points must be positive at " + pair_text(i, j),
                    {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double direct = d[i * n + k];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = d[i * n + j] + d[j * n + k];
        if (direct > via + kTriangleTolerance * std::max(1.0, via)) {
          std::ostringstream os;
          os << "d(" << i << "," << k << ")=" << direct << " exceeds d(" << i << "," << j
             << ")+d(" << j << "," << k << ")=" << via;
          throw Error(ErrorKind::TriangleViolation, os.str(), {i, j, k});
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(const std::vector<std::vector<double>>& dist,
                                                 std::vector<std::string> labels, bool geodesic) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "empty distance matrix");
  for (const auto& row : dist) {
    if (row.size() != n) throw Error(ErrorKind::NonSquareMatrix, "distance matrix is not square");
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorKind::InvalidInput, "label count does not match point count");
  }
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(dist[i].begin(), dist[i].end(), flat.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  validate(n, flat);
  FiniteMetricSpace space;
  space.n_ = n;
  space.dist_ = std::move(flat);
  space.labels_ = std::move(labels);
  space.geodesic_ = geodesic;
  return space;
}

FiniteMetricSpace FiniteMetricSpace::from_graph(std::size_t n,
                                                const std::vector<WeightedEdge>& edges,
                                                std::vector<std::string> labels) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "graph has no vertices");
  std::vector<std::vector<std::pair<PointIndex, double>>> adj(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "edge endpoint out of range", {e.u, e.v});
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::NegativeDistance, "edge weights must be positive", {e.u, e.v});
    }
    if (e.u == e.v) continue;
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> flat(n * n, inf);
  using Item = std::pair<double, PointIndex>;
  for (PointIndex s = 0; s < n; ++s) {
    double* row = flat.data() + s * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    row[s] = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      auto [du, u] = queue.top();
      queue.pop();
      if (du > row[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (du + w < row[v]) {
          row[v] = du + w;
          queue.emplace(row[v], v);
        }
      }
    }
    for (PointIndex v = 0; v < n; ++v) {
      if (row[v] == inf) {
        throw Error(ErrorKind::DisconnectedGraph, "no path between " + pair_text(s, v), {s, v});
      }
    }
  }
  // Dijkstra sums in different orders can differ in the last ulp.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = std::min(flat[i * n + j], flat[j * n + i]);
      flat[i * n + j] = flat[j * n + i] = m;
    }
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorKind::InvalidInput, "label count does not match point count");
  }
  validate(n, flat);
  FiniteMetricSpace space;
  space.n_ = n;
  space.dist_ = std::move(flat);
  space.labels_ = std::move(labels);
  space.geodesic_ = true;
  return space;
}

double FiniteMetricSpace::distance(PointIndex i, PointIndex j) const {
  if (i >= n_ || j >= n_) throw Error(ErrorKind::IndexOutOfRange, "point index", {i, j});
  return (*this)(i, j);
}

double FiniteMetricSpace::diameter() const {
  return dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

std::vector<double> FiniteMetricSpace::distinct_distances() const {
  std::vector<double> values;
  values.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) values.push_back((*this)(i, j));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> m(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
  }
  return m;
}

std::size_t ScaleGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& nb : neighbors) total += nb.size();
  return total / 2;
}

bool ScaleGraph::adjacent(PointIndex i, PointIndex j) const {
  const auto& nb = neighbors[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

ScaleGraph scale_graph(const FiniteMetricSpace& space, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorKind::NonpositiveScale, "scale must be positive");
  ScaleGraph g;
  g.scale = scale;
  g.neighbors.resize(space.size());
  for (PointIndex i = 0; i < space.size(); ++i) {
    for (PointIndex j = 0; j < space.size(); ++j) {
      if (i != j && space(i, j) < scale) g.neighbors[i].push_back(j);
    }
  }
  return g;
}

std::vector<PointIndex> Partition::members(PointIndex id) const {
  std::vector<PointIndex> out;
  for (PointIndex i = 0; i < component.size(); ++i) {
    if (component[i] == id) out.push_back(i);
  }
  return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --sets_;
  return true;
}

Partition to_partition(DisjointSets& sets, std::size_t n) {
  Partition p;
  p.component.resize(n);
  std::vector<std::size_t> min_member(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = sets.find(i);
    if (min_member[r] == n) min_member[r] = i;  // i ascending, so first hit is minimum
    p.component[i] = min_member[r];
  }
  p.count = sets.sets();
  return p;
}

Partition chain_components(const FiniteMetricSpace& space, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorKind::NonpositiveScale, "scale must be positive");
  const std::size_t n = space.size();
  DisjointSets sets(n);
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      if (space(i, j) < scale) sets.unite(i, j);
    }
  }
  return to_partition(sets, n);
}

double connectivity_threshold(const FiniteMetricSpace& space) {
  // Prim on the dense distance matrix.
  const std::size_t n = space.size();
  if (n <= 1) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, inf);
  std::vector<bool> in_tree(n, false);
  best[0] = 0.0;
  double largest = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i] && (u == n || best[i] < best[u])) u = i;
    }
    in_tree[u] = true;
    largest = std::max(largest, best[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v]) best[v] = std::min(best[v], space(u, v));
    }
  }
  return largest;
}

}  // namespace chainhom
