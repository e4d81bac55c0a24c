#include "chainhom/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <thread>

#include "chainhom/abelian.hpp"
#include "chainhom/presentation.hpp"

namespace chainhom {

namespace {

// Closed neighbourhoods of the Rips graph as bitsets.
class Neighborhoods {
 public:
  explicit Neighborhoods(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {
    for (std::size_t v = 0; v < n; ++v) set(v, v);
  }

  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::size_t v) const { return &bits_[v * words_]; }
  bool test(std::size_t u, std::size_t v) const { return (row(u)[v / 64] >> (v % 64)) & 1U; }
  void set(std::size_t u, std::size_t v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }
  void add_edge(std::size_t u, std::size_t v) {
    set(u, v);
    set(v, u);
  }

  // Some v outside {u, w} whose closed neighbourhood contains N[u] ∩ N[w].
  bool edge_dominated(std::size_t u, std::size_t w, std::vector<std::uint64_t>& common) const {
    const auto* a = row(u);
    const auto* b = row(w);
    for (std::size_t k = 0; k < words_; ++k) common[k] = a[k] & b[k];
    for (std::size_t k = 0; k < words_; ++k) {
      for (auto word = common[k]; word != 0; word &= word - 1) {
        const std::size_t v = k * 64 + static_cast<std::size_t>(std::countr_zero(word));
        if (v == u || v == w) continue;
        const auto* c = row(v);
        bool inside = true;
        for (std::size_t j = 0; j < words_ && inside; ++j) inside = (common[j] & ~c[j]) == 0;
        if (inside) return true;
      }
    }
    return false;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t sets;

  explicit UnionFind(std::size_t n) : parent(n), sets(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent[std::max(a, b)] = std::min(a, b);
    --sets;
  }
};

// H1 of the basepoint's component at `scale`, after removing dominated
// vertices (which preserves the homotopy type of the clique complex).
H1Group reduced_h1(const FiniteMetricSpace& space, double scale, PointIndex basepoint) {
  const auto partition = chain_components(space, scale);
  const auto members = partition.members(partition.component[basepoint]);
  const std::size_t m = members.size();
  Neighborhoods nb(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (space(members[i], members[j]) < scale) nb.add_edge(i, j);

  std::vector<bool> alive(m, true);
  std::vector<std::uint64_t> mask(nb.words(), 0);
  for (std::size_t i = 0; i < m; ++i) mask[i / 64] |= std::uint64_t{1} << (i % 64);
  auto dominated = [&](std::size_t u) {
    const auto* a = nb.row(u);
    for (std::size_t v = 0; v < m; ++v) {
      if (v == u || !alive[v] || !nb.test(u, v)) continue;
      const auto* b = nb.row(v);
      bool inside = true;
      for (std::size_t k = 0; k < nb.words() && inside; ++k) inside = (a[k] & mask[k] & ~b[k]) == 0;
      if (inside) return true;
    }
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t u = 0; u < m; ++u) {
      if (!alive[u] || !dominated(u)) continue;
      alive[u] = false;
      mask[u / 64] &= ~(std::uint64_t{1} << (u % 64));
      changed = true;
    }
  }

  std::vector<std::size_t> index(m, m);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i)
    if (alive[i]) {
      index[i] = kept.size();
      kept.push_back(i);
    }
  ScaleGraph graph;
  graph.scale = scale;
  graph.neighbors.resize(kept.size());
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b)
      if (a != b && nb.test(kept[a], kept[b])) graph.neighbors[a].push_back(b);
  return h1(collapse(Presentation::from_graph(std::move(graph), 0)));
}

}  // namespace

CriticalSpectrum critical_spectrum(const FiniteMetricSpace& space, PointIndex basepoint, unsigned jobs) {
  if (basepoint >= space.size()) throw Error(ErrorKind::IndexOutOfRange, "basepoint out of range", {basepoint});
  const std::size_t n = space.size();
  const auto d = space.distinct_distances();
  CriticalSpectrum out;
  out.rows.resize(d.size() + 1);
  for (std::size_t i = 0; i <= d.size(); ++i) {
    auto& row = out.rows[i];
    row.lo = i == 0 ? 0.0 : d[i - 1];
    if (i < d.size()) {
      row.hi = d[i];
      row.probe = (row.lo + row.hi) / 2;
    } else {
      row.probe = d.empty() ? 1.0 : 2 * d.back();
    }
  }

  // Sweep the edges in order of length. A row needs a fresh H1 only if one of
  // the edges entering at its lower end is not dominated and touches the
  // basepoint's component; otherwise the clique complex there is homotopy
  // equivalent to the previous row's.
  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (PointIndex i = 0; i < n; ++i)
    for (PointIndex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const auto& a, const auto& b) { return space(a.first, a.second) < space(b.first, b.second); });

  std::vector<char> fresh(out.rows.size(), 0);
  fresh[0] = 1;
  out.rows[0].components = n;
  Neighborhoods nb(n);
  UnionFind uf(n);
  std::vector<std::uint64_t> scratch(nb.words());
  std::size_t next_pair = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    std::vector<std::pair<PointIndex, PointIndex>> essential;
    for (; next_pair < pairs.size(); ++next_pair) {
      const auto [u, w] = pairs[next_pair];
      if (space(u, w) != d[k]) break;
      const bool merge = uf.find(u) != uf.find(w);
      nb.add_edge(u, w);
      uf.unite(u, w);
      if (merge || !nb.edge_dominated(u, w, scratch)) essential.emplace_back(u, w);
    }
    out.rows[k + 1].components = uf.sets;
    const auto root = uf.find(basepoint);
    for (const auto& e : essential)
      if (uf.find(e.first) == root) fresh[k + 1] = 1;
  }

  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < out.rows.size(); ++i)
    if (fresh[i]) work.push_back(i);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < work.size(); t = next++) {
      auto& row = out.rows[work[t]];
      auto group = reduced_h1(space, row.probe, basepoint);
      row.betti1 = group.betti1;
      row.torsion = std::move(group.torsion);
    }
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, work.size()))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (fresh[i]) continue;
    out.rows[i].betti1 = out.rows[i - 1].betti1;
    out.rows[i].torsion = out.rows[i - 1].torsion;
  }

  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const auto& a = out.rows[i - 1];
    const auto& b = out.rows[i];
    const bool homotopy = a.betti1 != b.betti1 || a.torsion != b.torsion;
    if (homotopy || a.components != b.components) out.critical_values.push_back(b.lo);
    if (homotopy) out.homotopy_critical_values.push_back(b.lo);
  }
  return out;
}

}  // namespace chainhom
