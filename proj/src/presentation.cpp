#include "chainhom/presentation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "chainhom/rips.hpp"

namespace chainhom {

Word free_reduce(const Word& word) {
  Word out;
  out.reserve(word.size());
  for (auto l : word) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& word) {
  Word w = free_reduce(word);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& word) {
  Word out(word.rbegin(), word.rend());
  for (auto& l : out) l = -l;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Presentation Presentation::build(const FiniteMetricSpace& space, double scale, PointIndex basepoint) {
  if (basepoint >= space.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "basepoint out of range", {basepoint});
  }
  return from_graph(scale_graph(space, scale), basepoint);
}

Presentation Presentation::from_graph(ScaleGraph graph, PointIndex basepoint) {
  const std::size_t n = graph.neighbors.size();
  if (basepoint >= n) throw Error(ErrorKind::IndexOutOfRange, "basepoint out of range", {basepoint});
  Presentation p;
  p.scale_ = graph.scale;
  p.basepoint_ = basepoint;
  p.graph_ = std::move(graph);
  p.parent_.assign(n, basepoint);
  p.depth_.assign(n, kUnreached);
  p.edge_code_.assign(n * n, -1);

  std::deque<PointIndex> queue{basepoint};
  p.depth_[basepoint] = 0;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    p.component_.push_back(u);
    for (auto v : p.graph_.neighbors[u]) {
      if (p.depth_[v] != kUnreached) continue;
      p.depth_[v] = p.depth_[u] + 1;
      p.parent_[v] = u;
      p.edge_code_[u * n + v] = p.edge_code_[v * n + u] = 0;
      queue.push_back(v);
    }
  }
  std::sort(p.component_.begin(), p.component_.end());

  for (auto u : p.component_) {
    for (auto v : p.graph_.neighbors[u]) {
      if (v <= u || p.edge_code_[u * n + v] == 0) continue;
      p.generators_.push_back({u, v});
      const auto code = static_cast<std::int32_t>(p.generators_.size());
      p.edge_code_[u * n + v] = p.edge_code_[v * n + u] = code;
    }
  }

  std::vector<bool> keep(n, false);
  for (auto u : p.component_) keep[u] = true;
  p.triangles_ = graph_triangles(p.graph_, keep);
  p.relators_.reserve(p.triangles_.size());
  for (const auto& t : p.triangles_) p.relators_.push_back(p.triangle_word(t[0], t[1], t[2]));
  return p;
}

std::vector<PointIndex> Presentation::tree_path(PointIndex p) const {
  std::vector<PointIndex> path;
  while (p != basepoint_) {
    path.push_back(p);
    p = parent_[p];
  }
  path.push_back(basepoint_);
  std::reverse(path.begin(), path.end());
  return path;
}

bool Presentation::is_tree_edge(PointIndex u, PointIndex v) const {
  return edge_code_[u * point_count() + v] == 0;
}

std::optional<Letter> Presentation::edge_letter(PointIndex u, PointIndex v) const {
  if (u == v) return std::nullopt;
  const auto code = edge_code_[u * point_count() + v];
  if (code < 0) throw Error(ErrorKind::InvalidInput, "points are not adjacent at this scale", {u, v});
  if (code == 0) return std::nullopt;
  return u < v ? code : -code;
}

Word Presentation::path_word(const std::vector<PointIndex>& points) const {
  Word w;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (auto l = edge_letter(points[i], points[i + 1])) {
      if (!w.empty() && w.back() == -*l) {
        w.pop_back();
      } else {
        w.push_back(*l);
      }
    }
  }
  return w;
}

void Presentation::check_chain(const Chain& chain) const {
  if (chain.scale != scale_) throw Error(ErrorKind::ScaleMismatch, "chain scale differs from presentation");
  if (chain.points.empty()) throw Error(ErrorKind::InvalidInput, "empty chain");
  for (auto p : chain.points) {
    if (p >= point_count()) throw Error(ErrorKind::IndexOutOfRange, "chain point", {p});
  }
  if (!chain.is_loop()) throw Error(ErrorKind::NotALoop, "chain endpoints differ");
  for (auto p : chain.points) {
    if (!in_component(p)) {
      throw Error(ErrorKind::WrongComponent, "loop leaves the basepoint's component", {p});
    }
  }
  for (std::size_t i = 0; i + 1 < chain.points.size(); ++i) {
    const auto a = chain.points[i], b = chain.points[i + 1];
    if (a != b && !graph_.adjacent(a, b)) {
      throw Error(ErrorKind::InvalidInput, "not a chain at this scale", {a, b});
    }
  }
}

Word Presentation::chain_word(const Chain& loop) const {
  check_chain(loop);
  if (loop.front() != basepoint_) {
    throw Error(ErrorKind::NotALoop, "loop is not based at the presentation basepoint", {loop.front()});
  }
  return path_word(loop.points);
}

Word Presentation::loop_word(const Chain& loop) const {
  check_chain(loop);
  return path_word(loop.points);
}

Word Presentation::triangle_word(PointIndex p, PointIndex q, PointIndex r) const {
  return free_reduce(path_word({p, q, r, p}));
}

Chain Presentation::word_loop(const Word& word) const {
  Chain loop{scale_, {basepoint_}};
  for (auto l : word) {
    auto [u, v] = generators_.at(generator_of(l));
    if (l < 0) std::swap(u, v);
    auto down = tree_path(u);
    loop.points.insert(loop.points.end(), down.begin() + 1, down.end());
    auto up = tree_path(v);
    loop.points.insert(loop.points.end(), up.rbegin(), up.rend());
  }
  return loop;
}

namespace {

// Union-find over generators with a sign: g = root^sign, or g = 1 when the
// root is killed.
struct SignedSets {
  std::vector<std::size_t> parent;
  std::vector<int> sign;  // relative to parent
  std::vector<bool> killed;

  explicit SignedSets(std::size_t n) : parent(n), sign(n, 1), killed(n, false) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }

  std::pair<std::size_t, int> find(std::size_t g) {
    int s = 1;
    std::size_t x = g;
    while (parent[x] != x) {
      s *= sign[x];
      x = parent[x];
    }
    // compress
    std::size_t y = g;
    int sy = s;
    while (parent[y] != y) {
      auto next = parent[y];
      int snext = sy * sign[y];
      parent[y] = x;
      sign[y] = sy;
      y = next;
      sy = snext;
    }
    return {x, s};
  }

  Word image(const Word& w) {
    Word out;
    for (auto l : w) {
      auto [root, s] = find(generator_of(l));
      if (killed[root]) continue;
      out.push_back(make_letter(root, (l < 0) != (s < 0)));
    }
    return cyclic_reduce(out);
  }
};

Word canonical_cyclic(const Word& w) {
  Word best = w;
  for (const Word& base : {w, inverse(w)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(r), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(r));
      if (rot < best) best = rot;
    }
  }
  return best;
}

}  // namespace

Word CollapsedPresentation::map(const Word& original) const {
  Word out;
  for (auto l : original) {
    for (auto m : image[generator_of(l)]) {
      const Letter x = l < 0 ? -m : m;
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
  }
  return out;
}

CollapsedPresentation collapse(const Presentation& presentation) {
  const std::size_t g = presentation.generator_count();
  SignedSets sets(g);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : presentation.relators()) {
      Word w = sets.image(r);
      if (w.size() == 1) {
        sets.killed[generator_of(w[0])] = true;
        changed = true;
      } else if (w.size() == 2 && generator_of(w[0]) != generator_of(w[1])) {
        // a^s b^t = 1  =>  a = b^(-s t)
        const auto a = generator_of(w[0]);
        const auto b = generator_of(w[1]);
        const int s = w[0] < 0 ? -1 : 1;
        const int t = w[1] < 0 ? -1 : 1;
        sets.parent[a] = b;
        sets.sign[a] = -s * t;
        changed = true;
      }
    }
  }

  CollapsedPresentation out;
  std::vector<std::size_t> renumber(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    auto [root, s] = sets.find(i);
    (void)s;
    if (!sets.killed[root] && renumber[root] == g) renumber[root] = out.generator_count++;
  }
  out.image.resize(g);
  for (std::size_t i = 0; i < g; ++i) {
    auto [root, s] = sets.find(i);
    if (!sets.killed[root]) out.image[i] = {make_letter(renumber[root], s < 0)};
  }
  std::set<Word> seen;
  for (const auto& r : presentation.relators()) {
    Word w = cyclic_reduce(out.map(r));
    if (w.empty()) continue;
    w = canonical_cyclic(w);
    if (seen.insert(w).second) out.relators.push_back(w);
  }
  return out;
}

}  // namespace chainhom
