#include "chainhom/covering.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "chainhom/coset_enumeration.hpp"

namespace chainhom {

const char* to_string(CoverStatus status) {
  return status == CoverStatus::Complete ? "Complete" : "Truncated";
}

VertexId CoveringGraph::vertex(PointIndex point, std::size_t element) const {
  if (point >= slot.size() || slot[point] == npos || element >= elements.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "no such cover vertex", {point, element});
  }
  return slot[point] * elements.size() + element;
}

std::vector<VertexId> CoveringGraph::fiber(PointIndex point) const {
  std::vector<VertexId> out;
  for (std::size_t e = 0; e < elements.size(); ++e) out.push_back(vertex(point, e));
  return out;
}

std::optional<std::size_t> CoveringGraph::right_multiply(std::size_t element, const Word& word) const {
  std::int64_t e = static_cast<std::int64_t>(element);
  for (auto l : word) {
    e = multiply[e][CosetTable::column(l)];
    if (e < 0) return std::nullopt;
  }
  return static_cast<std::size_t>(e);
}

std::optional<VertexId> CoveringGraph::step(const FiniteMetricSpace& space, VertexId v, PointIndex q) const {
  const PointIndex x = endpoint(v);
  if (q >= space.size() || !(space(x, q) < scale)) return std::nullopt;
  std::size_t g = element(v);
  if (auto letter = presentation.edge_letter(x, q)) {
    Word image = collapsed.image[generator_of(*letter)];
    if (*letter < 0) image = inverse(image);
    auto next = right_multiply(g, image);
    if (!next) return std::nullopt;
    g = *next;
  }
  return vertex(q, g);
}

namespace {

void word_ball(CoveringGraph& cover, std::size_t radius, std::size_t max_elements) {
  const std::size_t gens = cover.collapsed.generator_count;
  std::map<Word, std::size_t> index;
  cover.elements = {Word{}};
  index[Word{}] = 0;
  std::size_t level_start = 0;
  cover.radius = 0;
  for (std::size_t len = 1; len <= radius; ++len) {
    const std::size_t level_end = cover.elements.size();
    std::vector<Word> next;
    for (std::size_t e = level_start; e < level_end; ++e) {
      for (std::size_t g = 0; g < gens; ++g) {
        for (bool inv : {false, true}) {
          const Letter l = make_letter(g, inv);
          const Word& w = cover.elements[e];
          if (!w.empty() && w.back() == -l) continue;
          Word n = w;
          n.push_back(l);
          next.push_back(std::move(n));
        }
      }
    }
    if (level_end + next.size() > max_elements) break;
    for (auto& w : next) {
      index.emplace(w, cover.elements.size());
      cover.elements.push_back(std::move(w));
    }
    level_start = level_end;
    cover.radius = len;
  }
  cover.multiply.assign(cover.elements.size(), std::vector<std::int64_t>(2 * gens, -1));
  for (std::size_t e = 0; e < cover.elements.size(); ++e) {
    for (std::size_t g = 0; g < gens; ++g) {
      for (bool inv : {false, true}) {
        const Letter l = make_letter(g, inv);
        Word w = cover.elements[e];
        if (!w.empty() && w.back() == -l) {
          w.pop_back();
        } else {
          w.push_back(l);
        }
        if (auto it = index.find(w); it != index.end()) {
          cover.multiply[e][CosetTable::column(l)] = static_cast<std::int64_t>(it->second);
        }
      }
    }
  }
}

}  // namespace

CoveringGraph build_cover(const FiniteMetricSpace& space, double scale, PointIndex basepoint,
                          const CoverOptions& options) {
  CoveringGraph cover{scale,
                      CoverStatus::Complete,
                      true,
                      0,
                      0,
                      Presentation::build(space, scale, basepoint),
                      {},
                      {},
                      {},
                      {},
                      {}};
  cover.collapsed = collapse(cover.presentation);
  cover.points = cover.presentation.component();
  cover.slot.assign(space.size(), CoveringGraph::npos);
  for (std::size_t i = 0; i < cover.points.size(); ++i) cover.slot[cover.points[i]] = i;

  std::optional<CosetTable> table;
  if (h1(cover.collapsed).betti1 == 0) {
    table = enumerate_cosets(cover.collapsed.generator_count, cover.collapsed.relators, options.max_cosets);
  }
  if (table) {
    cover.cosets_defined = table->defined;
    cover.multiply = table->table;
    // Representative words by breadth-first search from the identity.
    cover.elements.assign(table->order(), Word{});
    std::vector<bool> seen(table->order(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      const auto e = queue.front();
      queue.pop_front();
      for (std::size_t g = 0; g < cover.collapsed.generator_count; ++g) {
        for (bool inv : {false, true}) {
          const Letter l = make_letter(g, inv);
          const auto n = static_cast<std::size_t>(cover.multiply[e][CosetTable::column(l)]);
          if (seen[n]) continue;
          seen[n] = true;
          cover.elements[n] = cover.elements[e];
          cover.elements[n].push_back(l);
          queue.push_back(n);
        }
      }
    }
    return cover;
  }
  cover.status = CoverStatus::Truncated;
  cover.exact = cover.collapsed.relators.empty();
  word_ball(cover, options.truncate_radius, std::max<std::size_t>(1, options.max_cosets));
  return cover;
}

LiftResult lift_chain(const FiniteMetricSpace& space, const CoveringGraph& cover, const Chain& chain,
                      VertexId start) {
  if (chain.points.empty()) throw Error(ErrorKind::InvalidInput, "empty chain");
  if (start >= cover.vertex_count()) throw Error(ErrorKind::IndexOutOfRange, "start vertex", {start});
  if (cover.endpoint(start) != chain.front()) {
    throw Error(ErrorKind::StartMismatch, "start vertex does not lie over the first point", {start});
  }
  if (chain.scale > cover.scale) throw Error(ErrorKind::ScaleMismatch, "chain scale exceeds cover scale");
  if (auto bad = validate_chain(space, chain)) throw Error(ErrorKind::InvalidInput, "invalid chain", {*bad});
  LiftResult out;
  out.vertices.push_back(start);
  for (std::size_t i = 1; i < chain.points.size(); ++i) {
    auto next = cover.step(space, out.vertices.back(), chain.points[i]);
    if (!next) throw Error(ErrorKind::OutsideTruncation, "lift leaves the truncated cover", {i});
    out.vertices.push_back(*next);
  }
  out.final_vertex = out.vertices.back();
  return out;
}

bool fstar_related(const FiniteMetricSpace& space, const CoveringGraph& cover, VertexId v, VertexId w,
                   double delta) {
  const auto x = cover.endpoint(v);
  const auto y = cover.endpoint(w);
  if (!(space(x, y) < delta)) return false;
  const auto next = cover.step(space, v, y);
  return next && *next == w;
}

VertexId deck_action(const CoveringGraph& cover, const Word& loop_word, VertexId v) {
  const auto h = cover.right_multiply(0, cover.collapsed.map(loop_word));
  if (!h) throw Error(ErrorKind::OutsideTruncation, "loop class outside the truncated cover");
  const auto g = cover.right_multiply(*h, cover.elements[cover.element(v)]);
  if (!g) throw Error(ErrorKind::OutsideTruncation, "translate outside the truncated cover", {v});
  return cover.vertex(cover.endpoint(v), *g);
}

VertexId deck_action(const CoveringGraph& cover, const Chain& loop, VertexId v) {
  return deck_action(cover, cover.presentation.chain_word(loop), v);
}

Partition cover_chain_components(const FiniteMetricSpace& space, const CoveringGraph& cover, double delta) {
  const auto n = cover.vertex_count();
  DisjointSets sets(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto x = cover.endpoint(v);
    for (auto q : cover.points) {
      if (!(space(x, q) < delta)) continue;
      if (auto w = cover.step(space, v, q)) sets.unite(v, *w);
    }
  }
  return to_partition(sets, n);
}

bool components_surject(const FiniteMetricSpace& space, const CoveringGraph& cover, double delta) {
  const auto parts = cover_chain_components(space, cover, delta);
  std::map<std::size_t, std::set<PointIndex>> images;
  for (VertexId v = 0; v < cover.vertex_count(); ++v) images[parts.component[v]].insert(cover.endpoint(v));
  return std::all_of(images.begin(), images.end(),
                     [&](const auto& kv) { return kv.second.size() == cover.points.size(); });
}

RefiningResult check_refined_connectivity(const FiniteMetricSpace& space, double epsilon, double delta,
                                          double kappa, NullBudget budget) {
  if (!(kappa > 0 && kappa <= delta && delta <= epsilon)) {
    throw Error(ErrorKind::InvalidInput, "need 0 < kappa <= delta <= epsilon");
  }
  std::vector<PointIndex> identity(space.size());
  for (PointIndex i = 0; i < identity.size(); ++i) identity[i] = i;
  RefiningOptions options;
  options.delta = delta;
  options.kappa = kappa;
  options.budget = budget;
  return refining_search(space, space, identity, epsilon, options);
}

std::vector<double> kappa_grid(const FiniteMetricSpace& space, double delta) {
  const double threshold = connectivity_threshold(space);
  if (!(delta > threshold)) return {};
  std::vector<double> marks;
  for (double d : space.distinct_distances()) {
    if (d >= threshold && d < delta) marks.push_back(d);
  }
  marks.push_back(delta);
  std::vector<double> grid;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) grid.push_back((marks[i] + marks[i + 1]) / 2);
  grid.push_back(delta);
  return grid;
}

UconBridge ucon_bridge(const FiniteMetricSpace& space, const CoveringGraph& cover, double delta, NullBudget budget) {
  UconBridge out;
  out.kappas = kappa_grid(space, delta);
  for (double kappa : out.kappas) {
    const auto rc = check_refined_connectivity(space, cover.scale, delta, kappa, budget);
    if (rc.status == Verdict3::False) out.refined_connectivity = false;
    if (rc.status == Verdict3::Undecided) out.undecided = true;
    if (!components_surject(space, cover, kappa)) out.surjective = false;
  }
  return out;
}

}  // namespace chainhom
