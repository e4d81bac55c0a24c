#include "chainhom/towers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <thread>

namespace chainhom {

const char* to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::True: return "true";
    case Verdict3::False: return "false";
    case Verdict3::Undecided: return "undecided";
  }
  return "undecided";
}

std::vector<PointIndex> Tower::bond(std::size_t r, std::size_t t) const {
  if (r > t || t >= size()) throw Error(ErrorKind::InvalidInput, "bond needs r <= t < stages", {r, t});
  std::vector<PointIndex> map(stages[t].size());
  for (PointIndex x = 0; x < map.size(); ++x) {
    PointIndex y = x;
    for (std::size_t s = t; s > r; --s) y = bonds[s - 1][y];
    map[x] = y;
  }
  return map;
}

std::optional<TowerViolation> validate_tower(const Tower& tower) {
  if (tower.stages.empty()) return TowerViolation{"shape", 0, {}, "tower has no stages"};
  if (tower.indices.size() != tower.stages.size() || tower.bonds.size() + 1 != tower.stages.size()) {
    return TowerViolation{"shape", 0, {}, "indices, stages and bonds disagree in count"};
  }
  for (std::size_t i = 0; i < tower.indices.size(); ++i) {
    if (!(tower.indices[i] > 0) || (i > 0 && !(tower.indices[i] > tower.indices[i - 1]))) {
      return TowerViolation{"index-order", i, {}, "indices must be positive and strictly increasing"};
    }
  }
  for (std::size_t i = 0; i < tower.bonds.size(); ++i) {
    const auto& bond = tower.bonds[i];
    const auto& lower = tower.stages[i];
    const auto& upper = tower.stages[i + 1];
    if (bond.size() != upper.size()) {
      return TowerViolation{"shape", i, {}, "bond length differs from the upper stage size"};
    }
    std::vector<bool> hit(lower.size(), false);
    for (PointIndex x = 0; x < bond.size(); ++x) {
      if (bond[x] >= lower.size()) return TowerViolation{"range", i, {x}, "bond value out of range"};
      hit[bond[x]] = true;
    }
    for (PointIndex y = 0; y < lower.size(); ++y) {
      if (!hit[y]) return TowerViolation{"surjectivity", i, {y}, "point of the lower stage has no preimage"};
    }
    for (PointIndex x = 0; x < upper.size(); ++x) {
      for (PointIndex z = x + 1; z < upper.size(); ++z) {
        if (lower(bond[x], bond[z]) > upper(x, z) + 1e-9) {
          return TowerViolation{"lipschitz", i, {x, z}, "bond increases a distance"};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::vector<std::vector<PointIndex>> fibers_of(const std::vector<PointIndex>& map, std::size_t base_size) {
  std::vector<std::vector<PointIndex>> fibers(base_size);
  for (PointIndex x = 0; x < map.size(); ++x) fibers[map[x]].push_back(x);
  return fibers;
}

double set_diameter(const FiniteMetricSpace& space, const std::vector<PointIndex>& pts) {
  double d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, space(pts[i], pts[j]));
  }
  return d;
}

void check_pair(const Tower& tower, std::size_t r, std::size_t t) {
  if (!(r < t) || t >= tower.size()) throw Error(ErrorKind::InvalidInput, "need r < t < stages", {r, t});
}

}  // namespace

double preimage_diameter(const Tower& tower, std::size_t r, std::size_t t) {
  if (r == t) return 0;
  check_pair(tower, r, t);
  double pd = 0;
  for (const auto& fiber : fibers_of(tower.bond(r, t), tower.stages[r].size())) {
    pd = std::max(pd, set_diameter(tower.stages[t], fiber));
  }
  return pd;
}

bool entourage_contains(const Tower& tower, const EntourageSpec& inner, const EntourageSpec& outer) {
  if (inner.stage >= tower.size() || outer.stage >= tower.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "entourage stage", {inner.stage, outer.stage});
  }
  if (inner.stage >= outer.stage && inner.scale <= outer.scale) return true;
  const std::size_t top = tower.size() - 1;
  const auto to_inner = tower.bond(inner.stage, top);
  const auto to_outer = tower.bond(outer.stage, top);
  const auto& si = tower.stages[inner.stage];
  const auto& so = tower.stages[outer.stage];
  const std::size_t n = tower.stages[top].size();
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x; y < n; ++y) {
      if (si(to_inner[x], to_inner[y]) < inner.scale && !(so(to_outer[x], to_outer[y]) < outer.scale)) {
        return false;
      }
    }
  }
  return true;
}

ThreadPoint thread_through(const Tower& tower, std::size_t T, PointIndex x) {
  if (T >= tower.size() || x >= tower.stages[T].size()) {
    throw Error(ErrorKind::IndexOutOfRange, "thread stage or point", {T, x});
  }
  ThreadPoint thread(T + 1);
  thread[T] = x;
  for (std::size_t s = T; s > 0; --s) thread[s - 1] = tower.bonds[s - 1][thread[s]];
  return thread;
}

ThreadPoint canonical_lift(const Tower& tower, std::size_t r, PointIndex p, std::size_t T) {
  if (r > T || T >= tower.size()) throw Error(ErrorKind::IndexOutOfRange, "lift stages", {r, T});
  const auto map = tower.bond(r, T);
  for (PointIndex x = 0; x < map.size(); ++x) {
    if (map[x] == p) return thread_through(tower, T, x);
  }
  throw Error(ErrorKind::InconsistentThread, "point has no preimage", {p});
}

bool is_thread(const Tower& tower, const ThreadPoint& thread) {
  if (thread.empty() || thread.size() > tower.size()) return false;
  for (std::size_t s = 0; s < thread.size(); ++s) {
    if (thread[s] >= tower.stages[s].size()) return false;
    if (s > 0 && tower.bonds[s - 1][thread[s]] != thread[s - 1]) return false;
  }
  return true;
}

namespace {

// κ-graph of one stage with BFS forests and shortest paths.
struct FineGraph {
  const FiniteMetricSpace& space;
  ScaleGraph graph;
  Partition parts;
  std::vector<PointIndex> parent;
  std::map<PointIndex, std::vector<std::array<PointIndex, 2>>> non_tree;  // per component root

  FineGraph(const FiniteMetricSpace& s, double kappa)
      : space(s), graph(scale_graph(s, kappa)), parts(chain_components(s, kappa)), parent(s.size()) {
    std::vector<bool> seen(s.size(), false);
    for (PointIndex root = 0; root < s.size(); ++root) {
      if (seen[root]) continue;
      std::deque<PointIndex> queue{root};
      seen[root] = true;
      parent[root] = root;
      while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto v : graph.neighbors[u]) {
          if (seen[v]) continue;
          seen[v] = true;
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    for (PointIndex u = 0; u < s.size(); ++u) {
      for (auto v : graph.neighbors[u]) {
        if (v > u && parent[v] != u && parent[u] != v) non_tree[parts.component[u]].push_back({u, v});
      }
    }
  }

  // root, ..., x
  std::vector<PointIndex> tree_path(PointIndex x) const {
    std::vector<PointIndex> p{x};
    while (parent[p.back()] != p.back()) p.push_back(parent[p.back()]);
    std::reverse(p.begin(), p.end());
    return p;
  }

  // Fundamental cycle of a non-tree edge, as a loop at the component root.
  std::vector<PointIndex> cycle(const std::array<PointIndex, 2>& e) const {
    auto out = tree_path(e[0]);
    auto back = tree_path(e[1]);
    out.insert(out.end(), back.rbegin(), back.rend());
    return out;
  }

  // Shortest path by total length from src to every point.
  std::vector<PointIndex> dijkstra_parents(PointIndex src) const {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(space.size(), inf);
    std::vector<PointIndex> prev(space.size(), src);
    using Item = std::pair<double, PointIndex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (auto v : graph.neighbors[u]) {
        const double nd = d + space(u, v);
        if (nd < dist[v]) {
          dist[v] = nd;
          prev[v] = u;
          pq.push({nd, v});
        }
      }
    }
    return prev;
  }
};

std::vector<PointIndex> path_from(const std::vector<PointIndex>& prev, PointIndex src, PointIndex dst) {
  std::vector<PointIndex> p{dst};
  while (p.back() != src) p.push_back(prev[p.back()]);
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

RefiningResult refining_search(const FiniteMetricSpace& base, const FiniteMetricSpace& top,
                               const std::vector<PointIndex>& f, double epsilon, const RefiningOptions& options) {
  if (f.size() != top.size()) throw Error(ErrorKind::InvalidInput, "map size differs from the upper space");
  RefiningResult result;
  result.epsilon = epsilon;
  result.delta = options.delta > 0 ? options.delta : epsilon / 2;
  result.kappa = options.kappa > 0 ? options.kappa : result.delta;
  if (!(result.kappa <= result.delta && result.delta <= epsilon)) {
    throw Error(ErrorKind::InvalidInput, "refining check needs kappa <= delta <= epsilon");
  }
  const auto fibers = fibers_of(f, base.size());
  const FineGraph fine(top, result.kappa);
  NullityEngine engine(base, epsilon, options.budget);

  std::map<PointIndex, std::vector<PointIndex>> dijkstra_cache;
  std::map<PointIndex, std::vector<Chain>> cycle_images;  // per κ-component root
  auto images_for = [&](PointIndex root) -> const std::vector<Chain>& {
    auto it = cycle_images.find(root);
    if (it != cycle_images.end()) return it->second;
    std::vector<Chain> loops;
    if (auto nt = fine.non_tree.find(root); nt != fine.non_tree.end()) {
      for (const auto& e : nt->second) loops.push_back(map_chain(f, Chain{epsilon, fine.cycle(e)}));
    }
    return cycle_images.emplace(root, std::move(loops)).first->second;
  };
  auto image_loop = [&](const std::vector<PointIndex>& alpha, PointIndex a) {
    Chain loop = map_chain(f, Chain{epsilon, alpha});
    loop.points.push_back(a);
    return loop;
  };

  for (PointIndex a = 0; a < base.size(); ++a) {
    for (PointIndex b = a; b < base.size(); ++b) {
      if (!(base(a, b) < result.delta)) continue;
      for (auto a1 : fibers[a]) {
        for (auto b1 : fibers[b]) {
          if (a == b && b1 < a1) continue;
          ++result.cases;
          RefiningWitness w{a, b, a1, b1, Chain{result.kappa, {}}};
          if (!fine.parts.same(a1, b1)) {
            result.counterexample =
                RefiningCounterexample{a, b, a1, b1, top(a1, b1), "disconnected", std::nullopt, 0};
            if (options.stop_at_counterexample) {
              result.status = Verdict3::False;
              return result;
            }
            continue;
          }
          auto& prev = dijkstra_cache[a1];
          if (prev.empty()) prev = fine.dijkstra_parents(a1);
          const auto alpha0 = path_from(prev, a1, b1);
          const Chain loop = image_loop(alpha0, a);
          const auto verdict = engine.is_null(loop);
          if (verdict.status == NullStatus::Null) {
            w.chain.points = alpha0;
            result.witnesses.push_back(std::move(w));
            continue;
          }
          if (verdict.status == NullStatus::NonNull) ++result.nonnull_cases;

          const PointIndex root = fine.parts.component[a1];
          if (auto cocycle = engine.separate(loop, images_for(root))) {
            result.counterexample = RefiningCounterexample{
                a, b, a1, b1, top(a1, b1), "h1", std::move(cocycle),
                engine.component_of(a).presentation.basepoint()};
            if (options.stop_at_counterexample) {
              result.status = Verdict3::False;
              return result;
            }
            continue;
          }

          // Try the shortest path twisted by single fundamental cycles.
          bool found = false;
          if (auto nt = fine.non_tree.find(root); nt != fine.non_tree.end()) {
            const auto to_root = [&] {
              auto p = fine.tree_path(a1);
              std::reverse(p.begin(), p.end());
              return p;
            }();
            const auto from_root = fine.tree_path(a1);
            for (const auto& e : nt->second) {
              auto cyc = fine.cycle(e);
              for (int orientation = 0; orientation < 2 && !found; ++orientation) {
                if (orientation == 1) std::reverse(cyc.begin(), cyc.end());
                std::vector<PointIndex> alpha = to_root;
                alpha.insert(alpha.end(), cyc.begin() + 1, cyc.end());
                alpha.insert(alpha.end(), from_root.begin() + 1, from_root.end());
                alpha.insert(alpha.end(), alpha0.begin() + 1, alpha0.end());
                if (engine.is_null(image_loop(alpha, a)).status == NullStatus::Null) {
                  w.chain.points = std::move(alpha);
                  found = true;
                }
              }
              if (found) break;
            }
          }
          if (found) {
            result.witnesses.push_back(std::move(w));
            continue;
          }
          ++result.undecided_cases;
          if (!result.first_undecided) {
            w.chain.points = alpha0;
            result.first_undecided = std::move(w);
          }
        }
      }
    }
  }
  if (result.counterexample) {
    result.status = Verdict3::False;
  } else if (result.undecided_cases > 0) {
    result.status = Verdict3::Undecided;
  } else {
    result.status = Verdict3::True;
  }
  return result;
}

RefiningResult check_refining(const Tower& tower, std::size_t r, std::size_t t, double epsilon,
                              const RefiningOptions& options) {
  check_pair(tower, r, t);
  const double delta = options.delta > 0 ? options.delta : epsilon / 2;
  if (!(delta < epsilon)) throw Error(ErrorKind::InvalidInput, "refining check needs delta < epsilon");
  return refining_search(tower.stages[r], tower.stages[t], tower.bond(r, t), epsilon, options);
}

GrefResult gref_certificate(const Tower& tower, std::size_t r, std::size_t t, double epsilon) {
  check_pair(tower, r, t);
  GrefResult out;
  out.preimage_diameter = preimage_diameter(tower, r, t);
  if (!tower.stages[t].geodesic()) {
    out.reason = "upper stage is not geodesic";
    return out;
  }
  if (!(out.preimage_diameter < epsilon)) {
    out.reason = "preimage diameter is not below epsilon";
    return out;
  }
  const auto& base = tower.stages[r];
  const auto& top = tower.stages[t];
  const auto fibers = fibers_of(tower.bond(r, t), base.size());
  std::vector<double> fiber_diam(base.size());
  for (PointIndex a = 0; a < base.size(); ++a) fiber_diam[a] = set_diameter(top, fibers[a]);
  double delta = epsilon;
  for (PointIndex a = 0; a < base.size(); ++a) {
    for (PointIndex b = a + 1; b < base.size(); ++b) {
      if (!(base(a, b) < delta)) continue;
      double joint = std::max(fiber_diam[a], fiber_diam[b]);
      for (auto x : fibers[a]) {
        for (auto y : fibers[b]) joint = std::max(joint, top(x, y));
      }
      if (joint >= epsilon) delta = base(a, b);
    }
  }
  out.certified = true;
  out.delta_found = delta;
  return out;
}

InvlimReport invlim_scan(const Tower& tower, const std::vector<double>& eps_grid, double kappa, NullBudget budget,
                         unsigned jobs) {
  InvlimReport report;
  report.eps_grid = eps_grid;
  report.kappa = kappa;
  for (std::size_t s = 0; s + 1 < tower.size(); ++s) {
    for (double eps : eps_grid) report.cells.push_back({s, s + 1, eps, Verdict3::Undecided, ""});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < report.cells.size(); i = next++) {
      auto& cell = report.cells[i];
      if (gref_certificate(tower, cell.r, cell.t, cell.epsilon).certified) {
        cell.status = Verdict3::True;
        cell.via = "gref";
        continue;
      }
      RefiningOptions opts;
      opts.delta = cell.epsilon / 2;
      opts.kappa = kappa > 0 ? std::min(kappa, opts.delta) : opts.delta;
      opts.budget = budget;
      cell.status = check_refining(tower, cell.r, cell.t, cell.epsilon, opts).status;
      cell.via = "refining";
    }
  };
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
  report.summary = Verdict3::True;
  for (const auto& c : report.cells) {
    if (c.status == Verdict3::False) {
      report.summary = Verdict3::False;
      break;
    }
    if (c.status == Verdict3::Undecided) report.summary = Verdict3::Undecided;
  }
  return report;
}

ThreadHomotopy lift_homotopy_with_endpoints(const Tower& tower, std::size_t r, const Homotopy& homotopy,
                                            std::size_t depth, const ThreadPoint& start_thread,
                                            const ThreadPoint& end_thread,
                                            const std::optional<std::vector<ThreadPoint>>& final_lift) {
  if (r > depth || depth >= tower.size()) throw Error(ErrorKind::InvalidInput, "need r <= depth < stages");
  const auto& space = tower.stages[r];
  const auto check = verify_homotopy(space, homotopy);
  if (!check.ok) throw Error(ErrorKind::NotAHomotopy, "stage homotopy does not verify", {check.step});
  for (const auto* th : {&start_thread, &end_thread}) {
    if (th->size() != depth + 1 || !is_thread(tower, *th)) {
      throw Error(ErrorKind::InconsistentThread, "endpoint thread is not a thread to the requested depth");
    }
  }
  const auto& start = homotopy.start.points;
  if (start_thread[r] != start.front() || end_thread[r] != start.back()) {
    throw Error(ErrorKind::InconsistentThread, "endpoint threads do not project to the chain endpoints");
  }
  std::map<PointIndex, ThreadPoint> lifts;
  auto lift = [&](PointIndex p) -> const ThreadPoint& {
    auto it = lifts.find(p);
    if (it == lifts.end()) it = lifts.emplace(p, canonical_lift(tower, r, p, depth)).first;
    return it->second;
  };

  ThreadHomotopy out;
  out.r = r;
  out.depth = depth;
  out.scale = homotopy.start.scale;
  out.start.push_back(start_thread);
  for (std::size_t i = 1; i + 1 < start.size(); ++i) out.start.push_back(lift(start[i]));
  if (start.size() > 1) {
    out.start.push_back(end_thread);
  } else if (start_thread != end_thread) {
    out.start.push_back(end_thread);  // the single point is represented by both endpoint threads
  }

  // `pinned` marks a stage chain {a} carried as [start_thread, end_thread].
  bool pinned = start.size() == 1 && start_thread != end_thread;
  std::vector<PointIndex> cur = start;
  for (const auto& move : homotopy.moves) {
    const std::size_t len = cur.size();
    if (const auto* ins = std::get_if<Insert>(&move)) {
      if (pinned) {
        pinned = false;  // [a] + duplicate is already represented
      } else {
        std::size_t pos = ins->pos;
        if (pos == 0) pos = 1;
        if (pos == len) pos = len - 1 == 0 ? 1 : len - 1;
        if (len == 1) {
          // {x̂} -> {x̂, x̂}: a genuine endpoint duplicate
          out.moves.push_back(ThreadInsert{1, start_thread});
        } else {
          out.moves.push_back(ThreadInsert{pos, lift(ins->point)});
        }
      }
    } else {
      std::size_t pos = std::get<Remove>(move).pos;
      if (len == 2) {
        if (start_thread == end_thread) {
          out.moves.push_back(ThreadRemove{1});
        } else {
          pinned = true;
        }
      } else {
        if (pos == 0) pos = 1;
        if (pos == len - 1) pos = len - 2;
        out.moves.push_back(ThreadRemove{pos});
      }
    }
    apply_move_unchecked(cur, move);
  }

  if (final_lift) {
    if (final_lift->size() != cur.size() || pinned) {
      throw Error(ErrorKind::InconsistentThread, "final lift does not match the final chain");
    }
    for (std::size_t i = 1; i + 1 < cur.size(); ++i) {
      const auto& target = (*final_lift)[i];
      if (target.size() != depth + 1 || !is_thread(tower, target) || target[r] != cur[i]) {
        throw Error(ErrorKind::InconsistentThread, "final lift does not project to the final chain", {i});
      }
      out.moves.push_back(ThreadInsert{i + 1, target});
      out.moves.push_back(ThreadRemove{i});
    }
  }
  return out;
}

ThreadHomotopyCheck verify_thread_homotopy(const Tower& tower, const ThreadHomotopy& homotopy) {
  ThreadHomotopyCheck result;
  const auto& space = tower.stages.at(homotopy.r);
  const double eps = homotopy.scale;
  auto chain_ok = [&](const std::vector<ThreadPoint>& c) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      if (!(space(c[i][homotopy.r], c[i + 1][homotopy.r]) < eps)) return false;
    }
    return true;
  };
  auto valid_thread = [&](const ThreadPoint& p) { return p.size() == homotopy.depth + 1 && is_thread(tower, p); };
  auto cur = homotopy.start;
  if (cur.empty() || !chain_ok(cur) || !std::all_of(cur.begin(), cur.end(), valid_thread)) {
    result.ok = false;
    result.reason = "invalid start chain";
    result.final_chain = cur;
    return result;
  }
  const auto first = cur.front();
  const auto last = cur.back();
  for (std::size_t i = 0; i < homotopy.moves.size(); ++i) {
    const auto& move = homotopy.moves[i];
    auto next = cur;
    if (const auto* ins = std::get_if<ThreadInsert>(&move)) {
      if (ins->pos > cur.size() || !valid_thread(ins->point)) {
        result.ok = false;
      } else {
        next.insert(next.begin() + static_cast<std::ptrdiff_t>(ins->pos), ins->point);
      }
    } else {
      const auto pos = std::get<ThreadRemove>(move).pos;
      if (pos >= cur.size() || cur.size() < 2) {
        result.ok = false;
      } else {
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(pos));
      }
    }
    if (result.ok && (next.front() != first || next.back() != last || !chain_ok(next))) result.ok = false;
    if (!result.ok) {
      result.step = i;
      result.reason = "illegal move";
      result.final_chain = std::move(cur);
      return result;
    }
    cur = std::move(next);
  }
  result.final_chain = std::move(cur);
  return result;
}

}  // namespace chainhom
