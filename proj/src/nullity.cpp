#include "chainhom/nullity.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "witness.hpp"

namespace chainhom {

const char* to_string(NullStatus status) {
  switch (status) {
    case NullStatus::Null: return "Null";
    case NullStatus::NonNull: return "NonNull";
    case NullStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto l : w) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

struct OrientedRelator {
  std::array<PointIndex, 3> triangle;
  Word word;
};

// Best-first search for a relator-insertion derivation of the empty word.
struct DerivationSearch {
  struct Node {
    Word word;
    std::size_t parent;
    std::size_t junction;
    std::size_t relator;
  };

  const Presentation& pres;
  const NullBudget& budget;
  std::vector<OrientedRelator> relators;
  std::unordered_map<Letter, std::vector<std::size_t>> by_first, by_last;
  std::vector<Node> nodes;
  std::size_t visited = 0;

  DerivationSearch(const Presentation& p, const NullBudget& b) : pres(p), budget(b) {
    for (const auto& t : pres.triangles()) {
      const std::array<std::array<PointIndex, 3>, 6> orders{{{t[0], t[1], t[2]},
                                                             {t[1], t[2], t[0]},
                                                             {t[2], t[0], t[1]},
                                                             {t[0], t[2], t[1]},
                                                             {t[2], t[1], t[0]},
                                                             {t[1], t[0], t[2]}}};
      for (const auto& o : orders) {
        Word w = pres.triangle_word(o[0], o[1], o[2]);
        if (w.empty()) continue;
        const auto idx = relators.size();
        by_first[w.front()].push_back(idx);
        by_last[w.back()].push_back(idx);
        relators.push_back({o, std::move(w)});
      }
    }
  }

  std::optional<std::size_t> run(const Word& start) {
    using Entry = std::pair<std::size_t, std::size_t>;  // (length, node)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::unordered_set<Word, WordHash> seen;
    nodes.push_back({start, 0, 0, 0});
    seen.insert(start);
    open.push({start.size(), 0});
    while (!open.empty()) {
      const auto [len, id] = open.top();
      open.pop();
      if (nodes[id].word.empty()) return id;
      if (++visited > budget.visited_words) return std::nullopt;
      const Word w = nodes[id].word;
      auto expand = [&](std::size_t j, std::size_t r) {
        const Word& rel = relators[r].word;
        Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
        next.insert(next.end(), rel.begin(), rel.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
        next = free_reduce(next);
        if (next.size() > budget.max_word_length) return;
        if (!seen.insert(next).second) return;
        const auto nid = nodes.size();
        nodes.push_back({std::move(next), id, j, r});
        open.push({nodes[nid].word.size(), nid});
      };
      for (std::size_t j = 0; j <= w.size(); ++j) {
        if (j > 0) {
          if (auto it = by_first.find(-w[j - 1]); it != by_first.end()) {
            for (auto r : it->second) expand(j, r);
          }
        }
        if (j < w.size()) {
          if (auto it = by_last.find(-w[j]); it != by_last.end()) {
            for (auto r : it->second) expand(j, r);
          }
        }
      }
    }
    return std::nullopt;
  }
};

void check_loop(const FiniteMetricSpace& space, double scale, const Chain& loop) {
  if (loop.scale != scale) throw Error(ErrorKind::ScaleMismatch, "loop scale differs from query scale");
  if (!loop.is_loop()) throw Error(ErrorKind::NotALoop, "chain endpoints differ");
  if (auto bad = validate_chain(space, loop)) {
    throw Error(ErrorKind::InvalidInput, "not a chain at this scale", {*bad});
  }
}

}  // namespace

NullityEngine::NullityEngine(const FiniteMetricSpace& space, double scale, NullBudget budget)
    : space_(&space), scale_(scale), budget_(budget), components_(chain_components(space, scale)) {}

const ComponentData& NullityEngine::component_of(PointIndex point) {
  const auto root = components_.component.at(point);
  auto& slot = cache_[root];
  if (!slot) {
    auto pres = Presentation::build(*space_, scale_, root);
    auto collapsed = collapse(pres);
    auto group = h1(collapsed);
    auto echelons = relator_echelons(collapsed, certificate_primes(group));
    slot = std::make_unique<ComponentData>(
        ComponentData{std::move(pres), std::move(collapsed), std::move(group), std::move(echelons)});
  }
  return *slot;
}

NullVerdict NullityEngine::is_null(const Chain& loop) {
  check_loop(*space_, scale_, loop);
  const auto& data = component_of(loop.front());
  const auto& pres = data.presentation;
  NullVerdict verdict;

  detail::WitnessBuilder builder(*space_, pres, loop);
  builder.shorten();
  if (builder.points().size() == 1) {
    verdict.status = NullStatus::Null;
    verdict.stage = "shorten";
    verdict.witness = builder.take();
    return verdict;
  }

  builder.to_normal_form();
  const Word word = builder.word();
  if (word.empty()) {
    builder.finish();
    verdict.status = NullStatus::Null;
    verdict.stage = "free-reduction";
    verdict.witness = builder.take();
    return verdict;
  }

  if (auto cocycle = find_cocycle(data.collapsed, data.echelons, word)) {
    NullCertificate cert;
    cert.presentation_basepoint = pres.basepoint();
    cert.value = evaluate(*cocycle, pres.path_word(loop.points));
    cert.h1_class = abelianize(data.collapsed.map(word), data.collapsed.generator_count);
    cert.cocycle = std::move(*cocycle);
    verdict.status = NullStatus::NonNull;
    verdict.stage = "h1";
    verdict.certificate = std::move(cert);
    return verdict;
  }

  DerivationSearch search(pres, budget_);
  const auto found = search.run(word);
  verdict.budget_spent = search.visited;
  if (!found) {
    verdict.status = NullStatus::Unknown;
    verdict.stage = "search";
    return verdict;
  }
  std::vector<std::size_t> path;
  for (auto id = *found; id != 0; id = search.nodes[id].parent) path.push_back(id);
  std::reverse(path.begin(), path.end());
  for (auto id : path) {
    const auto& node = search.nodes[id];
    builder.insert_triangle(node.junction, search.relators[node.relator].triangle);
    if (builder.word() != node.word) throw Error(ErrorKind::NotAHomotopy, "witness replay diverged from derivation");
  }
  builder.finish();
  verdict.status = NullStatus::Null;
  verdict.stage = "search";
  verdict.witness = builder.take();
  return verdict;
}

std::optional<Cocycle> NullityEngine::separate(const Chain& loop, const std::vector<Chain>& extra) {
  check_loop(*space_, scale_, loop);
  const auto& data = component_of(loop.front());
  std::vector<Word> rows;
  for (const auto& c : extra) {
    check_loop(*space_, scale_, c);
    if (!components_.same(c.front(), loop.front())) {
      throw Error(ErrorKind::WrongComponent, "extra loop in another component", {c.front()});
    }
    rows.push_back(data.presentation.path_word(c.points));
  }
  return find_cocycle(data.collapsed, data.echelons, data.presentation.path_word(loop.points), rows);
}

NullVerdict is_null(const FiniteMetricSpace& space, double scale, const Chain& loop, NullBudget budget) {
  NullityEngine engine(space, scale, budget);
  return engine.is_null(loop);
}

Word scale_map(const FiniteMetricSpace& space, double from, double to, const Chain& loop, PointIndex basepoint) {
  if (from > to) throw Error(ErrorKind::ScaleOrderViolation, "scale map needs from <= to");
  if (loop.scale != from) throw Error(ErrorKind::ScaleMismatch, "loop scale differs from source scale");
  const auto pres = Presentation::build(space, to, basepoint);
  return pres.chain_word(Chain{to, loop.points});
}

Word scale_map(const FiniteMetricSpace& space, double from, double to, const Word& word, PointIndex basepoint) {
  if (from > to) throw Error(ErrorKind::ScaleOrderViolation, "scale map needs from <= to");
  const auto source = Presentation::build(space, from, basepoint);
  return scale_map(space, from, to, source.word_loop(word), basepoint);
}

}  // namespace chainhom
