#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "chainhom/chains.hpp"
#include "chainhom/metric.hpp"

namespace chainhom {

/// Signed generator: +(g+1) for generator g, -(g+1) for its inverse.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline std::size_t generator_of(Letter letter) {
  return static_cast<std::size_t>(letter < 0 ? -letter : letter) - 1;
}
inline Letter make_letter(std::size_t generator, bool inverse = false) {
  const auto l = static_cast<Letter>(generator + 1);
  return inverse ? -l : l;
}

Word free_reduce(const Word& word);
/// Free reduction followed by cancelling the first letter against the last.
Word cyclic_reduce(const Word& word);
Word inverse(const Word& word);
Word concat(const Word& a, const Word& b);

/// Edge-path presentation of π_ε at a basepoint.
///
/// Spanning tree: BFS from the basepoint over the scale graph, neighbours in
/// ascending order. Generators are the non-tree edges of the basepoint's
/// component in lexicographic order; generator g on edge (u,v), u < v, stands
/// for the loop tree(u) * {u,v} * tree(v)^-1. One relator per triangle.
class Presentation {
 public:
  static Presentation build(const FiniteMetricSpace& space, double scale, PointIndex basepoint);
  /// Same construction on an explicit scale graph (its clique complex).
  static Presentation from_graph(ScaleGraph graph, PointIndex basepoint);

  double scale() const noexcept { return scale_; }
  PointIndex basepoint() const noexcept { return basepoint_; }
  const ScaleGraph& graph() const noexcept { return graph_; }
  std::size_t point_count() const noexcept { return graph_.neighbors.size(); }

  const std::vector<PointIndex>& component() const noexcept { return component_; }
  bool in_component(PointIndex p) const { return p < depth_.size() && depth_[p] != kUnreached; }
  PointIndex parent(PointIndex p) const { return parent_[p]; }
  std::size_t depth(PointIndex p) const { return depth_[p]; }
  /// basepoint, ..., p
  std::vector<PointIndex> tree_path(PointIndex p) const;

  std::size_t generator_count() const noexcept { return generators_.size(); }
  const std::vector<std::array<PointIndex, 2>>& generators() const noexcept { return generators_; }
  const std::vector<std::array<PointIndex, 3>>& triangles() const noexcept { return triangles_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }

  /// Letter of the oriented edge u->v; nullopt for tree edges and u == v.
  /// Throws when u and v are not adjacent.
  std::optional<Letter> edge_letter(PointIndex u, PointIndex v) const;
  bool is_tree_edge(PointIndex u, PointIndex v) const;

  /// Freely reduced word of an arbitrary chain inside the component. For a
  /// loop at a this is the class of tree(a) * loop * tree(a)^-1.
  Word path_word(const std::vector<PointIndex>& points) const;
  /// Word of a loop based at the basepoint (validated).
  Word chain_word(const Chain& loop) const;
  /// Word of a valid loop based anywhere in the component (validated).
  Word loop_word(const Chain& loop) const;
  /// Word of the oriented triangle p -> q -> r -> p.
  Word triangle_word(PointIndex p, PointIndex q, PointIndex r) const;

  /// Loop at the basepoint whose word is `word`: concatenated generator loops.
  Chain word_loop(const Word& word) const;

 private:
  static constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

  void check_chain(const Chain& chain) const;

  double scale_ = 0;
  PointIndex basepoint_ = 0;
  ScaleGraph graph_;
  std::vector<PointIndex> component_;
  std::vector<PointIndex> parent_;
  std::vector<std::size_t> depth_;
  std::vector<std::array<PointIndex, 2>> generators_;
  std::vector<std::array<PointIndex, 3>> triangles_;
  std::vector<Word> relators_;
  // n*n table: -1 no edge, 0 tree edge, g+1 generator g on (min,max)
  std::vector<std::int32_t> edge_code_;
};

/// Tietze simplification by relators of length one (kill a generator) and
/// length two (identify two generators up to inversion), iterated to a
/// fixpoint. Every original generator maps to the empty word or one letter.
struct CollapsedPresentation {
  std::size_t generator_count = 0;
  std::vector<Word> relators;  // cyclically reduced, length >= 2, deduplicated
  std::vector<Word> image;     // per original generator

  Word map(const Word& original) const;
};

CollapsedPresentation collapse(const Presentation& presentation);

}  // namespace chainhom
