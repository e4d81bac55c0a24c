#pragma once

#include <array>
#include <vector>

#include "chainhom/chains.hpp"
#include "chainhom/presentation.hpp"

namespace chainhom::detail {

/// Turns a word-level derivation into checked basic moves.
///
/// After to_normal_form() the chain is revT(a) ++ pieces ++ T(a), where a
/// piece for the oriented edge (u,v) is T(u) ++ revT(v) minus its leading
/// basepoint and T(x) is the tree path from the presentation basepoint to x.
class WitnessBuilder {
 public:
  WitnessBuilder(const FiniteMetricSpace& space, const Presentation& presentation, Chain start);

  void insert(std::size_t pos, PointIndex point);
  void remove(std::size_t pos);

  /// Removes consecutive duplicates.
  void dedupe();
  /// Greedily removes interior points whose neighbours are close.
  void shorten();
  /// path[0] == chain[pos]; leaves chain[pos..] = path ++ reverse(path)[1:].
  void grow_spur(std::size_t pos, const std::vector<PointIndex>& path);
  /// Collapses the odd palindrome chain[s..e] to chain[s].
  void contract_palindrome(std::size_t s, std::size_t e);

  void to_normal_form();
  /// Contracts tree pieces and cancelling pairs.
  void reduce_pieces();
  /// Inserts the triangle p->q->r->p at piece junction j, then reduces.
  void insert_triangle(std::size_t junction, const std::array<PointIndex, 3>& oriented);
  /// From an empty piece list down to the single base point.
  void finish();

  Word word() const;
  const std::vector<PointIndex>& points() const noexcept { return current_.points; }
  Homotopy take();

 private:
  std::size_t piece_length(const std::array<PointIndex, 2>& e) const;
  std::size_t junction_offset(std::size_t j) const;

  const FiniteMetricSpace* space_;
  const Presentation* presentation_;
  Homotopy homotopy_;
  Chain current_;
  PointIndex base_ = 0;
  std::vector<std::array<PointIndex, 2>> pieces_;
};

}  // namespace chainhom::detail
