#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chainhom/chains.hpp"
#include "chainhom/nullity.hpp"
#include "chainhom/presentation.hpp"
#include "chainhom/refining.hpp"

namespace chainhom {

enum class CoverStatus { Complete, Truncated };

const char* to_string(CoverStatus status);

using VertexId = std::size_t;

/// Finite realization of X_ε over the basepoint's chain component.
///
/// A vertex is a pair (point, group element). Complete covers use the closed
/// coset table of π_ε; truncated covers use the ball of reduced words of
/// length <= radius in the collapsed generators, which is exact when the
/// collapsed presentation has no relators.
struct CoveringGraph {
  double scale = 0;
  CoverStatus status = CoverStatus::Complete;
  bool exact = true;            // truncation reflects the group exactly
  std::size_t radius = 0;       // truncated covers: word-length radius
  std::size_t cosets_defined = 0;
  Presentation presentation;
  CollapsedPresentation collapsed;
  std::vector<PointIndex> points;       // component, ascending
  std::vector<std::size_t> slot;        // point -> position in `points`, or npos
  std::vector<Word> elements;           // reduced representative words; 0 is the identity
  std::vector<std::vector<std::int64_t>> multiply;  // [element][column] -> element or -1

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t group_order() const noexcept { return elements.size(); }
  std::size_t vertex_count() const noexcept { return points.size() * elements.size(); }
  PointIndex basepoint() const noexcept { return presentation.basepoint(); }
  VertexId base_vertex() const { return vertex(basepoint(), 0); }

  VertexId vertex(PointIndex point, std::size_t element) const;
  PointIndex endpoint(VertexId v) const { return points[v / elements.size()]; }
  std::size_t element(VertexId v) const { return v % elements.size(); }
  std::vector<VertexId> fiber(PointIndex point) const;

  /// Element reached from `element` by right multiplication with a word in
  /// collapsed generators, if it stays inside the cover.
  std::optional<std::size_t> right_multiply(std::size_t element, const Word& word) const;

  /// Target of the edge labeled q from v: defined when d(endpoint(v), q) < ε.
  std::optional<VertexId> step(const FiniteMetricSpace& space, VertexId v, PointIndex q) const;
};

struct CoverOptions {
  std::size_t max_cosets = 200000;
  std::size_t truncate_radius = 4;
};

CoveringGraph build_cover(const FiniteMetricSpace& space, double scale, PointIndex basepoint = 0,
                          const CoverOptions& options = {});

struct LiftResult {
  std::vector<VertexId> vertices;
  VertexId final_vertex = 0;
};

LiftResult lift_chain(const FiniteMetricSpace& space, const CoveringGraph& cover, const Chain& chain,
                      VertexId start);

bool fstar_related(const FiniteMetricSpace& space, const CoveringGraph& cover, VertexId v, VertexId w,
                   double delta);

/// Pre-concatenation by a loop class: (x, g) -> (x, h g).
VertexId deck_action(const CoveringGraph& cover, const Word& loop_word, VertexId v);
VertexId deck_action(const CoveringGraph& cover, const Chain& loop, VertexId v);

/// Components of the F* graph at δ on the vertices of the cover.
Partition cover_chain_components(const FiniteMetricSpace& space, const CoveringGraph& cover, double delta);

/// True when every component at δ maps onto the covered component.
bool components_surject(const FiniteMetricSpace& space, const CoveringGraph& cover, double delta);

/// Pairs with d(x,y) < δ are joined by κ-chains α with α * {y,x} null at ε.
RefiningResult check_refined_connectivity(const FiniteMetricSpace& space, double epsilon, double delta,
                                          double kappa, NullBudget budget = {});

/// Fineness grid used to compare refined connectivity with surjectivity:
/// midpoints of consecutive distinct distances inside (threshold, δ], and δ.
std::vector<double> kappa_grid(const FiniteMetricSpace& space, double delta);

struct UconBridge {
  std::vector<double> kappas;
  bool refined_connectivity = true;  // for every κ in the grid
  bool surjective = true;            // for every κ in the grid
  bool undecided = false;
};

UconBridge ucon_bridge(const FiniteMetricSpace& space, const CoveringGraph& cover, double delta,
                       NullBudget budget = {});

}  // namespace chainhom
