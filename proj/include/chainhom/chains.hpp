#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "chainhom/metric.hpp"

namespace chainhom {

/// An ε-chain: consecutive distances strictly below `scale`.
struct Chain {
  double scale = 0;
  std::vector<PointIndex> points;

  PointIndex front() const { return points.front(); }
  PointIndex back() const { return points.back(); }
  std::size_t size() const { return points.size(); }
  bool is_loop() const { return !points.empty() && points.front() == points.back(); }

  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Insert `point` so that it ends up at index `pos`.
struct Insert {
  std::size_t pos;
  PointIndex point;
  friend bool operator==(const Insert&, const Insert&) = default;
};

/// Remove the point at index `pos`.
struct Remove {
  std::size_t pos;
  friend bool operator==(const Remove&, const Remove&) = default;
};

using BasicMove = std::variant<Insert, Remove>;

/// Start chain plus the moves that transform it; intermediates are replayed.
struct Homotopy {
  Chain start;
  std::vector<BasicMove> moves;
};

enum class MoveFailure { Endpoint, Distance, Position };

const char* to_string(MoveFailure reason);

/// Index i of the first pair (i, i+1) with distance >= scale, if any.
std::optional<std::size_t> validate_chain(const FiniteMetricSpace& space, const Chain& chain);

/// Why `move` is illegal on `chain`, or nullopt when legal.
///
/// Moves never change the endpoint values. Interior positions are the normal
/// case; a move at an end position is legal only when it adds or removes a
/// repeated copy of the endpoint (e.g. {a,a} -> {a}).
std::optional<MoveFailure> check_move(const FiniteMetricSpace& space, const Chain& chain,
                                      const BasicMove& move);

Chain apply_move(const FiniteMetricSpace& space, const Chain& chain, const BasicMove& move);

/// In-place variant used on hot paths; the caller guarantees legality.
void apply_move_unchecked(std::vector<PointIndex>& points, const BasicMove& move);

/// The move undoing `move` when applied to the chain that `move` produced.
BasicMove inverse_move(const Chain& before, const BasicMove& move);

/// Traverses `first` then `second`; the junction point is stored once.
Chain concatenate(const Chain& first, const Chain& second);
Chain reverse(const Chain& chain);

struct HomotopyCheck {
  bool ok = true;
  std::size_t step = 0;  // first failing move when !ok
  MoveFailure reason = MoveFailure::Position;
  Chain final_chain;
};

HomotopyCheck verify_homotopy(const FiniteMetricSpace& space, const Homotopy& homotopy);

/// Image of a chain under an index map (1-Lipschitz maps keep it a chain).
Chain map_chain(const std::vector<PointIndex>& map, const Chain& chain);

/// Pushes a homotopy forward along an index map, move for move. The image
/// verifies whenever the map is 1-Lipschitz: distances never grow, and a
/// repeated endpoint stays repeated.
Homotopy map_homotopy(const std::vector<PointIndex>& map, const Homotopy& homotopy);

}  // namespace chainhom
