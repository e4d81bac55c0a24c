#pragma once

#include <cstddef>

#include "chainhom/chains.hpp"

namespace chainhom {

enum class OracleStatus { Null, NonNull, Exhausted };

const char* to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::Exhausted;
  std::size_t states = 0;
  Homotopy witness;  // Null: a shortest sequence of moves to a single point
};

/// Brute-force breadth-first search over all ε-chains of length at most
/// `max_chain_len` reachable from `loop` by basic moves. NonNull means no
/// null homotopy exists among chains within the length bound.
OracleResult bfs_homotopy_oracle(const FiniteMetricSpace& space, double scale, const Chain& loop,
                                 std::size_t max_chain_len, std::size_t max_states = 2000000);

}  // namespace chainhom
