#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainhom/abelian.hpp"
#include "chainhom/chains.hpp"
#include "chainhom/nullity.hpp"

namespace chainhom {

enum class Verdict3 { True, False, Undecided };
const char* to_string(Verdict3 v);

struct RefiningWitness {
  PointIndex a = 0, b = 0;            // stage r
  PointIndex a_lift = 0, b_lift = 0;  // stage t
  Chain chain;                        // κ-chain in stage t
};

struct RefiningCounterexample {
  PointIndex a = 0, b = 0;
  PointIndex a_lift = 0, b_lift = 0;
  double lift_distance = 0;           // stage-t distance of the lifts
  std::string reason;                 // "disconnected" or "h1"
  std::optional<Cocycle> cocycle;     // on the stage-r ε-presentation
  PointIndex presentation_basepoint = 0;
};

struct RefiningOptions {
  double delta = 0;  // <= 0: ε/2
  double kappa = 0;  // <= 0: δ
  NullBudget budget;
  bool stop_at_counterexample = true;
};

struct RefiningResult {
  Verdict3 status = Verdict3::Undecided;
  double epsilon = 0, delta = 0, kappa = 0;
  std::size_t cases = 0;          // (pair, lift pair) combinations examined
  std::size_t nonnull_cases = 0;  // cases whose shortest-path image was NonNull
  std::size_t undecided_cases = 0;
  std::vector<RefiningWitness> witnesses;
  std::optional<RefiningCounterexample> counterexample;
  std::optional<RefiningWitness> first_undecided;  // chain is the shortest κ-path
};

/// For every pair a,b of `base` with d(a,b) < δ and all lifts a',b' under
/// `map` (from `top` onto `base`), looks for a κ-chain α in `top` from a' to
/// b' with map(α) * {b,a} null at ε. False needs a certificate covering every
/// κ-chain: either no κ-chain exists or a cocycle vanishes on the images of
/// all κ-cycles but not on the shortest path's loop.
RefiningResult refining_search(const FiniteMetricSpace& base, const FiniteMetricSpace& top,
                               const std::vector<PointIndex>& map, double epsilon,
                               const RefiningOptions& options = {});

}  // namespace chainhom
