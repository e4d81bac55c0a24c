#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "chainhom/metric.hpp"
#include "chainhom/towers.hpp"

namespace chainhom::fixtures {

enum class CircleMetric { Arc, Chord };

struct Circle {
  std::size_t n = 12;
  double circumference = 1;
  CircleMetric metric = CircleMetric::Arc;
};

/// Regular planar polygon with the given side length.
struct NGon {
  std::size_t n = 4;
  double side = 1;
};

/// Closed topologist's sine curve: `half_oscillations` of sin(1/x), the
/// limit bar and a connecting polyline, sampled at spacing `step`
/// (<= 0: half the gap between the last oscillation and the bar).
struct WarsawCircle {
  std::size_t half_oscillations = 4;
  double step = 0;
};

/// Stage i is a circle of circumference 2^i L with m 2^i points; the bond
/// j -> j mod (m 2^(i-1)) wraps it twice around stage i-1.
struct SolenoidTower {
  std::size_t depth = 2;  // number of stages
  std::size_t m = 8;
  double circumference = 1;
};

/// Spheres about (root, 0) in T x R, T a tree whose root has `branches`
/// rays, each splitting into `split_factor` rays at every depth in `splits`.
struct Cat0SphereTower {
  std::size_t branches = 3;
  std::size_t split_factor = 2;
  std::vector<double> splits{0.5};
  std::vector<double> radii{1.0, 1.25, 1.5, 1.75};
  std::size_t half_samples = 16;  // θ grid has 2K+1 samples, poles included
};

/// Revolution surface of y = e^x, x in [x_min, x_max], graph-geodesic metric.
struct HornSurface {
  double x_min = -2;
  double x_max = 0.5;
  std::size_t axial = 11;
  std::size_t angular = 8;
};

/// Double cone over the left endpoints of the level-`depth` Cantor intervals.
struct CantorSuspension {
  std::size_t depth = 2;
  std::size_t meridian_samples = 40;
};

using FixtureSpec =
    std::variant<Circle, NGon, WarsawCircle, SolenoidTower, Cat0SphereTower, HornSurface, CantorSuspension>;

FiniteMetricSpace circle(const Circle& spec);
FiniteMetricSpace ngon(const NGon& spec);
FiniteMetricSpace warsaw_circle(const WarsawCircle& spec);
Tower solenoid_tower(const SolenoidTower& spec);
Tower cat0_sphere_tower(const Cat0SphereTower& spec);
FiniteMetricSpace horn_surface(const HornSurface& spec);
FiniteMetricSpace cantor_suspension(const CantorSuspension& spec);

/// Points of a horn ring (fixed axial index), in angular order.
std::vector<PointIndex> horn_ring(const HornSurface& spec, std::size_t axial_index);

using Generated = std::variant<FiniteMetricSpace, Tower>;

/// The generators are deterministic; `seed` is accepted for interface
/// uniformity and recorded by callers.
Generated generate(const FixtureSpec& spec, std::uint64_t seed = 0);

}  // namespace chainhom::fixtures
