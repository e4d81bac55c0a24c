#include "chainhom/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace chainhom::fixtures {

namespace {

constexpr double kPi = std::numbers::pi;

template <std::size_t D>
FiniteMetricSpace euclidean(const std::vector<std::array<double, D>>& pts) {
  const auto n = pts.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < D; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  }
  return FiniteMetricSpace::from_matrix(d);
}

void invalid(const char* what) { throw Error(ErrorKind::SpecInvalid, what); }

// Appends samples of the segment a->b at spacing <= step, excluding a.
void sample_segment(std::vector<std::array<double, 2>>& out, std::array<double, 2> a, std::array<double, 2> b,
                    double step, bool include_end) {
  const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
  const auto pieces = static_cast<std::size_t>(std::ceil(len / step));
  for (std::size_t k = 1; k <= pieces; ++k) {
    if (k == pieces && !include_end) break;
    const double t = static_cast<double>(k) / static_cast<double>(pieces);
    out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
  }
}

}  // namespace

FiniteMetricSpace circle(const Circle& spec) {
  if (spec.n < 3) invalid("circle needs n >= 3");
  if (!(spec.circumference > 0)) invalid("circle needs a positive circumference");
  const auto n = spec.n;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto k = static_cast<double>(std::min((i + n - j) % n, (j + n - i) % n));
      const double nd = static_cast<double>(n);
      d[i][j] = spec.metric == CircleMetric::Arc ? spec.circumference * k / nd
                                                 : spec.circumference / kPi * std::sin(kPi * k / nd);
    }
  }
  return FiniteMetricSpace::from_matrix(d);
}

FiniteMetricSpace ngon(const NGon& spec) {
  if (spec.n < 3) invalid("polygon needs n >= 3");
  if (!(spec.side > 0)) invalid("polygon needs a positive side");
  const auto n = spec.n;
  const double nd = static_cast<double>(n);
  const double radius = spec.side / (2 * std::sin(kPi / nd));
  // Distances depend only on the cyclic offset, so congruent pairs are bitwise equal.
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto k = std::min((i + n - j) % n, (j + n - i) % n);
      if (k == 0) continue;
      d[i][j] = k == 1 ? spec.side : 2 * radius * std::sin(kPi * static_cast<double>(k) / nd);
    }
  }
  return FiniteMetricSpace::from_matrix(d);
}

FiniteMetricSpace warsaw_circle(const WarsawCircle& spec) {
  if (spec.half_oscillations < 1) invalid("warsaw circle needs at least one half oscillation");
  const double u_lo = kPi / 2;
  const double u_hi = kPi / 2 + kPi * static_cast<double>(spec.half_oscillations);
  const double gap = 1 / u_hi;
  const double step = spec.step > 0 ? spec.step : gap / 2;
  if (!(step < gap)) invalid("warsaw circle step must be below the bar gap");

  std::vector<std::array<double, 2>> pts;
  // Oscillation, from the bar side outwards, resampled by chord length.
  pts.push_back({1 / u_hi, std::sin(u_hi)});
  const double du = step / 64;
  for (double u = u_hi - du; u > u_lo; u -= du) {
    const std::array<double, 2> p{1 / u, std::sin(u)};
    if (std::hypot(p[0] - pts.back()[0], p[1] - pts.back()[1]) >= step) pts.push_back(p);
  }
  const std::array<double, 2> end{1 / u_lo, 1.0};
  if (std::hypot(end[0] - pts.back()[0], end[1] - pts.back()[1]) > step / 4) {
    pts.push_back(end);
  } else {
    pts.back() = end;
  }
  // Connecting polyline to the bottom of the bar.
  const std::array<std::array<double, 2>, 5> arc{{end, {1.0, 1.0}, {1.0, -1.5}, {0.0, -1.5}, {0.0, -1.0}}};
  for (std::size_t k = 0; k + 1 < arc.size(); ++k) sample_segment(pts, arc[k], arc[k + 1], step, true);
  // Limit bar from (0,-1) up to (0,1).
  sample_segment(pts, {0.0, -1.0}, {0.0, 1.0}, step, true);
  return euclidean(pts);
}

Tower solenoid_tower(const SolenoidTower& spec) {
  if (spec.depth < 1) invalid("solenoid needs at least one stage");
  if (spec.m < 3 || spec.m % 2 != 0) invalid("solenoid needs an even m >= 4");
  if (!(spec.circumference > 0)) invalid("solenoid needs a positive circumference");
  Tower tower;
  for (std::size_t i = 0; i < spec.depth; ++i) {
    const std::size_t points = spec.m << i;
    const double c = spec.circumference * static_cast<double>(1ULL << i);
    tower.indices.push_back(static_cast<double>(i + 1));
    tower.stages.push_back(circle({points, c, CircleMetric::Arc}));
    if (i > 0) {
      const std::size_t below = spec.m << (i - 1);
      std::vector<PointIndex> bond(points);
      for (std::size_t j = 0; j < points; ++j) bond[j] = j % below;
      tower.bonds.push_back(std::move(bond));
    }
  }
  return tower;
}

namespace {

struct SphereStage {
  FiniteMetricSpace space;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> keys;  // (θ index, tree prefix)
};

std::size_t prefix_length(const Cat0SphereTower& spec, double rho) {
  if (rho <= 1e-12) return 0;
  std::size_t len = 1;
  for (double s : spec.splits) {
    if (rho > s + 1e-12) ++len;
  }
  return len;
}

SphereStage sphere_stage(const Cat0SphereTower& spec, double radius) {
  const std::size_t K = spec.half_samples;
  const std::size_t samples = 2 * K + 1;
  std::vector<double> rho(samples), height(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double theta = -kPi / 2 + kPi * static_cast<double>(j) / static_cast<double>(2 * K);
    rho[j] = (j == 0 || j + 1 == samples) ? 0.0 : radius * std::cos(theta);
    height[j] = radius * std::sin(theta);
  }
  // Leaf rays: first branch, then one choice per split.
  std::vector<std::vector<std::size_t>> rays;
  for (std::size_t b = 0; b < spec.branches; ++b) rays.push_back({b});
  for (std::size_t s = 0; s < spec.splits.size(); ++s) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& r : rays) {
      for (std::size_t c = 0; c < spec.split_factor; ++c) {
        auto e = r;
        e.push_back(c);
        next.push_back(std::move(e));
      }
    }
    rays = std::move(next);
  }
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
  SphereStage stage{FiniteMetricSpace::from_matrix({{0}}), {}};
  auto node = [&](std::size_t j, const std::vector<std::size_t>& ray) {
    std::vector<std::size_t> prefix(ray.begin(), ray.begin() + static_cast<std::ptrdiff_t>(prefix_length(spec, rho[j])));
    auto key = std::make_pair(j, std::move(prefix));
    auto [it, fresh] = index.emplace(key, stage.keys.size());
    if (fresh) stage.keys.push_back(std::move(key));
    return it->second;
  };
  std::vector<WeightedEdge> edges;
  for (const auto& ray : rays) {
    for (std::size_t j = 0; j + 1 < samples; ++j) {
      const auto u = node(j, ray);
      const auto v = node(j + 1, ray);
      edges.push_back({u, v, std::hypot(rho[j] - rho[j + 1], height[j] - height[j + 1])});
    }
  }
  std::vector<std::string> labels;
  for (const auto& [j, prefix] : stage.keys) {
    std::string l = "t" + std::to_string(j);
    for (auto c : prefix) l += "." + std::to_string(c);
    labels.push_back(std::move(l));
  }
  stage.space = FiniteMetricSpace::from_graph(stage.keys.size(), edges, std::move(labels));
  return stage;
}

}  // namespace

Tower cat0_sphere_tower(const Cat0SphereTower& spec) {
  if (spec.radii.empty()) invalid("sphere tower needs radii");
  if (spec.branches < 2 || spec.split_factor < 1 || spec.half_samples < 2) invalid("sphere tower tree or grid too small");
  for (std::size_t i = 0; i < spec.radii.size(); ++i) {
    if (!(spec.radii[i] > 0) || (i > 0 && !(spec.radii[i] > spec.radii[i - 1]))) {
      invalid("sphere radii must be positive and increasing");
    }
  }
  Tower tower;
  std::vector<SphereStage> stages;
  for (double r : spec.radii) stages.push_back(sphere_stage(spec, r));
  for (std::size_t i = 0; i < stages.size(); ++i) {
    tower.indices.push_back(spec.radii[i]);
    if (i > 0) {
      const auto& lower = stages[i - 1];
      std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> lookup;
      for (std::size_t k = 0; k < lower.keys.size(); ++k) lookup[lower.keys[k]] = k;
      std::vector<PointIndex> bond;
      const double rho_scale = spec.radii[i - 1];
      for (const auto& [j, prefix] : stages[i].keys) {
        const double theta = -kPi / 2 + kPi * static_cast<double>(j) / static_cast<double>(2 * spec.half_samples);
        const double rho = (j == 0 || j == 2 * spec.half_samples) ? 0.0 : rho_scale * std::cos(theta);
        std::vector<std::size_t> cut(prefix.begin(),
                                     prefix.begin() + static_cast<std::ptrdiff_t>(std::min(prefix.size(), prefix_length(spec, rho))));
        bond.push_back(lookup.at({j, cut}));
      }
      tower.bonds.push_back(std::move(bond));
    }
  }
  for (auto& s : stages) tower.stages.push_back(std::move(s.space));
  return tower;
}

FiniteMetricSpace horn_surface(const HornSurface& spec) {
  if (spec.axial < 2 || spec.angular < 3 || !(spec.x_max > spec.x_min)) invalid("horn grid too small");
  std::vector<std::array<double, 3>> pts;
  for (std::size_t i = 0; i < spec.axial; ++i) {
    const double x = spec.x_min + (spec.x_max - spec.x_min) * static_cast<double>(i) / static_cast<double>(spec.axial - 1);
    for (std::size_t a = 0; a < spec.angular; ++a) {
      const double phi = 2 * kPi * static_cast<double>(a) / static_cast<double>(spec.angular);
      pts.push_back({x, std::exp(x) * std::cos(phi), std::exp(x) * std::sin(phi)});
    }
  }
  auto dist = [&](std::size_t u, std::size_t v) {
    return std::hypot(pts[u][0] - pts[v][0], pts[u][1] - pts[v][1], pts[u][2] - pts[v][2]);
  };
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < spec.axial; ++i) {
    for (std::size_t a = 0; a < spec.angular; ++a) {
      const auto u = i * spec.angular + a;
      const auto ring = i * spec.angular + (a + 1) % spec.angular;
      edges.push_back({u, ring, dist(u, ring)});
      if (i + 1 < spec.axial) edges.push_back({u, u + spec.angular, dist(u, u + spec.angular)});
    }
  }
  return FiniteMetricSpace::from_graph(pts.size(), edges);
}

std::vector<PointIndex> horn_ring(const HornSurface& spec, std::size_t axial_index) {
  if (axial_index >= spec.axial) invalid("ring index out of range");
  std::vector<PointIndex> ring;
  for (std::size_t a = 0; a < spec.angular; ++a) ring.push_back(axial_index * spec.angular + a);
  return ring;
}

FiniteMetricSpace cantor_suspension(const CantorSuspension& spec) {
  if (spec.meridian_samples < 2) invalid("suspension needs at least two meridian samples");
  std::vector<double> left{0.0};
  double width = 1.0;
  for (std::size_t level = 0; level < spec.depth; ++level) {
    width /= 3;
    std::vector<double> next;
    for (double c : left) {
      next.push_back(c);
      next.push_back(c + 2 * width);
    }
    left = std::move(next);
  }
  std::vector<std::array<double, 2>> pts{{0.0, -1.0}, {0.0, 1.0}};
  const double H = static_cast<double>(spec.meridian_samples);
  for (double c : left) {
    for (std::size_t k = 1; k < spec.meridian_samples; ++k) {
      const double h = -1 + 2 * static_cast<double>(k) / H;
      pts.push_back({(1 - std::abs(h)) * c, h});
    }
  }
  return euclidean(pts);
}

Generated generate(const FixtureSpec& spec, std::uint64_t) {
  return std::visit(
      [](const auto& s) -> Generated {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) return circle(s);
        if constexpr (std::is_same_v<T, NGon>) return ngon(s);
        if constexpr (std::is_same_v<T, WarsawCircle>) return warsaw_circle(s);
        if constexpr (std::is_same_v<T, SolenoidTower>) return solenoid_tower(s);
        if constexpr (std::is_same_v<T, Cat0SphereTower>) return cat0_sphere_tower(s);
        if constexpr (std::is_same_v<T, HornSurface>) return horn_surface(s);
        if constexpr (std::is_same_v<T, CantorSuspension>) return cantor_suspension(s);
      },
      spec);
}

}  // namespace chainhom::fixtures
