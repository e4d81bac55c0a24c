#include <cmath>
#include <random>

#include "chainhom/metric.hpp"
#include "chainhom/rips.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chainhom;

TEST_CASE("matrix validation") {
  CHECK(FiniteMetricSpace::from_matrix({{0}}).size() == 1);
  CHECK(FiniteMetricSpace::from_matrix({{0, 1}, {1, 0}}).size() == 2);

  try {
    FiniteMetricSpace::from_matrix({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("expected a triangle violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TriangleViolation);
    CHECK(e.indices() == std::vector<std::size_t>{0, 1, 2});
  }

  auto kind_of = [](const std::vector<std::vector<double>>& m) {
    try {
      FiniteMetricSpace::from_matrix(m);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidInput;
  };
  CHECK(kind_of({{0, 1}, {1}}) == ErrorKind::NonSquareMatrix);
  CHECK(kind_of({{0, 1}, {2, 0}}) == ErrorKind::AsymmetricMatrix);
  CHECK(kind_of({{0, -1}, {-1, 0}}) == ErrorKind::NegativeDistance);
  CHECK(kind_of({{0, 0}, {0, 0}}) == ErrorKind::NegativeDistance);
  CHECK(kind_of({}) == ErrorKind::InvalidInput);
}

TEST_CASE("graph metric") {
  auto path = FiniteMetricSpace::from_graph(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK(path(0, 2) == 2);
  CHECK(path.geodesic());

  auto square = test::cycle_graph(4);
  CHECK(square(0, 2) == 2);

  auto hex = test::cycle_graph(6);
  CHECK(hex(0, 3) == 3);
  CHECK(hex(0, 2) == 2);

  CHECK_THROWS_AS(FiniteMetricSpace::from_graph(3, {{0, 1, 1}}), Error);
}

TEST_CASE("graph metric agrees with Floyd-Warshall on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<WeightedEdge> edges;
    for (PointIndex i = 1; i < n; ++i) edges.push_back({rng() % i, i, 0.5 + (rng() % 100) / 40.0});
    for (int extra = 0; extra < 6; ++extra) {
      const PointIndex u = rng() % n, v = rng() % n;
      if (u != v) edges.push_back({u, v, 0.5 + (rng() % 100) / 40.0});
    }
    auto space = FiniteMetricSpace::from_graph(n, edges);
    auto fw = test::floyd_warshall(n, edges);
    for (PointIndex i = 0; i < n; ++i) {
      for (PointIndex j = 0; j < n; ++j) CHECK(space(i, j) == doctest::Approx(fw[i][j]));
    }
  }
}

TEST_CASE("chain components use strict inequality") {
  auto two = FiniteMetricSpace::from_matrix({{0, 1}, {1, 0}});
  CHECK(chain_components(two, 1.0).count == 2);
  CHECK(chain_components(two, 1.01).count == 1);
  CHECK(chain_components(two, 5).count == 1);
  CHECK_THROWS_AS(chain_components(two, 0), Error);

  auto hex = test::cycle_graph(6);
  CHECK(chain_components(hex, hex.diameter() + 1).count == 1);
}

TEST_CASE("chain components agree with a BFS oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto space = test::random_planar(rng, 3 + rng() % 10);
    for (double eps : space.distinct_distances()) {
      for (double s : {eps, std::nextafter(eps, 1e9)}) {
        auto part = chain_components(space, s);
        auto labels = test::bfs_components(space, s);
        for (PointIndex i = 0; i < space.size(); ++i) {
          for (PointIndex j = 0; j < space.size(); ++j) CHECK(part.same(i, j) == (labels[i] == labels[j]));
        }
      }
    }
  }
}

TEST_CASE("connectivity threshold") {
  CHECK(connectivity_threshold(FiniteMetricSpace::from_matrix({{0, 1}, {1, 0}})) == 1);
  CHECK(connectivity_threshold(FiniteMetricSpace::from_matrix({{0, 1, 5}, {1, 0, 4}, {5, 4, 0}})) == 4);

  auto hex = test::cycle_graph(6);
  CHECK(connectivity_threshold(hex) == 1);
  for (double eps : hex.distinct_distances()) {
    CHECK((chain_components(hex, eps).count > 1) == (eps <= 1));
    CHECK(chain_components(hex, std::nextafter(eps, 1e9)).count == 1);
  }
}

TEST_CASE("Rips 2-skeleton on the square") {
  auto square = test::unit_square();
  auto two = FiniteMetricSpace::from_matrix({{0, 1}, {1, 0}});
  auto r = rips2(two, 2);
  CHECK(r.edges.size() == 1);
  CHECK(r.triangles.empty());
  r = rips2(square, 1.2);
  CHECK(r.edges.size() == 4);
  CHECK(r.triangles.empty());
  r = rips2(square, 1.5);
  CHECK(r.edges.size() == 6);
  CHECK(r.triangles.size() == 4);
}
