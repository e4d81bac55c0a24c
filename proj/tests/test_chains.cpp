#include <random>

#include "chainhom/chains.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chainhom;

TEST_CASE("chain validation") {
  auto two = FiniteMetricSpace::from_matrix({{0, 1}, {1, 0}});
  CHECK_FALSE(validate_chain(two, Chain{0.5, {0}}));
  CHECK(validate_chain(two, Chain{1.0, {0, 1}}) == std::optional<std::size_t>(0));

  auto hex = test::cycle_graph(6);
  CHECK_FALSE(validate_chain(hex, Chain{1.5, {0, 1, 2, 3}}));
  CHECK_THROWS_AS(validate_chain(hex, Chain{1.5, {0, 9}}), Error);
  CHECK_THROWS_AS(validate_chain(hex, Chain{1.5, {}}), Error);
}

TEST_CASE("basic moves") {
  auto hex = test::cycle_graph(6);
  Chain dup{1.5, {0, 0, 1}};
  CHECK(apply_move(hex, dup, Remove{1}).points == std::vector<PointIndex>{0, 1});

  Chain walk{1.5, {5, 0, 1, 2, 3, 4}};
  CHECK(check_move(hex, walk, Remove{3}) == MoveFailure::Distance);

  Chain near{2.5, {0, 1, 3}};
  CHECK(apply_move(hex, near, Insert{2, 2}).points == std::vector<PointIndex>{0, 1, 2, 3});

  Chain arc{1.5, {0, 1, 2}};
  CHECK(check_move(hex, arc, Remove{1}) == MoveFailure::Distance);
  try {
    apply_move(hex, arc, Remove{1});
    FAIL("expected IllegalMove");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllegalMove);
  }

  // Endpoints move only as duplicates.
  CHECK(check_move(hex, arc, Remove{0}) == MoveFailure::Endpoint);
  CHECK(check_move(hex, arc, Insert{0, 1}) == MoveFailure::Endpoint);
  CHECK_FALSE(check_move(hex, arc, Insert{0, 0}));
  CHECK_FALSE(check_move(hex, arc, Insert{3, 2}));
  CHECK(check_move(hex, arc, Insert{4, 2}) == MoveFailure::Position);
}

TEST_CASE("removals agree with the distance matrix") {
  auto square = test::unit_square();
  Chain loop{1.2, {0, 1, 2, 3, 0}};
  for (std::size_t pos = 1; pos <= 3; ++pos) {
    const bool bridged = square(loop.points[pos - 1], loop.points[pos + 1]) < 1.2;
    CHECK_FALSE(bridged);
    CHECK(check_move(square, loop, Remove{pos}) == MoveFailure::Distance);
  }
}

TEST_CASE("concatenation and reversal") {
  auto hex = test::cycle_graph(6);
  Chain ab{1.5, {0, 1}}, bc{1.5, {1, 2}};
  CHECK(concatenate(ab, bc).points == std::vector<PointIndex>{0, 1, 2});
  CHECK(reverse(Chain{1.5, {0, 1, 2}}).points == std::vector<PointIndex>{2, 1, 0});
  auto back = concatenate(ab, reverse(ab));
  CHECK(back.points == std::vector<PointIndex>{0, 1, 0});
  CHECK(back.is_loop());
  CHECK_THROWS_AS(concatenate(ab, ab), Error);
  CHECK_THROWS_AS(concatenate(ab, Chain{1.0, {1, 2}}), Error);
}

TEST_CASE("homotopy verification") {
  auto hex = test::cycle_graph(6);
  Homotopy empty{{1.5, {0, 1, 0}}, {}};
  CHECK(verify_homotopy(hex, empty).ok);

  Homotopy null{{1.5, {0, 1, 0}}, {Remove{1}, Remove{1}}};
  auto check = verify_homotopy(hex, null);
  CHECK(check.ok);
  CHECK(check.final_chain.points == std::vector<PointIndex>{0});

  Homotopy bad{{1.5, {0, 1, 2}}, {Remove{1}}};
  check = verify_homotopy(hex, bad);
  CHECK_FALSE(check.ok);
  CHECK(check.step == 0);
  CHECK(check.reason == MoveFailure::Distance);
}

TEST_CASE("inverse moves undo random moves") {
  std::mt19937_64 rng(3);
  auto space = test::random_planar(rng, 8);
  const double eps = 2.5;
  for (int trial = 0; trial < 300; ++trial) {
    auto c = test::random_chain(rng, space, eps, rng() % 8, 2 + rng() % 6);
    BasicMove m = rng() % 2 ? BasicMove{Insert{rng() % (c.size() + 1), rng() % 8}} : BasicMove{Remove{rng() % c.size()}};
    if (check_move(space, c, m)) continue;
    auto after = apply_move(space, c, m);
    auto inv = inverse_move(c, m);
    CHECK_FALSE(check_move(space, after, inv));
    CHECK(apply_move(space, after, inv) == c);
  }
}

TEST_CASE("mapped homotopies stay homotopies under 1-Lipschitz maps") {
  // Fold of the hexagon onto a path: i -> min(i, 6 - i) is 1-Lipschitz.
  auto hex = test::cycle_graph(6);
  auto path = FiniteMetricSpace::from_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  std::vector<PointIndex> fold{0, 1, 2, 3, 2, 1};
  Homotopy h{{1.5, {0, 1, 2, 1, 0}}, {Remove{2}, Remove{1}, Remove{1}, Insert{1, 5}, Remove{1}}};
  REQUIRE(verify_homotopy(hex, h).ok);
  auto image = map_homotopy(fold, h);
  auto check = verify_homotopy(path, image);
  CHECK(check.ok);
  CHECK(check.final_chain == map_chain(fold, verify_homotopy(hex, h).final_chain));
}
