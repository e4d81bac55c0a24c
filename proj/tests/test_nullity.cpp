#include <algorithm>
#include <random>

#include "chainhom/fixtures.hpp"
#include "chainhom/nullity.hpp"
#include "chainhom/oracle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chainhom;

namespace {

void check_witness(const FiniteMetricSpace& space, const Chain& loop, const NullVerdict& v) {
  CHECK(v.witness.start == loop);
  auto replay = verify_homotopy(space, v.witness);
  CHECK(replay.ok);
  CHECK(replay.final_chain.points == std::vector<PointIndex>{loop.front()});
}

void check_certificate(const FiniteMetricSpace& space, double eps, const Chain& loop, const NullVerdict& v) {
  REQUIRE(v.certificate);
  const auto& c = *v.certificate;
  auto p = Presentation::build(space, eps, c.presentation_basepoint);
  CHECK(is_cocycle(c.cocycle, p));
  const auto value = evaluate(c.cocycle, p.path_word(loop.points));
  CHECK(value == c.value);
  CHECK(value % static_cast<std::int64_t>(c.cocycle.modulus) != 0);
}

}  // namespace

TEST_CASE("square loops") {
  auto square = test::unit_square();
  auto v = is_null(square, 1.2, Chain{1.2, {0, 0, 0}});
  CHECK(v.status == NullStatus::Null);
  check_witness(square, Chain{1.2, {0, 0, 0}}, v);

  Chain point{1.2, {2}};
  v = is_null(square, 1.2, point);
  CHECK(v.status == NullStatus::Null);
  CHECK(v.witness.moves.empty());

  Chain loop{1.2, {0, 1, 2, 3, 0}};
  v = is_null(square, 1.2, loop);
  CHECK(v.status == NullStatus::NonNull);
  REQUIRE(v.certificate);
  CHECK((v.certificate->h1_class == std::vector<std::int64_t>{1} ||
         v.certificate->h1_class == std::vector<std::int64_t>{-1}));
  check_certificate(square, 1.2, loop, v);

  loop.scale = 1.5;
  v = is_null(square, 1.5, loop);
  CHECK(v.status == NullStatus::Null);
  check_witness(square, loop, v);

  CHECK_THROWS_AS(is_null(square, 1.2, Chain{1.2, {0, 1}}), Error);
  CHECK_THROWS_AS(is_null(square, 1.2, Chain{1.5, {0, 1, 0}}), Error);
}

TEST_CASE("oracle on the square") {
  auto square = test::unit_square();
  CHECK(bfs_homotopy_oracle(square, 1.2, Chain{1.2, {1, 1}}, 8).status == OracleStatus::Null);
  CHECK(bfs_homotopy_oracle(square, 1.2, Chain{1.2, {0, 1, 2, 3, 0}}, 8).status == OracleStatus::NonNull);
  auto r = bfs_homotopy_oracle(square, 1.5, Chain{1.5, {0, 1, 2, 3, 0}}, 8);
  CHECK(r.status == OracleStatus::Null);
  CHECK(verify_homotopy(square, r.witness).final_chain.size() == 1);
}

TEST_CASE("scale maps") {
  auto hex = test::cycle_graph(6);
  CHECK(scale_map(hex, 1.2, 1.9, Word{}, 0).empty());
  Chain boundary{1.2, {0, 1, 2, 3, 4, 5, 0}};
  auto at19 = scale_map(hex, 1.2, 1.9, boundary, 0);
  CHECK_FALSE(at19.empty());
  CHECK(h1(hex, 1.9).betti1 == 1);

  auto at25 = scale_map(hex, 1.2, 2.5, boundary, 0);
  auto p25 = Presentation::build(hex, 2.5, 0);
  auto loop25 = p25.word_loop(at25);
  CHECK(is_null(hex, 2.5, loop25).status == NullStatus::Null);
  boundary.scale = 2.5;
  CHECK(bfs_homotopy_oracle(hex, 2.5, boundary, 9).status == OracleStatus::Null);

  CHECK_THROWS_AS(scale_map(hex, 2.5, 1.2, Word{}, 0), Error);
}

TEST_CASE("verdicts agree with the oracle on random planar spaces") {
  std::mt19937_64 rng(41);
  std::size_t decided = 0, unknown = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto space = test::random_planar(rng, 4 + rng() % 3, 4);
    const auto values = space.distinct_distances();
    const double eps = std::nextafter(values[rng() % values.size()], 1e9);
    NullityEngine engine(space, eps);
    for (int k = 0; k < 12; ++k) {
      auto loop = test::random_loop(rng, space, eps, rng() % space.size(), 7);
      auto v = engine.is_null(loop);
      auto o = bfs_homotopy_oracle(space, eps, loop, 9, 300000);
      if (v.status == NullStatus::Null) check_witness(space, loop, v);
      if (v.status == NullStatus::NonNull) check_certificate(space, eps, loop, v);
      if (v.status == NullStatus::Unknown) {
        ++unknown;
        continue;
      }
      if (o.status == OracleStatus::Null) {
        CHECK(v.status == NullStatus::Null);
        ++decided;
      } else if (o.status == OracleStatus::NonNull && v.status == NullStatus::NonNull) {
        ++decided;
      }
    }
  }
  CHECK(decided > 0);
  CHECK(unknown * 10 < 300);
}

TEST_CASE("horn loops far down the narrow end are null") {
  fixtures::HornSurface spec;
  auto horn = fixtures::horn_surface(spec);
  const double eps = 0.4;
  std::vector<NullStatus> verdicts;
  for (std::size_t i = 0; i < spec.axial; ++i) {
    Chain loop{eps, fixtures::horn_ring(spec, i)};
    loop.points.push_back(loop.front());
    if (validate_chain(horn, loop)) break;  // rings only widen from here on
    auto v = is_null(horn, eps, loop);
    if (v.status == NullStatus::Null) check_witness(horn, loop, v);
    if (v.status == NullStatus::NonNull) check_certificate(horn, eps, loop, v);
    verdicts.push_back(v.status);
  }
  REQUIRE(verdicts.size() >= 2);
  CHECK(verdicts.front() == NullStatus::Null);
  CHECK(verdicts.back() == NullStatus::NonNull);
  // Once a ring is essential, every wider ring that is still a chain is too.
  auto first_nonnull = std::find(verdicts.begin(), verdicts.end(), NullStatus::NonNull);
  for (auto it = first_nonnull; it != verdicts.end(); ++it) CHECK(*it == NullStatus::NonNull);
}
