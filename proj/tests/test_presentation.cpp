#include <random>

#include "chainhom/abelian.hpp"
#include "chainhom/coset_enumeration.hpp"
#include "chainhom/presentation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chainhom;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t gens, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(make_letter(rng() % gens, rng() % 2));
  return w;
}

}  // namespace

TEST_CASE("free and cyclic reduction") {
  CHECK(free_reduce({}).empty());
  CHECK(free_reduce({1, -1}).empty());
  CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
  CHECK(free_reduce({1, 2, -2, 2}) == Word{1, 2});
  CHECK(cyclic_reduce({-1, 2, 3, 1}) == Word{2, 3});
  CHECK(inverse({1, -2, 3}) == Word{-3, 2, -1});
  CHECK(concat({1, 2}, {-2, 3}) == Word{1, 3});

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto w = random_word(rng, 3, rng() % 12);
    auto r = free_reduce(w);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) CHECK(r[k] != -r[k + 1]);
    CHECK(free_reduce(concat(w, inverse(w))).empty());
    CHECK(abelianize(w, 3) == abelianize(r, 3));
  }
}

TEST_CASE("square presentations") {
  auto square = test::unit_square();
  auto p = Presentation::build(square, 1.2, 0);
  CHECK(p.generator_count() == 1);
  CHECK(p.relators().empty());

  p = Presentation::build(square, 1.5, 0);
  CHECK(p.generator_count() == 3);
  CHECK(p.relators().size() == 4);
  auto table = enumerate_cosets(p.generator_count(), p.relators(), 1000);
  REQUIRE(table);
  CHECK(table->order() == 1);

  auto point = FiniteMetricSpace::from_matrix({{0}});
  CHECK(Presentation::build(point, 3, 0).generator_count() == 0);
}

TEST_CASE("loop words") {
  auto square = test::unit_square();
  auto p = Presentation::build(square, 1.2, 0);
  CHECK(p.loop_word(Chain{1.2, {0, 0, 0}}).empty());
  auto w = p.loop_word(Chain{1.2, {0, 1, 2, 3, 0}});
  REQUIRE(w.size() == 1);
  CHECK(generator_of(w[0]) == 0);
  CHECK(p.loop_word(Chain{1.2, {0, 3, 2, 1, 0}}) == inverse(w));

  Chain lambda{1.2, {0, 1, 2, 3, 0, 1, 0}};
  CHECK(p.loop_word(concatenate(lambda, reverse(lambda))).empty());
  CHECK_THROWS_AS(p.loop_word(Chain{1.2, {0, 1, 2}}), Error);
}

TEST_CASE("generator loops realize their words") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto space = test::random_planar(rng, 4 + rng() % 6);
    const double eps = 1.2 + (rng() % 20) / 10.0;
    auto p = Presentation::build(space, eps, 0);
    if (p.generator_count() == 0) continue;
    for (int k = 0; k < 10; ++k) {
      auto w = free_reduce(random_word(rng, p.generator_count(), rng() % 6));
      auto loop = p.word_loop(w);
      CHECK_FALSE(validate_chain(space, loop));
      CHECK(loop.front() == 0);
      CHECK(loop.back() == 0);
      CHECK(p.chain_word(loop) == w);
    }
    // Every relator is the word of a triangle loop.
    for (std::size_t t = 0; t < p.triangles().size(); ++t) {
      const auto& [a, b, c] = p.triangles()[t];
      CHECK(p.triangle_word(a, b, c) == p.relators()[t]);
      CHECK(free_reduce(concat(p.triangle_word(a, b, c), p.triangle_word(a, c, b))).empty());
    }
  }
}

TEST_CASE("collapse preserves the abelianization") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto space = test::random_planar(rng, 4 + rng() % 8);
    const auto values = space.distinct_distances();
    const double eps = std::nextafter(values[rng() % values.size()], 1e9);
    auto p = Presentation::build(space, eps, 0);
    auto c = collapse(p);
    CHECK(c.image.size() == p.generator_count());

    IntMatrix raw;
    for (const auto& r : p.relators()) raw.push_back(abelianize(r, p.generator_count()));
    std::size_t raw_rank = 0;
    std::vector<std::int64_t> raw_torsion;
    for (const auto& f : invariant_factors(raw)) {
      ++raw_rank;
      if (f > 1) raw_torsion.push_back(static_cast<std::int64_t>(f));
    }
    auto g = h1(c);
    CHECK(g.betti1 == p.generator_count() - raw_rank);
    CHECK(g.torsion == raw_torsion);
    CHECK(g.betti1 == test::rips_betti1(space, eps, 0));

    // Relators map to the identity of the collapsed group (abelianized).
    for (const auto& r : p.relators()) {
      auto image = abelianize(c.map(r), c.generator_count);
      IntMatrix rows;
      for (const auto& cr : c.relators) rows.push_back(abelianize(cr, c.generator_count));
      const auto before = invariant_factors(rows).size();
      rows.push_back(image);
      CHECK(invariant_factors(rows).size() == before);
    }
  }
}

TEST_CASE("coset enumeration of known groups") {
  // Z/5 = <a | a^5>
  auto t = enumerate_cosets(1, {{1, 1, 1, 1, 1}}, 100);
  REQUIRE(t);
  CHECK(t->order() == 5);
  // S3 = <a, b | a^2, b^2, (ab)^3>
  t = enumerate_cosets(2, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}, 100);
  REQUIRE(t);
  CHECK(t->order() == 6);
  // A5 = <a, b | a^2, b^3, (ab)^5>
  t = enumerate_cosets(2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2, 1, 2, 1, 2}}, 10000);
  REQUIRE(t);
  CHECK(t->order() == 60);
  // Z x Z never closes.
  CHECK_FALSE(enumerate_cosets(2, {{1, 2, -1, -2}}, 500));
  // Trivial group from a redundant presentation.
  t = enumerate_cosets(2, {{1, 2}, {1, 1, 2}}, 100);
  REQUIRE(t);
  CHECK(t->order() == 1);

  // The table is a permutation representation: each column is a bijection
  // inverse to its partner, and every relator fixes every coset.
  t = enumerate_cosets(2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2, 1, 2, 1, 2}}, 10000);
  for (std::size_t c = 0; c < t->order(); ++c) {
    for (Letter l : {1, -1, 2, -2}) {
      const auto d = t->table[c][CosetTable::column(l)];
      REQUIRE(d >= 0);
      CHECK(t->table[static_cast<std::size_t>(d)][CosetTable::column(-l)] == static_cast<std::int64_t>(c));
    }
    for (const Word& r : {Word{1, 1}, Word{2, 2, 2}, Word{1, 2, 1, 2, 1, 2, 1, 2, 1, 2}}) {
      std::size_t cur = c;
      for (Letter l : r) cur = static_cast<std::size_t>(t->table[cur][CosetTable::column(l)]);
      CHECK(cur == c);
    }
  }
}
