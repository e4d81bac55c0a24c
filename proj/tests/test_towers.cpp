#include <map>
#include <random>

#include "chainhom/fixtures.hpp"
#include "chainhom/towers.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chainhom;

namespace {

Tower identity_tower(const FiniteMetricSpace& space, std::size_t stages = 2) {
  Tower t;
  std::vector<PointIndex> id(space.size());
  for (PointIndex i = 0; i < id.size(); ++i) id[i] = i;
  for (std::size_t s = 0; s < stages; ++s) {
    t.indices.push_back(static_cast<double>(s + 1));
    t.stages.push_back(space);
    if (s > 0) t.bonds.push_back(id);
  }
  return t;
}

double brute_pd(const Tower& tower, std::size_t r, std::size_t t) {
  auto f = tower.bond(r, t);
  double pd = 0;
  for (PointIndex x = 0; x < f.size(); ++x)
    for (PointIndex y = 0; y < f.size(); ++y)
      if (f[x] == f[y]) pd = std::max(pd, tower.stages[t](x, y));
  return pd;
}

fixtures::Cat0SphereTower cat0_with_gap(double gap) {
  fixtures::Cat0SphereTower spec;
  spec.radii = {1.0, 1.0 + gap, 1.0 + 2 * gap};
  return spec;
}

}  // namespace

TEST_CASE("tower validation") {
  auto hex = test::cycle_graph(6);
  CHECK_FALSE(validate_tower(identity_tower(hex, 1)));
  CHECK_FALSE(validate_tower(identity_tower(hex, 2)));

  Tower doubling;
  doubling.indices = {1, 2};
  doubling.stages = {fixtures::circle({4, 1.0}), fixtures::circle({8, 2.0})};
  doubling.bonds = {{0, 1, 2, 3, 0, 1, 2, 3}};
  CHECK_FALSE(validate_tower(doubling));

  auto broken = doubling;
  broken.bonds = {{0, 1, 2, 0, 0, 1, 2, 0}};
  REQUIRE(validate_tower(broken));
  CHECK(validate_tower(broken)->kind == "surjectivity");

  broken.bonds = {{0, 2, 1, 3, 0, 2, 1, 3}};
  REQUIRE(validate_tower(broken));
  CHECK(validate_tower(broken)->kind == "lipschitz");

  broken = doubling;
  broken.indices = {2, 1};
  REQUIRE(validate_tower(broken));
  CHECK(validate_tower(broken)->kind == "index-order");

  broken = doubling;
  broken.bonds = {{0, 1, 2, 3}};
  CHECK(validate_tower(broken));
}

TEST_CASE("generated towers validate") {
  CHECK_FALSE(validate_tower(fixtures::solenoid_tower({3, 8, 1.0})));
  CHECK_FALSE(validate_tower(fixtures::solenoid_tower({2, 64, 1.0})));
  CHECK_FALSE(validate_tower(fixtures::cat0_sphere_tower({})));
  CHECK_FALSE(validate_tower(fixtures::cat0_sphere_tower(cat0_with_gap(0.5))));
}

TEST_CASE("preimage diameter") {
  auto hex = test::cycle_graph(6);
  CHECK(preimage_diameter(identity_tower(hex), 0, 1) == 0);

  auto sol = fixtures::solenoid_tower({3, 8, 1.0});
  CHECK(preimage_diameter(sol, 0, 1) == doctest::Approx(1.0));
  CHECK(preimage_diameter(sol, 1, 2) == doctest::Approx(2.0));
  CHECK(preimage_diameter(sol, 0, 2) == doctest::Approx(brute_pd(sol, 0, 2)));

  for (double gap : {0.25, 0.5}) {
    auto cat = fixtures::cat0_sphere_tower(cat0_with_gap(gap));
    for (std::size_t r = 0; r + 1 < cat.size(); ++r) {
      for (std::size_t t = r + 1; t < cat.size(); ++t) {
        const double pd = preimage_diameter(cat, r, t);
        CHECK(pd == doctest::Approx(brute_pd(cat, r, t)));
        CHECK(pd <= 2 * (cat.indices[t] - cat.indices[r]) + 1e-6);
      }
    }
  }
}

TEST_CASE("entourages") {
  auto sol = fixtures::solenoid_tower({3, 8, 1.0});
  CHECK(entourage_contains(sol, {1, 0.3}, {1, 0.3}));
  CHECK(entourage_contains(sol, {2, 0.2}, {1, 0.3}));

  auto hex = test::cycle_graph(6);
  auto id = identity_tower(hex);
  // Exhaustive check against the pair list.
  auto brute = [&](EntourageSpec inner, EntourageSpec outer) {
    for (PointIndex x = 0; x < 6; ++x)
      for (PointIndex y = 0; y < 6; ++y)
        if (hex(x, y) < inner.scale && !(hex(x, y) < outer.scale)) return false;
    return true;
  };
  CHECK(entourage_contains(id, {0, 2}, {1, 1}) == brute({0, 2}, {1, 1}));
  CHECK_FALSE(entourage_contains(id, {0, 2}, {1, 1}));
  CHECK(entourage_contains(id, {0, 1}, {1, 2}) == brute({0, 1}, {1, 2}));
  CHECK(entourage_contains(id, {0, 1}, {1, 2}));
}

TEST_CASE("refining checks") {
  auto hex = test::cycle_graph(6);
  RefiningOptions opt;
  opt.delta = 1.5;
  opt.kappa = 1.5;
  CHECK(check_refining(identity_tower(hex), 0, 1, 2.0, opt).status == Verdict3::True);

  auto sol = fixtures::solenoid_tower({2, 8, 1.0});
  auto res = check_refining(sol, 0, 1, 0.3);
  CHECK(res.status == Verdict3::False);
  REQUIRE(res.counterexample);
  CHECK(res.counterexample->lift_distance > 0.6);

  auto g = gref_certificate(identity_tower(hex), 0, 1, 0.7);
  CHECK(g.certified);
  CHECK(g.delta_found == 0.7);
  g = gref_certificate(sol, 0, 1, 0.3);
  CHECK_FALSE(g.certified);

  auto cat = fixtures::cat0_sphere_tower({});
  for (std::size_t r = 0; r + 1 < cat.size(); ++r) {
    const double gap = cat.indices[r + 1] - cat.indices[r];
    CHECK(gref_certificate(cat, r, r + 1, 2.5 * gap).certified);
  }
}

TEST_CASE("scans") {
  auto hex = test::cycle_graph(6);
  auto single = identity_tower(hex, 1);
  auto report = invlim_scan(single, {0.5, 1.0});
  CHECK(report.cells.empty());
  CHECK(report.summary == Verdict3::True);

  auto sol = fixtures::solenoid_tower({3, 8, 1.0});
  report = invlim_scan(sol, {0.1, 0.2, 0.3});
  CHECK(report.summary == Verdict3::False);
  for (const auto& cell : report.cells) CHECK(cell.status == Verdict3::False);

  auto cat = fixtures::cat0_sphere_tower({});
  report = invlim_scan(cat, {0.55, 0.7, 1.0}, 0, {}, 2);
  CHECK(report.summary == Verdict3::True);
}

TEST_CASE("fineness monotonicity and gref sufficiency") {
  struct Case {
    Tower tower;
    double eps;
  };
  std::vector<Case> cases{{fixtures::cat0_sphere_tower({}), 0.8},
                          {fixtures::solenoid_tower({2, 16, 1.0}), 0.6},
                          {identity_tower(test::cycle_graph(6)), 2.5}};
  for (const auto& c : cases) {
    for (std::size_t r = 0; r + 1 < c.tower.size(); ++r) {
      const double delta = c.eps / 2;
      bool was_true = false;
      for (double frac : {0.3, 0.5, 0.75, 1.0}) {
        RefiningOptions opt;
        opt.delta = delta;
        opt.kappa = frac * delta;
        auto status = check_refining(c.tower, r, r + 1, c.eps, opt).status;
        if (was_true) CHECK(status == Verdict3::True);
        was_true = was_true || status == Verdict3::True;
      }
      auto g = gref_certificate(c.tower, r, r + 1, c.eps);
      if (g.certified) {
        RefiningOptions opt;
        opt.delta = std::min(g.delta_found, delta);
        CHECK(check_refining(c.tower, r, r + 1, c.eps, opt).status == Verdict3::True);
      }
    }
  }
}

TEST_CASE("witnesses extend along chains") {
  auto cat = fixtures::cat0_sphere_tower({});
  const double eps = 0.8, delta = 0.4;
  RefiningOptions opt;
  opt.delta = delta;
  auto res = check_refining(cat, 0, 1, eps, opt);
  REQUIRE(res.status == Verdict3::True);
  std::map<std::array<PointIndex, 4>, Chain> by_key;
  for (const auto& w : res.witnesses) {
    by_key[{w.a, w.b, w.a_lift, w.b_lift}] = w.chain;
    by_key[{w.b, w.a, w.b_lift, w.a_lift}] = reverse(w.chain);
  }
  const auto& base = cat.stages[0];
  const auto f = cat.bond(0, 1);
  std::vector<std::vector<PointIndex>> fibers(base.size());
  for (PointIndex x = 0; x < f.size(); ++x) fibers[f[x]].push_back(x);

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    auto beta = test::random_chain(rng, base, delta, rng() % base.size(), 4);
    PointIndex lift = fibers[beta.front()][rng() % fibers[beta.front()].size()];
    Chain alpha{res.kappa, {lift}};
    for (std::size_t i = 0; i + 1 < beta.size(); ++i) {
      const PointIndex next = fibers[beta.points[i + 1]][rng() % fibers[beta.points[i + 1]].size()];
      auto it = by_key.find({beta.points[i], beta.points[i + 1], lift, next});
      REQUIRE(it != by_key.end());
      alpha = concatenate(alpha, it->second);
      lift = next;
    }
    CHECK_FALSE(validate_chain(cat.stages[1], alpha));
    Chain loop = map_chain(f, alpha);
    loop.scale = eps;
    beta.scale = eps;
    loop = concatenate(loop, reverse(beta));
    CHECK(is_null(base, eps, loop).status == NullStatus::Null);
  }
}

TEST_CASE("lifting homotopies") {
  auto hex = test::cycle_graph(6);
  auto id = identity_tower(hex, 3);

  Homotopy constant{{1.5, {2, 2}}, {}};
  auto lifted = lift_homotopy_with_endpoints(id, 0, constant, 2, thread_through(id, 2, 2), thread_through(id, 2, 2));
  CHECK(lifted.moves.empty());
  CHECK(verify_thread_homotopy(id, lifted).ok);

  Homotopy h{{2.5, {0, 1, 2, 1, 0}}, {Remove{2}, Remove{1}, Insert{1, 5}, Remove{1}, Remove{1}}};
  REQUIRE(verify_homotopy(hex, h).ok);
  lifted = lift_homotopy_with_endpoints(id, 0, h, 2, thread_through(id, 2, 0), thread_through(id, 2, 0));
  auto check = verify_thread_homotopy(id, lifted);
  CHECK(check.ok);
  for (const auto& t : lifted.start) CHECK((t[0] == t[1] && t[1] == t[2]));
  std::vector<PointIndex> projected;
  for (const auto& t : check.final_chain) projected.push_back(t[0]);
  CHECK(projected == verify_homotopy(hex, h).final_chain.points);
}

TEST_CASE("lifted null loops on the solenoid") {
  auto sol = fixtures::solenoid_tower({3, 8, 1.0});
  const auto& base = sol.stages[0];
  std::mt19937_64 rng(59);
  std::size_t lifted_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const double eps = (trial % 2) ? 0.2 : 0.45;
    auto loop = test::random_loop(rng, base, eps, rng() % base.size(), 10);
    auto v = is_null(base, eps, loop);
    if (v.status != NullStatus::Null) continue;
    for (std::size_t depth : {1, 2}) {
      auto start = canonical_lift(sol, 0, loop.front(), depth);
      auto lifted = lift_homotopy_with_endpoints(sol, 0, v.witness, depth, start, start);
      auto check = verify_thread_homotopy(sol, lifted);
      CHECK(check.ok);
      CHECK(check.final_chain.front() == start);
      CHECK(check.final_chain.back() == start);
      for (const auto& t : check.final_chain) CHECK(is_thread(sol, t));
      ++lifted_count;
    }
  }
  CHECK(lifted_count > 20);
}
