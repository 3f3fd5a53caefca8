#include "doctest.h"

#include <cmath>

#include "closfab/sim.hpp"
#include "closfab/theory.hpp"

using namespace closfab;
using namespace closfab::sim;

namespace {

SimConfig small_config(FabricSpec fabric, double load, std::uint64_t arrivals, std::uint64_t seed = 7) {
  SimConfig c;
  c.fabric = fabric;
  c.load_per_fiber = load;
  c.arrivals = arrivals;
  c.seed = seed;
  return c;
}

bool same_counts(const SimStats& a, const SimStats& b) {
  return a.arrivals == b.arrivals && a.blocked == b.blocked && a.blocking == b.blocking && a.ci_lo == b.ci_lo &&
         a.ci_hi == b.ci_hi && a.offered_load_measured == b.offered_load_measured && a.seed == b.seed &&
         a.fabric == b.fabric && a.load_per_fiber == b.load_per_fiber;
}

}  // namespace

TEST_CASE("confidence_interval") {
  const auto zero = confidence_interval(0, 1000);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi == 0.0);
  const auto all = confidence_interval(1000, 1000);
  CHECK(all.lo == 1.0);
  CHECK(all.hi == 1.0);
  const auto mid = confidence_interval(500, 1'000'000);
  CHECK(mid.lo == doctest::Approx(0.000456184025744).epsilon(1e-9));
  CHECK(mid.hi == doctest::Approx(0.000543815974256).epsilon(1e-9));
  const auto clamped = confidence_interval(1, 2);
  CHECK(clamped.lo == 0.0);
  CHECK(clamped.hi == 1.0);
  CHECK_THROWS_AS(confidence_interval(3, 2), InvalidInput);
  CHECK_THROWS_AS(confidence_interval(0, 0), InvalidInput);
}

TEST_CASE("event queue pops by time, then insertion order") {
  EventQueue q;
  const auto at = [](double t, ConnectionId id) {
    Event e;
    e.time = t;
    e.kind = EventKind::Departure;
    e.connection = id;
    return e;
  };
  q.push(at(2.0, 1));
  q.push(at(1.0, 2));
  q.push(at(2.0, 3));
  q.push(at(1.0, 4));
  q.push(at(0.5, 5));
  std::vector<ConnectionId> order;
  while (!q.empty()) order.push_back(q.pop().connection);
  CHECK(order == std::vector<ConnectionId>{5, 2, 4, 1, 3});
}

TEST_CASE("runs are deterministic") {
  const auto c = small_config(FabricSpec::clos(3, 3, 4, 3), 2.0, 50'000, 99);
  const auto a = run(c);
  const auto b = run(c);
  CHECK(same_counts(a, b));
  CHECK(a.blocked > 0);
  auto other = c;
  other.seed = 100;
  CHECK(run(other).blocked != a.blocked);

  auto rnd = c;
  rnd.policy = Policy::Random;
  CHECK(same_counts(run(rnd), run(rnd)));
}

TEST_CASE("single fiber pool reproduces Erlang-B") {
  // s(2,1): each input fiber feeds exactly one output fiber, so every
  // connection holds the same wavelength at both ends: an M/M/w/w pool.
  const auto stats = run(small_config(FabricSpec::spanke(2, 1, 5), 2.0, 300'000, 5));
  const double expected = theory::erlang_b(2.0, 5);
  CHECK(std::fabs(stats.blocking - expected) <= 3.0 * stats.std_error);
  CHECK(stats.arrivals == 300'000);
  CHECK(std::string(stats.rng_name) == "mt19937_64");
}

TEST_CASE("vanishing load never blocks") {
  const auto stats = run(small_config(FabricSpec::clos(2, 2, 3, 2), 1e-4, 10'000));
  CHECK(stats.blocked == 0);
  CHECK(stats.blocking == 0.0);
  CHECK(stats.ci_hi == 0.0);
}

TEST_CASE("offered load per input fiber converges to the configured load") {
  const auto stats = run(small_config(FabricSpec::spanke(5, 5, 5), 2.0, 1'000'000, 3));
  CHECK(std::fabs(stats.offered_load_measured - 2.0) / 2.0 < 0.01);
}

TEST_CASE("stats invariants") {
  const auto s = run(small_config(FabricSpec::clos(2, 3, 3, 2, MiddleKind::AWG), 3.0, 20'000));
  CHECK(s.blocking == doctest::Approx(static_cast<double>(s.blocked) / s.arrivals));
  CHECK(0.0 <= s.ci_lo);
  CHECK(s.ci_lo <= s.blocking);
  CHECK(s.blocking <= s.ci_hi);
  CHECK(s.ci_hi <= 1.0);
}

TEST_CASE("invalid configs") {
  CHECK_THROWS_AS(run(small_config(FabricSpec::spanke(2, 1, 1), 0.0, 10)), InvalidConfig);
  CHECK_THROWS_AS(run(small_config(FabricSpec::spanke(2, 1, 1), -1.0, 10)), InvalidConfig);
  CHECK_THROWS_AS(run(small_config(FabricSpec::spanke(2, 1, 1), 1.0, 0)), InvalidConfig);
  CHECK_THROWS_AS(run(small_config(FabricSpec::spanke(1, 1, 1), 1.0, 10)), InvalidSpec);
  auto c = small_config(FabricSpec::spanke(2, 1, 1), 1.0, 10);
  c.mean_holding = 0.0;
  CHECK_THROWS_AS(run(c), InvalidConfig);
}

TEST_CASE("mean holding time rescales time only") {
  auto c = small_config(FabricSpec::clos(2, 2, 3, 3), 1.5, 20'000, 12);
  const auto base = run(c);
  c.mean_holding = 4.0;
  const auto scaled = run(c);
  CHECK(std::fabs(base.blocking - scaled.blocking) <= 3.0 * std::hypot(base.std_error, scaled.std_error));
}

TEST_CASE("sweep of one value equals a single run") {
  const auto base = small_config(FabricSpec::clos(4, 3, 3, 3), 2.0, 20'000, 42);
  const auto swept = sweep(base, SweepParam::Middles, {SweepValue{5}});
  REQUIRE(swept.size() == 1);
  auto single = base;
  single.fabric.middles = 5;
  single.seed = derive_seed(base.seed, 0);
  CHECK(same_counts(swept[0], run(single)));
}

TEST_CASE("parallel sweep matches the serial reference") {
  const auto base = small_config(FabricSpec::clos(3, 3, 4, 3), 2.0, 20'000, 8);
  const std::vector<SweepValue> ms = {1, 2, 3, 4, 5, 6};
  const auto par = sweep(base, SweepParam::Middles, ms);
  const auto ser = sweep_serial(base, SweepParam::Middles, ms);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(same_counts(par[i], ser[i]));
    CHECK(par[i].fabric.middles == std::get<int>(ms[i]));
  }

  const std::vector<SweepValue> kinds = {MiddleKind::WSS, MiddleKind::TWC_WSS, MiddleKind::AWG};
  const auto kp = sweep(base, SweepParam::MiddleKind, kinds);
  const auto ks = sweep_serial(base, SweepParam::MiddleKind, kinds);
  for (std::size_t i = 0; i < kp.size(); ++i) CHECK(same_counts(kp[i], ks[i]));
}

TEST_CASE("sweep points") {
  const auto base = small_config(FabricSpec::clos(4, 3, 3, 3), 2.0, 100, 42);
  CHECK(sweep_point(base, SweepParam::Load, SweepValue{1.5}, 0).load_per_fiber == 1.5);
  CHECK(sweep_point(base, SweepParam::Load, SweepValue{3}, 0).load_per_fiber == 3.0);
  CHECK(sweep_point(base, SweepParam::Arch, SweepValue{FabricKind::Spanke}, 0).fabric.kind == FabricKind::Spanke);
  CHECK(sweep_point(base, SweepParam::MiddleKind, SweepValue{MiddleKind::AWG}, 0).fabric.middle_kind ==
        MiddleKind::AWG);
  CHECK(sweep_point(base, SweepParam::Middles, SweepValue{2}, 3).seed == derive_seed(42, 3));
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));

  CHECK_THROWS_AS(sweep_point(base, SweepParam::Middles, SweepValue{1.5}, 0), InvalidConfig);
  CHECK_THROWS_AS(sweep_point(base, SweepParam::Arch, SweepValue{2}, 0), InvalidConfig);
  CHECK_THROWS_AS(sweep_point(base, SweepParam::Middles, SweepValue{0}, 0), InvalidSpec);
  CHECK_THROWS_AS(sweep(base, SweepParam::Middles, {}), InvalidConfig);
  auto spanke = base;
  spanke.fabric.kind = FabricKind::Spanke;
  CHECK_THROWS_AS(sweep_point(spanke, SweepParam::Middles, SweepValue{2}, 0), InvalidConfig);
}

TEST_CASE("architecture dominance at matched seeds") {
  // Common random numbers: same seed gives every fabric the same requests.
  const std::vector<MiddleKind> order = {MiddleKind::TWC_WSS, MiddleKind::WSS, MiddleKind::AWG};
  std::vector<SimStats> stats;
  for (auto kind : order) stats.push_back(run(small_config(FabricSpec::clos(4, 4, 4, 4, kind), 2.0, 200'000, 31)));
  for (std::size_t i = 0; i + 1 < stats.size(); ++i) CHECK(stats[i].ci_lo <= stats[i + 1].ci_hi);
}
