#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "perisched/instgen.hpp"
#include "perisched/search.hpp"

namespace perisched {
namespace {

using testkit::make_instance;

SearchConfig iterations_only(std::int64_t iterations, std::uint64_t seed = 1) {
  SearchConfig c;
  c.time_limit_s = 0;
  c.warmstart_trigger_s = 0;
  c.stagnation_trigger_s = 0;
  c.heartbeat_s = 0;
  c.max_iterations = iterations;
  c.rng_seed = seed;
  return c;
}

TEST(InitialOrder, GroupsByPeriodThenChain) {
  Instance inst = testkit::motivating_instance();
  OrderedList order = initial_order(inst);
  ASSERT_EQ(order.size(), 30u);
  for (std::size_t p = 1; p < order.size(); ++p) {
    const Task& a = inst.task(order[p - 1]);
    const Task& b = inst.task(order[p]);
    EXPECT_LE(a.period, b.period);
    if (a.period == b.period) {
      EXPECT_LT(order[p - 1], order[p]);
    }
  }
  EXPECT_EQ(inst.task(order[5]).period, 40);
  EXPECT_EQ(inst.task(order[6]).period, 80);
  EXPECT_EQ(inst.task(order[21]).period, 240);
}

TEST(InitialOrder, SingleChainIsChainOrder) {
  Instance inst = make_instance({10}, 3, {{0, {{0, 1}, {1, 1}, {2, 1}}}});
  EXPECT_EQ(initial_order(inst), (OrderedList{0, 1, 2}));
}

TEST(Neighborhood, ReorderRestoresChainOrder) {
  Instance inst = make_instance({10}, 2, {{0, {{0, 1}, {1, 1}}}});
  SearchState state;
  state.current = {1, 0};
  state.phase = Phase::reorder;
  Rng rng(1);
  Move move = neighborhood_move(inst, state, rng);
  EXPECT_EQ(move.kind, Move::Kind::reorder);
  EXPECT_EQ(move.order, (OrderedList{0, 1}));
}

TEST(Neighborhood, ReorderKeepsOtherPositions) {
  Instance inst = make_instance({10}, 3, {{0, {{0, 1}, {1, 1}, {2, 1}}}, {0, {{0, 1}}}, {0, {{1, 1}}}});
  OrderedList order{2, 3, 0, 4, 1};
  EXPECT_EQ(violating_chains(inst, order), std::vector<int>{0});
  EXPECT_EQ(reorder_chain(inst, order, 0), (OrderedList{0, 3, 1, 4, 2}));
}

TEST(Neighborhood, OrderedChainsFallThroughToSwap) {
  Instance inst = make_instance({10}, 1, {{0, {{0, 1}}}, {0, {{0, 1}}}, {0, {{0, 1}}}, {0, {{0, 1}}}, {0, {{0, 1}}}});
  SearchState state;
  state.current = {0, 1, 2, 3, 4};
  Rng rng(9);
  for (int n = 0; n < 50; ++n) {
    Move move = neighborhood_move(inst, state, rng);
    EXPECT_EQ(move.kind, Move::Kind::swap);
    int differing = 0;
    for (std::size_t p = 0; p < 5; ++p) differing += move.order[p] != state.current[p];
    EXPECT_EQ(differing, 2);
    OrderedList sorted = move.order;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, state.current);
  }
}

TEST(Neighborhood, RepairMovesTaskStrictlyEarlier) {
  Rng rng(2);
  OrderedList order{0, 1, 2, 3, 4, 5};
  for (int n = 0; n < 50; ++n) {
    OrderedList out = repair_move(order, 4, rng);
    auto at = std::find(out.begin(), out.end(), 4) - out.begin();
    EXPECT_LT(at, 4);
    OrderedList without_a = order;
    OrderedList without_b = out;
    std::erase(without_a, 4);
    std::erase(without_b, 4);
    EXPECT_EQ(without_a, without_b);
  }
}

TEST(LocalSearch, SingleChainIsOptimalImmediately) {
  Instance inst = make_instance({10}, 1, {{0, {{0, 3}}}});
  SearchResult r = local_search(inst, iterations_only(100));
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.best_value, 0);
  EXPECT_EQ(r.stop, SearchResult::Stop::optimal);
}

TEST(LocalSearch, TraceIsNonIncreasingAndSeedDeterministic) {
  Instance inst = testkit::motivating_instance();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SearchResult a = local_search(inst, iterations_only(3000, seed));
    SearchResult b = local_search(inst, iterations_only(3000, seed));
    ASSERT_TRUE(a.feasible());
    EXPECT_EQ(a.schedule, b.schedule);
    EXPECT_EQ(a.best_order, b.best_order);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      EXPECT_EQ(a.trace[i].iteration, b.trace[i].iteration);
      EXPECT_EQ(a.trace[i].criterion, b.trace[i].criterion);
      if (i > 0) {
        EXPECT_LE(a.trace[i].criterion, a.trace[i - 1].criterion);
      }
    }
    EXPECT_TRUE(check_feasible(inst, *a.schedule).ok());
    EXPECT_EQ(a.criteria->dg_sum, a.best_value);
  }
}

TEST(LocalSearch, ReportsNoFeasibleExplicitly) {
  // Two half-load tasks at period 20 fit side by side.
  Instance inst = make_instance({10, 20}, 1, {{1, {{0, 10}}}, {1, {{0, 10}}}});
  SearchResult ok = local_search(inst, iterations_only(50));
  EXPECT_TRUE(ok.feasible());
  // Full load, but the period-20 task needs 8 contiguous units between 4-unit gaps.
  Instance blocked = make_instance({10, 20}, 1, {{0, {{0, 6}}}, {1, {{0, 8}}}});
  SearchResult r = local_search(blocked, iterations_only(200));
  EXPECT_FALSE(r.feasible());
  EXPECT_FALSE(r.criteria.has_value());
  EXPECT_EQ(r.stop, SearchResult::Stop::iteration_limit);
}

TEST(LocalSearch, AnnealStillKeepsBestMonotone) {
  Instance inst = testkit::motivating_instance();
  SearchConfig c = iterations_only(2000, 5);
  c.anneal = true;
  SearchResult r = local_search(inst, c);
  ASSERT_TRUE(r.feasible());
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i].criterion, r.trace[i - 1].criterion);
}

TEST(LocalSearch, OptimizesTheConfiguredCriterion) {
  Instance inst = testkit::motivating_instance();
  SearchConfig c = iterations_only(3000, 4);
  c.criterion = Criterion::parse("dgmax");
  SearchResult r = local_search(inst, c);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.best_value, r.criteria->dg_max);
}

TEST(SolveFlow, LowUtilizationNeverNeedsWarmStart) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Generated g = gen_general(GenConfig::desk(Rational(9, 10), seed));
    SearchConfig c = iterations_only(4000, seed);
    c.warmstart_trigger_iters = 1000;
    c.stagnation_trigger_iters = 1000;
    FlowResult f = solve_flow(g.instance, c);
    ASSERT_TRUE(f.feasible());
    EXPECT_FALSE(f.warm_start_used);
    EXPECT_TRUE(check_feasible(g.instance, *f.schedule).ok());
  }
}

TEST(SolveFlow, OptimalFirstIterateStaysUnchanged) {
  Instance inst = make_instance({10, 20}, 2, {{0, {{0, 3}, {1, 3}}}, {1, {{1, 2}}}});
  SearchConfig c = iterations_only(100);
  c.stagnation_trigger_iters = 10;
  FlowResult f = solve_flow(inst, c);
  ASSERT_TRUE(f.feasible());
  EXPECT_EQ(f.best_value, 0);
  EXPECT_EQ(f.value_before_matheur, f.best_value);
}

TEST(SolveFlow, FullLoadEngagesWarmStart) {
  Generated g = gen_general(GenConfig::desk(Rational(1), 3));
  SearchConfig c = iterations_only(3000, 3);
  c.warmstart_trigger_iters = 300;
  c.stagnation_trigger_iters = 1000;
  FlowResult f = solve_flow(g.instance, c);
  EXPECT_TRUE(f.feasible());
  if (f.warm_start_used) {
    EXPECT_TRUE(f.warm_start_status.has_value());
  }
}

TEST(Trace, CsvHasHeaderAndRows) {
  std::ostringstream out;
  write_trace_csv(out, {{1, 5, 3, false}, {2, 9, 1, true}});
  EXPECT_EQ(out.str(), "elapsed_ms,criterion\n5,3\n9,1\n");
}

}  // namespace
}  // namespace perisched
