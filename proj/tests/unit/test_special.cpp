#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "perisched/instgen.hpp"
#include "perisched/special.hpp"

namespace perisched {
namespace {

using testkit::make_instance;

Instance two_resource(Time period, const std::vector<std::pair<Time, Time>>& chains) {
  std::vector<ChainSpec> specs;
  for (auto [a, b] : chains) specs.push_back({0, {{0, a}, {1, b}}});
  return make_instance({period}, 2, specs);
}

Instance with_topology(const Instance& base, Topology topology) {
  return Instance(base.periods(), base.num_resources(), {base.chains().begin(), base.chains().end()}, std::move(topology));
}

TEST(Johnson, TextbookOrderAndZeroDegeneracy) {
  Instance inst = two_resource(12, {{3, 5}, {4, 2}, {1, 1}});
  JohnsonSchedule j = johnson_single_period(inst);
  EXPECT_EQ(j.chain_order, (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(j.makespan, 11);
  EXPECT_TRUE(check_feasible(inst, j.schedule).ok());
  EXPECT_EQ(j.criteria.dg_sum, 0);
  EXPECT_EQ(j.criteria.dg_max, 0);
  EXPECT_EQ(testkit::exact_optimum(inst, Criterion::parse("dgsum"), 0), 0);
}

TEST(Johnson, SingleChain) {
  Instance inst = two_resource(10, {{4, 6}});
  EXPECT_EQ(johnson_single_period(inst).criteria.dg_sum, 0);
}

TEST(Johnson, PermutationScheduleOnBothResources) {
  Rng rng(3);
  for (int n = 0; n < 50; ++n) {
    Time period = 10 + static_cast<Time>(rng() % 30);
    std::vector<std::pair<Time, Time>> chains;
    Time l1 = 0;
    Time l2 = 0;
    for (int k = 0; k < 8; ++k) {
      Time a = 1 + static_cast<Time>(rng() % 6);
      Time b = 1 + static_cast<Time>(rng() % 6);
      if (l1 + a > period || l2 + b > period) break;
      l1 += a;
      l2 += b;
      chains.push_back({a, b});
    }
    Instance inst = two_resource(period, chains);
    JohnsonSchedule j = johnson_single_period(inst);
    ASSERT_TRUE(check_feasible(inst, j.schedule).ok());
    // Resource-2 residues follow the resource-1 order cyclically.
    std::vector<Time> r1;
    std::vector<Time> r2;
    for (int k : j.chain_order) {
      r1.push_back(mod_floor(j.schedule.start[static_cast<std::size_t>(inst.first_task(k))], period));
      r2.push_back(mod_floor(j.schedule.start[static_cast<std::size_t>(inst.last_task(k))], period));
    }
    for (std::size_t i = 1; i < r1.size(); ++i) {
      EXPECT_LT(r1[i - 1], r1[i]);
      EXPECT_LT(mod_floor(r2[i - 1] - r2[0], period), mod_floor(r2[i] - r2[0], period));
    }
    EXPECT_EQ(j.criteria.dg_sum, 0);
  }
}

TEST(Johnson, RejectsOtherShapes) {
  EXPECT_THROW(johnson_single_period(make_instance({10}, 2, {{0, {{0, 1}}}})), InputError);
  EXPECT_THROW(johnson_single_period(make_instance({10, 20}, 2, {{0, {{0, 1}, {1, 1}}}, {1, {{0, 1}, {1, 1}}}})), InputError);
  EXPECT_THROW(johnson_single_period(make_instance({10}, 2, {{0, {{1, 1}, {0, 1}}}, {0, {{0, 1}, {1, 1}}}})), InputError);
}

Instance line3(std::vector<ChainSpec> chains, std::vector<Time> periods = {30}) {
  return Instance(PeriodSet(std::move(periods)), 3, std::move(chains), Topology{Topology::Kind::line, {-1, 0, 1}});
}

TEST(OffsetLine, UniformChainsSpanResourcesTimesWork) {
  Instance inst = line3({{0, {{0, 3}, {1, 3}, {2, 3}}}, {0, {{0, 3}, {1, 3}, {2, 3}}}, {0, {{0, 3}, {1, 3}, {2, 3}}}});
  OffsetSchedule s = offset_schedule_line(inst, CoreSchedule{{0, 0, 0, 3, 0, 0, 6, 0, 0}});
  EXPECT_EQ(s.offset, (std::vector<Time>{0, 3, 6}));
  for (const ChainCriteria& c : s.criteria.chains) EXPECT_EQ(c.latency, 9);
  EXPECT_TRUE(check_feasible(inst, s.schedule).ok());
}

TEST(OffsetLine, ShrinkingMaximaGiveSmallerOffsets) {
  // The long chain stops at resource 1, so later edges only carry p = 2.
  Instance inst = line3({{0, {{0, 5}}}, {0, {{0, 2}, {1, 2}, {2, 2}}}});
  OffsetSchedule s = offset_schedule_line(inst, CoreSchedule{{0, 5, 0, 0}});
  EXPECT_EQ(s.offset, (std::vector<Time>{0, 2, 4}));
  EXPECT_LT(s.offset[1], 1 * 5);
  EXPECT_LT(s.offset[2], 2 * 5);
  EXPECT_TRUE(check_feasible(inst, s.schedule).ok());
  EXPECT_EQ(s.criteria.chains[1].latency, 6);
}

TEST(OffsetTree, LineShapedTreeMatchesLine) {
  Instance line = line3({{0, {{0, 4}, {1, 4}}}, {0, {{0, 2}, {1, 2}, {2, 2}}}});
  Instance tree = with_topology(line, Topology{Topology::Kind::tree, {-1, 0, 1}});
  CoreSchedule root{{0, 0, 4, 0, 0}};
  OffsetSchedule a = offset_schedule_line(line, root);
  OffsetSchedule b = offset_schedule_tree(tree, root);
  EXPECT_EQ(a.offset, b.offset);
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_THROW(offset_schedule_line(tree, root), InputError);
}

TEST(OffsetTree, BranchesAreIndependent) {
  Instance tree(PeriodSet({30}), 3, {{0, {{0, 4}, {1, 4}}}, {0, {{0, 2}, {2, 2}}}},
                Topology{Topology::Kind::tree, {-1, 0, 0}});
  OffsetSchedule s = offset_schedule_tree(tree, CoreSchedule{{0, 0, 4, 0}});
  EXPECT_EQ(s.offset, (std::vector<Time>{0, 4, 2}));
  EXPECT_EQ(s.criteria.chains[0].latency, 8);
  EXPECT_EQ(s.criteria.chains[1].latency, 4);
}

TEST(Scattering, ValidationRejectsViolations) {
  Instance plain = make_instance({30}, 2, {{0, {{0, 2}, {1, 2}}}});
  EXPECT_THROW(validate_scattering(plain), InputError);
  EXPECT_THROW(validate_scattering(line3({{0, {{1, 2}, {2, 2}}}})), InputError);
  EXPECT_THROW(validate_scattering(line3({{0, {{0, 2}, {1, 3}}}})), InputError);
  EXPECT_THROW(validate_scattering(line3({{0, {{0, 2}, {2, 2}}}})), InputError);
  EXPECT_NO_THROW(validate_scattering(line3({{0, {{0, 2}, {1, 2}}}})));
}

TEST(SolveTheory, EqualWorkReachesTheLowerBound) {
  // Equal processing times everywhere: SE = n * p, the sum of the chain's work.
  Instance inst = line3({{0, {{0, 3}, {1, 3}, {2, 3}}}, {0, {{0, 3}, {1, 3}}}, {0, {{0, 3}}}}, {10, 30});
  TheoryResult r = solve_theory(inst);
  ASSERT_EQ(r.status, TheoryResult::Status::ok);
  ASSERT_TRUE(r.solution.has_value());
  EXPECT_TRUE(check_feasible(inst, r.solution->schedule).ok());
  for (int k = 0; k < inst.num_chains(); ++k) {
    EXPECT_EQ(r.solution->criteria.chains[static_cast<std::size_t>(k)].latency, 3 * inst.chain_length(k));
  }
}

TEST(SolveTheory, GeneratedInstancesKeepOffsetsMonotone) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (Topology::Kind kind : {Topology::Kind::line, Topology::Kind::tree}) {
      TheoryConfig cfg;
      cfg.kind = kind;
      cfg.gen = GenConfig::desk(Rational(9, 10), seed);
      Generated g = gen_theory(cfg);
      TheoryResult r = solve_theory(g.instance);
      if (r.status != TheoryResult::Status::ok) continue;
      const OffsetSchedule& s = *r.solution;
      EXPECT_TRUE(check_feasible(g.instance, s.schedule).ok());
      TreeView view = validate_scattering(g.instance);
      for (int m = 0; m < g.instance.num_resources(); ++m) {
        int p = view.parent[static_cast<std::size_t>(m)];
        if (p >= 0) {
          EXPECT_GE(s.offset[static_cast<std::size_t>(m)], s.offset[static_cast<std::size_t>(p)]);
        }
      }
    }
  }
}

}  // namespace
}  // namespace perisched
