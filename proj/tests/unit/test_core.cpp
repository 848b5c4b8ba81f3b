#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace perisched {
namespace {

using testkit::make_instance;

TEST(PeriodSet, DerivesRowsAndMultipliers) {
  PeriodSet ps({40, 80, 240});
  EXPECT_EQ(ps.least(), 40);
  EXPECT_EQ(ps.hyperperiod(), 240);
  EXPECT_EQ(ps.rows(), 6);
  EXPECT_EQ(ps.multipliers(), (std::vector<Time>{2, 3}));
  EXPECT_EQ(ps.level_of(80), 1);
  EXPECT_EQ(ps.level_of(120), -1);
}

TEST(PeriodSet, RejectsNonHarmonicOrUnsorted) {
  EXPECT_THROW(PeriodSet({40, 100}), InputError);
  EXPECT_THROW(PeriodSet({80, 40}), InputError);
  EXPECT_THROW(PeriodSet({40, 40}), InputError);
  EXPECT_THROW(PeriodSet(std::vector<Time>{}), InputError);
}

TEST(Instance, RejectsOverload) {
  EXPECT_THROW(make_instance({10}, 1, {{0, {{0, 6}}}, {0, {{0, 5}}}}), InputError);
  EXPECT_NO_THROW(make_instance({10}, 1, {{0, {{0, 5}}}, {0, {{0, 5}}}}));
}

TEST(Instance, RejectsBadResourceOrLength) {
  EXPECT_THROW(make_instance({10}, 1, {{0, {{1, 1}}}}), InputError);
  EXPECT_THROW(make_instance({10}, 1, {{0, {{0, 11}}}}), InputError);
  EXPECT_THROW(make_instance({10}, 1, {{0, {{0, 0}}}}), InputError);
  EXPECT_THROW(make_instance({10}, 1, {{0, {}}}), InputError);
}

TEST(Utilization, MotivatingInstanceIsNearlyFull) {
  Instance inst = testkit::motivating_instance();
  UtilizationReport u = utilization(inst);
  ASSERT_EQ(u.per_resource.size(), 3u);
  for (const Rational& r : u.per_resource) EXPECT_EQ(r, Rational(23, 24));
  EXPECT_EQ(u.max.to_fixed(2), "0.96");
}

TEST(Utilization, EmptyResourceIsZero) {
  Instance inst = make_instance({10}, 2, {{0, {{0, 3}}}});
  EXPECT_EQ(inst.utilization(1), Rational(0));
  EXPECT_EQ(utilization(inst).max, Rational(3, 10));
}

TEST(Rational, ParsesAndOrders) {
  EXPECT_EQ(Rational::parse("0.75"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("2"), Rational(2));
  EXPECT_LT(Rational(2, 3), Rational(3, 4));
  EXPECT_EQ(Rational(1, 3).to_fixed(4), "0.3333");
  EXPECT_THROW(Rational::parse("x"), InputError);
  EXPECT_THROW(Alpha(Rational(3, 2)), InputError);
  EXPECT_THROW(Alpha(Rational(0)), InputError);
}

TEST(CheckFeasible, MotivatingScheduleIsFeasible) {
  Instance inst = testkit::motivating_instance();
  EXPECT_TRUE(check_feasible(inst, testkit::motivating_schedule()).ok());
}

TEST(CheckFeasible, IdenticalStartsCollide) {
  Instance inst = make_instance({10}, 1, {{0, {{0, 2}}}, {0, {{0, 3}}}});
  FeasibilityVerdict v = check_feasible(inst, Schedule{{4, 4}});
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violation->kind, Violation::Kind::capacity);
  EXPECT_FALSE(v.describe(inst).empty());
}

TEST(CheckFeasible, PrecedenceViolationNamesChain) {
  Instance inst = make_instance({10}, 2, {{0, {{0, 4}, {1, 4}}}});
  FeasibilityVerdict v = check_feasible(inst, Schedule{{0, 3}});
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violation->kind, Violation::Kind::precedence);
  EXPECT_EQ(v.violation->first, 0);
  EXPECT_EQ(v.violation->second, 1);
  EXPECT_TRUE(check_feasible(inst, Schedule{{0, 4}}).ok());
}

TEST(CheckFeasible, RejectsIncompleteOrNegative) {
  Instance inst = make_instance({10}, 1, {{0, {{0, 2}}}, {0, {{0, 3}}}});
  EXPECT_THROW(check_feasible(inst, Schedule{{0}}), InputError);
  EXPECT_THROW(check_feasible(inst, Schedule{{0, -3}}), InputError);
}

TEST(CheckFeasible, MatchesTimeExpansionOnRandomInstances) {
  Rng rng(11);
  testkit::RandomSpec spec;
  spec.max_hyperperiod = 2000;
  int feasible = 0;
  for (int n = 0; n < 200; ++n) {
    Instance inst = testkit::random_instance(rng, spec);
    Schedule s;
    if (n % 2 == 0) {
      auto core = testkit::random_feasible_core(inst, rng);
      if (!core) continue;
      s = postpone_to_schedule(inst, *core).schedule;
      // Nudge one start so that roughly half of these become infeasible.
      if (n % 4 == 0) s.start[rng() % s.start.size()] += 1;
    } else {
      s = testkit::random_starts(inst, rng, 3 * inst.periods().hyperperiod());
    }
    bool expected = testkit::expand_feasible(inst, s);
    feasible += expected;
    ASSERT_EQ(check_feasible(inst, s).ok(), expected) << "instance " << n;
  }
  EXPECT_GT(feasible, 20);
}

TEST(PeriodicOverlap, MatchesExpansionOnSmallGrid) {
  for (Time ta : {4, 8, 12}) {
    for (Time tb : {4, 8, 12, 24}) {
      if (std::max(ta, tb) % std::min(ta, tb) != 0) continue;
      Time h = std::max(ta, tb);
      for (Time pa = 1; pa <= ta; ++pa) {
        for (Time pb = 1; pb <= tb; ++pb) {
          for (Time sa = 0; sa < ta; sa += 1) {
            for (Time sb = 0; sb < 2 * tb; sb += 3) {
              std::vector<int> cells(static_cast<std::size_t>(h), 0);
              for (Time base = sa; base < sa + h; base += ta)
                for (Time u = 0; u < pa; ++u) cells[static_cast<std::size_t>((base + u) % h)] |= 1;
              bool hit = false;
              for (Time base = sb; base < sb + h; base += tb)
                for (Time u = 0; u < pb; ++u) hit = hit || (cells[static_cast<std::size_t>((base + u) % h)] & 1);
              ASSERT_EQ(periodic_overlap(sa, pa, ta, sb, pb, tb), hit)
                  << sa << ' ' << pa << ' ' << ta << ' ' << sb << ' ' << pb << ' ' << tb;
            }
          }
        }
      }
    }
  }
}

TEST(Postpone, BackToBackStaysInPeriod) {
  Instance inst = make_instance({40}, 2, {{0, {{0, 10}, {1, 5}}}});
  Postponed p = postpone_to_schedule(inst, CoreSchedule{{0, 10}});
  EXPECT_EQ(p.postponements[1], 0);
  EXPECT_EQ(p.schedule.start[1], 10);
}

TEST(Postpone, WrapsIntoNextPeriod) {
  Instance inst = make_instance({40}, 2, {{0, {{0, 20}, {1, 5}}}});
  Postponed p = postpone_to_schedule(inst, CoreSchedule{{30, 10}});
  EXPECT_EQ(p.postponements[1], 1);
  EXPECT_EQ(p.schedule.start[1], 50);
}

TEST(Postpone, RejectsResidueOutOfRange) {
  Instance inst = make_instance({40}, 1, {{0, {{0, 20}}}});
  EXPECT_THROW(postpone_to_schedule(inst, CoreSchedule{{40}}), InputError);
  EXPECT_THROW(postpone_to_schedule(inst, CoreSchedule{{-1}}), InputError);
}

TEST(Postpone, MatchesCaseRuleAndIsFeasible) {
  Rng rng(5);
  testkit::RandomSpec spec;
  spec.max_hyperperiod = 2000;
  int checked = 0;
  for (int n = 0; n < 400 && checked < 150; ++n) {
    Instance inst = testkit::random_instance(rng, spec);
    auto core = testkit::random_feasible_core(inst, rng);
    if (!core) continue;
    Postponed p = postpone_to_schedule(inst, *core);
    EXPECT_EQ(p.postponements, testkit::postponement_counts(inst, *core));
    EXPECT_TRUE(testkit::expand_feasible(inst, p.schedule));
    for (TaskId id = 0; id < inst.num_tasks(); ++id) {
      EXPECT_EQ(mod_floor(p.schedule.start[static_cast<std::size_t>(id)], inst.task(id).period),
                core->offset[static_cast<std::size_t>(id)]);
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

// q of the last task and DG can differ by one in either direction; the exact
// link is DG = q_n + ceil((sigma_n + p_n - sigma_1) / T) - 1.
TEST(Postpone, LastPostponementVersusDegeneracy) {
  Instance a = make_instance({40}, 2, {{0, {{0, 10}, {1, 5}}}});
  Postponed pa = postpone_to_schedule(a, CoreSchedule{{10, 0}});
  EXPECT_EQ(pa.postponements[1], 1);
  EXPECT_EQ(compute_criteria(a, pa.schedule).chains[0].degeneracy, 0);

  Instance b = make_instance({15}, 2, {{0, {{0, 5}, {1, 10}}}});
  Postponed pb = postpone_to_schedule(b, CoreSchedule{{0, 10}});
  EXPECT_EQ(pb.postponements[1], 0);
  EXPECT_EQ(compute_criteria(b, pb.schedule).chains[0].degeneracy, 1);

  Rng rng(17);
  testkit::RandomSpec spec;
  spec.max_hyperperiod = 2000;
  for (int n = 0; n < 150; ++n) {
    Instance inst = testkit::random_instance(rng, spec);
    auto core = testkit::random_feasible_core(inst, rng);
    if (!core) continue;
    Postponed p = postpone_to_schedule(inst, *core);
    CriteriaReport report = compute_criteria(inst, p.schedule);
    for (int k = 0; k < inst.num_chains(); ++k) {
      TaskId first = inst.first_task(k);
      TaskId last = inst.last_task(k);
      Time t = inst.chain_period(k);
      std::int64_t q = p.postponements[static_cast<std::size_t>(last)];
      Time tail = core->offset[static_cast<std::size_t>(last)] + inst.task(last).proc_time -
                  core->offset[static_cast<std::size_t>(first)];
      std::int64_t dg = report.chains[static_cast<std::size_t>(k)].degeneracy;
      EXPECT_EQ(dg, q + ceil_div(tail, t) - 1);
      EXPECT_LE(std::abs(dg - q), 1);
    }
  }
}

TEST(Postpone, RoundTripOnTightSchedules) {
  Rng rng(23);
  testkit::RandomSpec spec;
  spec.max_hyperperiod = 2000;
  for (int n = 0; n < 150; ++n) {
    Instance inst = testkit::random_instance(rng, spec);
    auto core = testkit::random_feasible_core(inst, rng);
    if (!core) continue;
    // Postponed schedules are tight: every gap is shorter than the period.
    Schedule tight = postpone_to_schedule(inst, *core).schedule;
    for (int k = 0; k < inst.num_chains(); ++k) {
      Time shift = inst.chain_period(k) * static_cast<Time>(rng() % 3);
      for (TaskId id = inst.first_task(k); id <= inst.last_task(k); ++id) tight.start[static_cast<std::size_t>(id)] += shift;
    }
    Schedule again = postpone_to_schedule(inst, derive_core(inst, tight)).schedule;
    EXPECT_EQ(compute_criteria(inst, again).dg_sum, compute_criteria(inst, tight).dg_sum);
    // Stretching a gap by whole periods keeps the core but can only lengthen S.
    Schedule loose = tight;
    TaskId last = inst.last_task(0);
    loose.start[static_cast<std::size_t>(last)] += 2 * inst.chain_period(0);
    Schedule rebuilt = postpone_to_schedule(inst, derive_core(inst, loose)).schedule;
    EXPECT_LE(compute_criteria(inst, rebuilt).dg_sum, compute_criteria(inst, loose).dg_sum);
  }
}

TEST(Criteria, MotivatingScheduleHasTwoDegenerateChains) {
  Instance inst = testkit::motivating_instance();
  CriteriaReport r = compute_criteria(inst, testkit::motivating_schedule());
  EXPECT_EQ(r.chains[0].degeneracy, 1);
  EXPECT_EQ(r.chains[2].degeneracy, 1);
  EXPECT_EQ(r.dg_sum, 2);
  EXPECT_EQ(r.dg_max, 1);
  // No hyperperiod chain is degenerate.
  EXPECT_EQ(r.longest_period_share, Rational(0));
}

TEST(Criteria, SingleTaskChainIsNeverDegenerate) {
  Instance inst = make_instance({10, 20}, 1, {{1, {{0, 20}}}});
  CriteriaReport r = compute_criteria(inst, Schedule{{7}}, {Alpha(Rational(1))});
  EXPECT_EQ(r.chains[0].latency, 20);
  EXPECT_EQ(r.chains[0].degeneracy, 0);
  EXPECT_EQ(r.chains[0].alpha_degeneracy[0], 0);
}

TEST(Criteria, AlphaCeilingAtBoundary) {
  Alpha a(Rational(3, 4));
  EXPECT_EQ(degeneracy(60, 80), 0);
  EXPECT_EQ(alpha_degeneracy(60, 80, a), 0);
  EXPECT_EQ(alpha_degeneracy(61, 80, a), 1);
  EXPECT_EQ(degeneracy(80, 80), 0);
  EXPECT_EQ(degeneracy(81, 80), 1);
}

TEST(Criteria, AlphaDegeneracyAgainstDirectSearch) {
  std::vector<Rational> alphas{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4),
                               Rational(9, 10), Rational(1)};
  for (Time t : {1, 7, 12, 80}) {
    for (Time se = 1; se <= 6 * t; ++se) {
      std::int64_t previous = std::numeric_limits<std::int64_t>::max();
      for (const Rational& r : alphas) {
        // Least d with se <= (d + 1) * alpha * t, by counting.
        std::int64_t d = 0;
        while (Rational(se) > Rational(d + 1) * r * Rational(t)) ++d;
        std::int64_t got = alpha_degeneracy(se, t, Alpha(r));
        ASSERT_EQ(got, d) << se << ' ' << t;
        ASSERT_LE(got, previous);
        ASSERT_GE(got, degeneracy(se, t));
        previous = got;
      }
      ASSERT_EQ(alpha_degeneracy(se, t, Alpha(Rational(1))), degeneracy(se, t));
    }
  }
}

TEST(Criteria, RefusesInfeasibleSchedule) {
  Instance inst = make_instance({10}, 1, {{0, {{0, 2}}}, {0, {{0, 3}}}});
  EXPECT_THROW(compute_criteria(inst, Schedule{{0, 0}}), InfeasibleSchedule);
}

TEST(Criteria, LongestPeriodDiagnostics) {
  // Both resources carry 2/5; the tie goes to resource 0.
  Instance inst = make_instance({10, 20}, 2,
                                {{0, {{0, 1}, {1, 3}}}, {1, {{0, 1}, {1, 2}}}, {1, {{0, 5}}}});
  // Chain 0 spans 0..13 (DG 1); chain 1 spans 12..26 (DG 0).
  Schedule s{{0, 10, 12, 24, 14}};
  CriteriaReport r = compute_criteria(inst, s);
  EXPECT_EQ(r.dg_sum, 1);
  EXPECT_EQ(r.longest_period_share, Rational(0));
  EXPECT_EQ(r.busiest_resource, 0);
  EXPECT_EQ(r.longest_period_load, Rational(100) * (Rational(1, 20) + Rational(5, 20)) / Rational(2, 5));

  // Make chain 1 degenerate as well: share becomes 50%.
  Schedule s2{{0, 10, 2, 24, 14}};
  CriteriaReport r2 = compute_criteria(inst, s2);
  EXPECT_EQ(r2.dg_sum, 2);
  EXPECT_EQ(r2.longest_period_share, Rational(50));
}

TEST(Criteria, LatencyAtLeastWork) {
  Rng rng(29);
  testkit::RandomSpec spec;
  spec.max_hyperperiod = 1000;
  for (int n = 0; n < 100; ++n) {
    Instance inst = testkit::random_instance(rng, spec);
    auto core = testkit::random_feasible_core(inst, rng);
    if (!core) continue;
    CriteriaReport r = compute_criteria(inst, postpone_to_schedule(inst, *core).schedule);
    for (int k = 0; k < inst.num_chains(); ++k) {
      Time work = 0;
      for (const TaskSpec& t : inst.chain(k).tasks) work += t.proc_time;
      EXPECT_GE(r.chains[static_cast<std::size_t>(k)].latency, work);
      EXPECT_GE(r.chains[static_cast<std::size_t>(k)].degeneracy, 0);
    }
  }
}

TEST(CriterionSelector, ParsesAndCombines) {
  EXPECT_EQ(Criterion::parse("dgsum").kind, Criterion::Kind::dg_sum);
  EXPECT_EQ(Criterion::parse("dgmax").kind, Criterion::Kind::dg_max);
  Criterion a = Criterion::parse("dgalpha", Alpha(Rational(1, 2)));
  EXPECT_EQ(a.kind, Criterion::Kind::dg_alpha_sum);
  EXPECT_EQ(a.chain_cost(41, 40), 2);
  EXPECT_THROW(Criterion::parse("makespan"), InputError);
  Criterion mx = Criterion::parse("dgmax");
  EXPECT_EQ(mx.combine(mx.combine(0, 3), 1), 3);
}

}  // namespace
}  // namespace perisched
