#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "perisched/schedule.hpp"
#include "perisched/timeline.hpp"

namespace perisched {

struct MatheurConfig {
  int target_level = -1;  // -1 sweeps levels from longest to shortest period
  int max_free_tasks = 500;
  int chunk_chains = 4;
  double iteration_time_limit_s = 10.0;  // non-positive: unlimited
  double time_limit_s = 60.0;            // non-positive: unlimited
  std::int64_t node_limit = 0;  // per window; 0 means unbounded
  Criterion criterion;
};

// Re-placement problem for the chains of one period; every other task is fixed.
struct ReoptWindow {
  int level = 0;
  Time period = 0;
  std::vector<Time> origin;             // per resource
  std::vector<CyclicBitmap> fixed;      // per resource, residues modulo `period`
  std::vector<int> free_chains;         // branching order
  std::vector<TaskId> free_tasks;
  std::vector<Time> incumbent_residue;  // per task id; meaningful for free tasks
  std::vector<std::int64_t> degeneracy; // per chain, incumbent snapshot
};

// `chains` restricts the free set to a subset of the level's chains.
ReoptWindow build_window(const Instance& instance, const Schedule& schedule, int level,
                         std::optional<std::vector<int>> chains = std::nullopt);

struct ReoptOutcome {
  bool improved = false;
  bool complete = false;  // search space exhausted: result is optimal for the window
  Schedule schedule;
  std::int64_t before = 0;  // configured criterion, whole instance
  std::int64_t after = 0;
  std::int64_t nodes = 0;
};

ReoptOutcome reopt_period(const Instance& instance, const Schedule& schedule,
                          const ReoptWindow& window, const MatheurConfig& config);

struct ReoptLogRow {
  int level = 0;
  int chunk = 0;  // 0: whole window; otherwise 1-based chunk number
  std::int64_t delta_dg_sum = 0;
  std::int64_t elapsed_ms = 0;
};

struct SweepResult {
  Schedule schedule;
  std::vector<ReoptLogRow> log;
  bool improved = false;
};

SweepResult reopt_sweep(const Instance& instance, const Schedule& schedule,
                        const MatheurConfig& config);

}  // namespace perisched
