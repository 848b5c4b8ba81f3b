#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perisched/instance.hpp"

namespace perisched {

// Start time of the first occurrence of every task, indexed by TaskId.
struct Schedule {
  std::vector<Time> start;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Start residues sigma in [0, period), indexed by TaskId.
struct CoreSchedule {
  std::vector<Time> offset;
  friend bool operator==(const CoreSchedule&, const CoreSchedule&) = default;
};

struct Violation {
  enum class Kind { precedence, capacity };
  Kind kind = Kind::capacity;
  TaskId first = 0;
  TaskId second = 0;
  // Precedence: completion of `first`. Capacity: a time both occurrences cover.
  Time at = 0;
};

struct FeasibilityVerdict {
  std::optional<Violation> violation;
  bool ok() const { return !violation.has_value(); }
  std::string describe(const Instance& instance) const;
};

class InfeasibleSchedule : public std::runtime_error {
 public:
  InfeasibleSchedule(FeasibilityVerdict verdict, const std::string& what)
      : std::runtime_error(what), verdict_(std::move(verdict)) {}
  const FeasibilityVerdict& verdict() const { return verdict_; }

 private:
  FeasibilityVerdict verdict_;
};

// True iff some occurrence of [a_start, +a_len) every a_period overlaps some
// occurrence of [b_start, +b_len) every b_period. Periods must be harmonic.
bool periodic_overlap(Time a_start, Time a_len, Time a_period, Time b_start, Time b_len,
                      Time b_period);

// Throws InputError when `schedule` does not cover every task.
FeasibilityVerdict check_feasible(const Instance& instance, const Schedule& schedule);
// Capacity only, on the residues.
FeasibilityVerdict check_core(const Instance& instance, const CoreSchedule& core);

CoreSchedule derive_core(const Instance& instance, const Schedule& schedule);

struct Postponed {
  Schedule schedule;
  std::vector<std::int64_t> postponements;  // q per task
};

// Throws InputError for residues outside [0, period).
Postponed postpone_to_schedule(const Instance& instance, const CoreSchedule& core);

// ceil(latency / period) - 1.
std::int64_t degeneracy(Time latency, Time period);
// ceil(latency / (alpha * period)) - 1.
std::int64_t alpha_degeneracy(Time latency, Time period, const Alpha& alpha);

struct ChainCriteria {
  Time latency = 0;
  std::int64_t degeneracy = 0;
  std::vector<std::int64_t> alpha_degeneracy;  // one per configured alpha
};

struct CriteriaReport {
  std::vector<Alpha> alphas;
  std::vector<ChainCriteria> chains;
  std::int64_t dg_sum = 0;
  std::int64_t dg_max = 0;
  std::vector<std::int64_t> alpha_sum;
  std::vector<std::int64_t> alpha_max;
  // Percentage of dg_sum carried by hyperperiod chains; 0 when dg_sum == 0.
  Rational longest_period_share;
  // Hyperperiod share of the utilization of the busiest resource (lowest index on ties).
  Rational longest_period_load;
  int busiest_resource = 0;
};

// Latency per chain; no feasibility check.
std::vector<Time> chain_latencies(const Instance& instance, const Schedule& schedule);

// Throws InfeasibleSchedule when `schedule` is infeasible.
CriteriaReport compute_criteria(const Instance& instance, const Schedule& schedule,
                                const std::vector<Alpha>& alphas = {});

// Objective selector shared by the optimizers.
struct Criterion {
  enum class Kind { dg_sum, dg_max, dg_alpha_sum };
  Kind kind = Kind::dg_sum;
  Alpha alpha;

  std::int64_t chain_cost(Time latency, Time period) const;
  bool is_sum() const { return kind != Kind::dg_max; }
  std::int64_t combine(std::int64_t acc, std::int64_t cost) const {
    return is_sum() ? acc + cost : (cost > acc ? cost : acc);
  }
  std::int64_t evaluate(const Instance& instance, const std::vector<Time>& latencies) const;
  std::int64_t evaluate(const Instance& instance, const Schedule& schedule) const {
    return evaluate(instance, chain_latencies(instance, schedule));
  }
  std::string name() const;
  static Criterion parse(std::string_view name, std::optional<Alpha> alpha = std::nullopt);
};

}  // namespace perisched
