#pragma once

#include <optional>
#include <span>
#include <vector>

#include "perisched/types.hpp"

namespace perisched {

// Ascending harmonic periods: each divides the next.
class PeriodSet {
 public:
  PeriodSet() = default;
  explicit PeriodSet(std::vector<Time> periods);

  int size() const { return static_cast<int>(periods_.size()); }
  Time period(int level) const { return periods_[static_cast<std::size_t>(level)]; }
  std::span<const Time> periods() const { return periods_; }
  Time least() const { return periods_.front(); }
  Time hyperperiod() const { return periods_.back(); }
  // Number of rows of width least() in one hyperperiod.
  Time rows() const { return hyperperiod() / least(); }
  // Ratios T_l / T_{l-1} for l = 1..size()-1.
  std::vector<Time> multipliers() const;
  // Level index of `period`, or -1.
  int level_of(Time period) const;

  friend bool operator==(const PeriodSet&, const PeriodSet&) = default;

 private:
  std::vector<Time> periods_;
};

struct TaskSpec {
  int resource = 0;  // 0-based
  Time proc_time = 0;
  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct ChainSpec {
  int period_level = 0;  // 0-based index into the PeriodSet
  std::vector<TaskSpec> tasks;
  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

// Optional structural metadata; parent[r] == -1 marks the root resource.
struct Topology {
  enum class Kind { line, tree };
  Kind kind = Kind::line;
  std::vector<int> parent;
  friend bool operator==(const Topology&, const Topology&) = default;
};

struct Task {
  int chain = 0;
  int index = 0;  // position inside the chain, 0-based
  int resource = 0;
  Time proc_time = 0;
  int level = 0;
  Time period = 0;
};

// Immutable validated instance. Tasks are numbered chain by chain.
class Instance {
 public:
  Instance() = default;
  Instance(PeriodSet periods, int num_resources, std::vector<ChainSpec> chains,
           std::optional<Topology> topology = std::nullopt);

  const PeriodSet& periods() const { return periods_; }
  int num_resources() const { return num_resources_; }
  int num_chains() const { return static_cast<int>(chains_.size()); }
  int num_tasks() const { return static_cast<int>(tasks_.size()); }

  const Task& task(TaskId id) const { return tasks_[static_cast<std::size_t>(id)]; }
  std::span<const Task> tasks() const { return tasks_; }

  const ChainSpec& chain(int k) const { return chains_[static_cast<std::size_t>(k)]; }
  std::span<const ChainSpec> chains() const { return chains_; }
  TaskId first_task(int k) const { return chain_first_[static_cast<std::size_t>(k)]; }
  TaskId last_task(int k) const { return first_task(k) + chain_length(k) - 1; }
  int chain_length(int k) const { return static_cast<int>(chain(k).tasks.size()); }
  Time chain_period(int k) const { return periods_.period(chain(k).period_level); }
  TaskId task_id(int k, int index) const { return first_task(k) + index; }

  std::span<const TaskId> resource_tasks(int m) const {
    return by_resource_[static_cast<std::size_t>(m)];
  }
  // Busy fraction of resource m.
  Rational utilization(int m) const;

  const std::optional<Topology>& topology() const { return topology_; }

 private:
  PeriodSet periods_;
  int num_resources_ = 0;
  std::vector<ChainSpec> chains_;
  std::optional<Topology> topology_;
  std::vector<Task> tasks_;
  std::vector<TaskId> chain_first_;
  std::vector<std::vector<TaskId>> by_resource_;
};

struct UtilizationReport {
  std::vector<Rational> per_resource;
  Rational max;
};

UtilizationReport utilization(const Instance& instance);

}  // namespace perisched
