#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "perisched/schedule.hpp"
#include "perisched/timeline.hpp"

namespace perisched {

using OrderedList = std::vector<TaskId>;

enum class Method { leftmost, predecessor };

Method parse_method(std::string_view name);
std::string_view method_name(Method method);

struct FfsOptions {
  Method method = Method::predecessor;
  // Unscheduled predecessor: start after the last task placed on the resource
  // instead of from 0.
  bool predecessor_tail = false;
};

struct InfeasibleAt {
  OrderedList order;
  TaskId task = 0;
  int position = 0;
};

struct FfsResult {
  std::optional<Schedule> schedule;
  std::optional<InfeasibleAt> failure;
  // Raw first-fit start per task, before postponement; -1 when unplaced.
  std::vector<Time> placement;
  bool ok() const { return schedule.has_value(); }
};

// Reusable per-resource timelines; one workspace per concurrent run.
class FfsWorkspace {
 public:
  FfsWorkspace() = default;
  explicit FfsWorkspace(const Instance& instance);
  void reset(const Instance& instance);
  ResourceTimeline& timeline(int m) { return timelines_[static_cast<std::size_t>(m)]; }

 private:
  PeriodSet periods_;
  std::vector<ResourceTimeline> timelines_;
};

// Throws InputError unless `order` is a permutation of the instance's tasks.
void require_permutation(const Instance& instance, std::span<const TaskId> order);

FfsResult ffs_run(const Instance& instance, std::span<const TaskId> order,
                  const FfsOptions& options, FfsWorkspace& workspace);
FfsResult ffs_run(const Instance& instance, std::span<const TaskId> order,
                  const FfsOptions& options = {});

}  // namespace perisched
