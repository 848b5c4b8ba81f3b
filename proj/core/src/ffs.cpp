#include "perisched/ffs.hpp"

#include <string>

namespace perisched {

Method parse_method(std::string_view name) {
  if (name == "leftmost") return Method::leftmost;
  if (name == "predecessor") return Method::predecessor;
  throw InputError("unknown ffs method '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  return method == Method::leftmost ? "leftmost" : "predecessor";
}

FfsWorkspace::FfsWorkspace(const Instance& instance) { reset(instance); }

void FfsWorkspace::reset(const Instance& instance) {
  if (!(periods_ == instance.periods()) ||
      static_cast<int>(timelines_.size()) != instance.num_resources()) {
    periods_ = instance.periods();
    timelines_.assign(static_cast<std::size_t>(instance.num_resources()), ResourceTimeline(periods_));
    return;
  }
  for (auto& t : timelines_) t.clear();
}

void require_permutation(const Instance& instance, std::span<const TaskId> order) {
  if (static_cast<int>(order.size()) != instance.num_tasks()) {
    throw InputError("ordered list length differs from the number of tasks");
  }
  std::vector<char> seen(order.size(), 0);
  for (TaskId id : order) {
    if (id < 0 || id >= instance.num_tasks() || seen[static_cast<std::size_t>(id)]) {
      throw InputError("ordered list is not a permutation of the tasks");
    }
    seen[static_cast<std::size_t>(id)] = 1;
  }
}

FfsResult ffs_run(const Instance& instance, std::span<const TaskId> order,
                  const FfsOptions& options, FfsWorkspace& workspace) {
#ifndef NDEBUG
  require_permutation(instance, order);
#endif
  workspace.reset(instance);
  FfsResult result;
  result.placement.assign(static_cast<std::size_t>(instance.num_tasks()), -1);
  std::vector<Time> resource_tail(static_cast<std::size_t>(instance.num_resources()), -1);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    TaskId id = order[pos];
    const Task& task = instance.task(id);
    Time from = 0;
    if (options.method == Method::predecessor) {
      if (task.index > 0 && result.placement[static_cast<std::size_t>(id) - 1] >= 0) {
        from = result.placement[static_cast<std::size_t>(id) - 1] + instance.task(id - 1).proc_time;
      } else if (options.predecessor_tail) {
        from = std::max<Time>(0, resource_tail[static_cast<std::size_t>(task.resource)]);
      }
    }
    ResourceTimeline& timeline = workspace.timeline(task.resource);
    std::optional<Time> start = timeline.earliest_fit(task.level, task.proc_time, from);
    if (!start) {
      result.failure = InfeasibleAt{OrderedList(order.begin(), order.end()), id,
                                    static_cast<int>(pos)};
      return result;
    }
    timeline.place(task.level, *start, task.proc_time);
    result.placement[static_cast<std::size_t>(id)] = *start;
    resource_tail[static_cast<std::size_t>(task.resource)] = *start + task.proc_time;
  }
  CoreSchedule core;
  core.offset.reserve(result.placement.size());
  for (TaskId id = 0; id < instance.num_tasks(); ++id) {
    core.offset.push_back(mod_floor(result.placement[static_cast<std::size_t>(id)],
                                    instance.task(id).period));
  }
  result.schedule = postpone_to_schedule(instance, core).schedule;
  return result;
}

FfsResult ffs_run(const Instance& instance, std::span<const TaskId> order,
                  const FfsOptions& options) {
  require_permutation(instance, order);
  FfsWorkspace workspace(instance);
  return ffs_run(instance, order, options, workspace);
}

}  // namespace perisched
