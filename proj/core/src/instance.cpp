#include "perisched/instance.hpp"

#include <algorithm>
#include <string>

namespace perisched {

PeriodSet::PeriodSet(std::vector<Time> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) throw InputError("period set is empty");
  if (periods_.front() <= 0) throw InputError("periods must be positive");
  for (std::size_t l = 1; l < periods_.size(); ++l) {
    if (periods_[l] <= periods_[l - 1]) throw InputError("periods must be strictly ascending");
    if (periods_[l] % periods_[l - 1] != 0) throw InputError("periods are not harmonic");
  }
}

std::vector<Time> PeriodSet::multipliers() const {
  std::vector<Time> out;
  for (std::size_t l = 1; l < periods_.size(); ++l) out.push_back(periods_[l] / periods_[l - 1]);
  return out;
}

int PeriodSet::level_of(Time period) const {
  auto it = std::find(periods_.begin(), periods_.end(), period);
  return it == periods_.end() ? -1 : static_cast<int>(it - periods_.begin());
}

Instance::Instance(PeriodSet periods, int num_resources, std::vector<ChainSpec> chains,
                   std::optional<Topology> topology)
    : periods_(std::move(periods)),
      num_resources_(num_resources),
      chains_(std::move(chains)),
      topology_(std::move(topology)) {
  if (periods_.size() == 0) throw InputError("instance without periods");
  if (num_resources_ < 1) throw InputError("instance needs at least one resource");
  by_resource_.resize(static_cast<std::size_t>(num_resources_));
  for (int k = 0; k < num_chains(); ++k) {
    const ChainSpec& spec = chains_[static_cast<std::size_t>(k)];
    if (spec.period_level < 0 || spec.period_level >= periods_.size()) {
      throw InputError("chain " + std::to_string(k + 1) + ": period index out of range");
    }
    if (spec.tasks.empty()) throw InputError("chain " + std::to_string(k + 1) + " has no tasks");
    Time period = periods_.period(spec.period_level);
    chain_first_.push_back(static_cast<TaskId>(tasks_.size()));
    for (int i = 0; i < static_cast<int>(spec.tasks.size()); ++i) {
      const TaskSpec& t = spec.tasks[static_cast<std::size_t>(i)];
      std::string where = "task " + std::to_string(k + 1) + "." + std::to_string(i + 1);
      if (t.resource < 0 || t.resource >= num_resources_) {
        throw InputError(where + ": resource out of range");
      }
      if (t.proc_time < 1 || t.proc_time > period) {
        throw InputError(where + ": processing time must lie in [1, period]");
      }
      by_resource_[static_cast<std::size_t>(t.resource)].push_back(
          static_cast<TaskId>(tasks_.size()));
      tasks_.push_back({k, i, t.resource, t.proc_time, spec.period_level, period});
    }
  }
  for (int m = 0; m < num_resources_; ++m) {
    if (utilization(m) > Rational(1)) {
      throw InputError("resource " + std::to_string(m + 1) + " is over-utilized");
    }
  }
  if (topology_ && static_cast<int>(topology_->parent.size()) != num_resources_) {
    throw InputError("topology parent list must have one entry per resource");
  }
}

Rational Instance::utilization(int m) const {
  // Sum over a common denominator to stay exact without intermediate overflow.
  Time hyper = periods_.hyperperiod();
  Time busy = 0;
  for (TaskId id : resource_tasks(m)) busy += task(id).proc_time * (hyper / task(id).period);
  return {busy, hyper};
}

UtilizationReport utilization(const Instance& instance) {
  UtilizationReport report;
  for (int m = 0; m < instance.num_resources(); ++m) {
    report.per_resource.push_back(instance.utilization(m));
    report.max = std::max(report.max, report.per_resource.back());
  }
  return report;
}

}  // namespace perisched
