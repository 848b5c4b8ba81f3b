#include "perisched/schedule.hpp"

#include <algorithm>
#include <sstream>

namespace perisched {

namespace {

std::string task_name(const Instance& instance, TaskId id) {
  const Task& t = instance.task(id);
  return std::to_string(t.chain + 1) + "." + std::to_string(t.index + 1);
}

void require_cover(const Instance& instance, std::size_t size, const char* what) {
  if (size != static_cast<std::size_t>(instance.num_tasks())) {
    throw InputError(std::string(what) + " does not cover every task of the instance");
  }
}

std::optional<Violation> capacity_violation(const Instance& instance,
                                            const std::vector<Time>& start) {
  Time hyper = instance.periods().hyperperiod();
  for (int m = 0; m < instance.num_resources(); ++m) {
    auto ids = instance.resource_tasks(m);
    for (std::size_t x = 0; x < ids.size(); ++x) {
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        TaskId a = ids[x];
        TaskId b = ids[y];
        if (instance.task(a).period > instance.task(b).period) std::swap(a, b);
        const Task& ta = instance.task(a);
        const Task& tb = instance.task(b);
        Time d = mod_floor(start[static_cast<std::size_t>(b)] - start[static_cast<std::size_t>(a)],
                           ta.period);
        if (d < ta.proc_time || ta.period - d < tb.proc_time) {
          Time at = start[static_cast<std::size_t>(b)] + (d < ta.proc_time ? 0 : ta.period - d);
          return Violation{Violation::Kind::capacity, a, b, mod_floor(at, hyper)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool periodic_overlap(Time a_start, Time a_len, Time a_period, Time b_start, Time b_len,
                      Time b_period) {
  if (a_period > b_period) {
    std::swap(a_start, b_start);
    std::swap(a_len, b_len);
    std::swap(a_period, b_period);
  }
  Time d = mod_floor(b_start - a_start, a_period);
  return d < a_len || a_period - d < b_len;
}

std::string FeasibilityVerdict::describe(const Instance& instance) const {
  if (!violation) return "ok";
  std::ostringstream out;
  const Violation& v = *violation;
  if (v.kind == Violation::Kind::precedence) {
    out << "precedence violated in chain " << instance.task(v.first).chain + 1 << ": task "
        << task_name(instance, v.second) << " starts before " << task_name(instance, v.first)
        << " completes at " << v.at;
  } else {
    out << "capacity violated on resource " << instance.task(v.first).resource + 1 << ": tasks "
        << task_name(instance, v.first) << " and " << task_name(instance, v.second)
        << " overlap at " << v.at;
  }
  return out.str();
}

FeasibilityVerdict check_feasible(const Instance& instance, const Schedule& schedule) {
  require_cover(instance, schedule.start.size(), "schedule");
  for (Time s : schedule.start) {
    if (s < 0) throw InputError("schedule holds a negative start time");
  }
  for (int k = 0; k < instance.num_chains(); ++k) {
    for (TaskId id = instance.first_task(k); id < instance.last_task(k); ++id) {
      Time end = schedule.start[static_cast<std::size_t>(id)] + instance.task(id).proc_time;
      if (schedule.start[static_cast<std::size_t>(id) + 1] < end) {
        return {Violation{Violation::Kind::precedence, id, id + 1, end}};
      }
    }
  }
  return {capacity_violation(instance, schedule.start)};
}

FeasibilityVerdict check_core(const Instance& instance, const CoreSchedule& core) {
  require_cover(instance, core.offset.size(), "core schedule");
  return {capacity_violation(instance, core.offset)};
}

CoreSchedule derive_core(const Instance& instance, const Schedule& schedule) {
  require_cover(instance, schedule.start.size(), "schedule");
  CoreSchedule core;
  core.offset.reserve(schedule.start.size());
  for (TaskId id = 0; id < instance.num_tasks(); ++id) {
    core.offset.push_back(mod_floor(schedule.start[static_cast<std::size_t>(id)],
                                    instance.task(id).period));
  }
  return core;
}

Postponed postpone_to_schedule(const Instance& instance, const CoreSchedule& core) {
  require_cover(instance, core.offset.size(), "core schedule");
  Postponed out;
  out.schedule.start.resize(core.offset.size());
  out.postponements.resize(core.offset.size());
  for (int k = 0; k < instance.num_chains(); ++k) {
    Time period = instance.chain_period(k);
    std::int64_t q = 0;
    for (TaskId id = instance.first_task(k); id <= instance.last_task(k); ++id) {
      Time sigma = core.offset[static_cast<std::size_t>(id)];
      if (sigma < 0 || sigma >= period) {
        throw InputError("core offset of task " + task_name(instance, id) + " out of range");
      }
      if (id != instance.first_task(k)) {
        Time prev_end = core.offset[static_cast<std::size_t>(id) - 1] + instance.task(id - 1).proc_time;
        if (prev_end > sigma + period) {
          q += 2;
        } else if (prev_end > sigma) {
          q += 1;
        }
      }
      out.postponements[static_cast<std::size_t>(id)] = q;
      out.schedule.start[static_cast<std::size_t>(id)] = sigma + q * period;
    }
  }
  return out;
}

std::int64_t degeneracy(Time latency, Time period) { return ceil_div(latency, period) - 1; }

std::int64_t alpha_degeneracy(Time latency, Time period, const Alpha& alpha) {
  // latency / (alpha * period) = latency * den / (num * period)
  Rational a = alpha.value();
  return ceil_div(latency * a.den(), a.num() * period) - 1;
}

std::vector<Time> chain_latencies(const Instance& instance, const Schedule& schedule) {
  require_cover(instance, schedule.start.size(), "schedule");
  std::vector<Time> out(static_cast<std::size_t>(instance.num_chains()));
  for (int k = 0; k < instance.num_chains(); ++k) {
    TaskId first = instance.first_task(k);
    TaskId last = instance.last_task(k);
    out[static_cast<std::size_t>(k)] = schedule.start[static_cast<std::size_t>(last)] +
                                       instance.task(last).proc_time -
                                       schedule.start[static_cast<std::size_t>(first)];
  }
  return out;
}

CriteriaReport compute_criteria(const Instance& instance, const Schedule& schedule,
                                const std::vector<Alpha>& alphas) {
  FeasibilityVerdict verdict = check_feasible(instance, schedule);
  if (!verdict.ok()) {
    throw InfeasibleSchedule(verdict, "cannot evaluate: " + verdict.describe(instance));
  }
  CriteriaReport report;
  report.alphas = alphas;
  report.alpha_sum.assign(alphas.size(), 0);
  report.alpha_max.assign(alphas.size(), 0);
  std::vector<Time> latencies = chain_latencies(instance, schedule);
  Time hyper = instance.periods().hyperperiod();
  std::int64_t longest_dg = 0;
  for (int k = 0; k < instance.num_chains(); ++k) {
    ChainCriteria c;
    c.latency = latencies[static_cast<std::size_t>(k)];
    Time period = instance.chain_period(k);
    c.degeneracy = degeneracy(c.latency, period);
    report.dg_sum += c.degeneracy;
    report.dg_max = std::max(report.dg_max, c.degeneracy);
    if (period == hyper) longest_dg += c.degeneracy;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      std::int64_t v = alpha_degeneracy(c.latency, period, alphas[a]);
      c.alpha_degeneracy.push_back(v);
      report.alpha_sum[a] += v;
      report.alpha_max[a] = std::max(report.alpha_max[a], v);
    }
    report.chains.push_back(std::move(c));
  }
  report.longest_period_share =
      report.dg_sum == 0 ? Rational(0) : Rational(100 * longest_dg, report.dg_sum);

  UtilizationReport util = utilization(instance);
  for (int m = 0; m < instance.num_resources(); ++m) {
    if (util.per_resource[static_cast<std::size_t>(m)] == util.max) {
      report.busiest_resource = m;
      break;
    }
  }
  if (util.max > Rational(0)) {
    Time busy = 0;
    for (TaskId id : instance.resource_tasks(report.busiest_resource)) {
      if (instance.task(id).period == hyper) busy += instance.task(id).proc_time;
    }
    report.longest_period_load = Rational(100) * Rational(busy, hyper) / util.max;
  }
  return report;
}

std::int64_t Criterion::chain_cost(Time latency, Time period) const {
  return kind == Kind::dg_alpha_sum ? alpha_degeneracy(latency, period, alpha)
                                    : degeneracy(latency, period);
}

std::int64_t Criterion::evaluate(const Instance& instance, const std::vector<Time>& latencies) const {
  std::int64_t acc = 0;
  for (int k = 0; k < instance.num_chains(); ++k) {
    acc = combine(acc, chain_cost(latencies[static_cast<std::size_t>(k)], instance.chain_period(k)));
  }
  return acc;
}

std::string Criterion::name() const {
  switch (kind) {
    case Kind::dg_sum: return "dgsum";
    case Kind::dg_max: return "dgmax";
    case Kind::dg_alpha_sum: return "dgalpha";
  }
  return "dgsum";
}

Criterion Criterion::parse(std::string_view name, std::optional<Alpha> alpha) {
  Criterion c;
  if (name == "dgsum") {
    c.kind = Kind::dg_sum;
  } else if (name == "dgmax") {
    c.kind = Kind::dg_max;
  } else if (name == "dgalpha") {
    c.kind = Kind::dg_alpha_sum;
  } else {
    throw InputError("unknown criterion '" + std::string(name) + "'");
  }
  if (alpha) c.alpha = *alpha;
  return c;
}

}  // namespace perisched
