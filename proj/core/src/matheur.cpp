#include "perisched/matheur.hpp"

#include <algorithm>
#include <limits>

#include "perisched/packing.hpp"

namespace perisched {

namespace {

using Clock = std::chrono::steady_clock;

// Non-positive limits never expire.
Clock::time_point deadline_after(Clock::time_point from, double seconds) {
  if (seconds <= 0) return Clock::time_point::max();
  return from + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

std::int64_t dg_sum(const Instance& instance, const Schedule& schedule) {
  std::vector<Time> lat = chain_latencies(instance, schedule);
  std::int64_t sum = 0;
  for (int k = 0; k < instance.num_chains(); ++k) {
    sum += degeneracy(lat[static_cast<std::size_t>(k)], instance.chain_period(k));
  }
  return sum;
}

// Largest latency whose cost under `criterion` is at most `budget`.
Time max_latency_for(const Criterion& criterion, std::int64_t budget, Time period) {
  if (criterion.kind == Criterion::Kind::dg_alpha_sum) {
    Rational a = criterion.alpha.value();
    return floor_div((budget + 1) * a.num() * period, a.den());
  }
  return (budget + 1) * period;
}

class WindowSolver {
 public:
  WindowSolver(const Instance& instance, const ReoptWindow& window, const MatheurConfig& config,
               std::int64_t incumbent, std::int64_t floor)
      : instance_(instance),
        window_(window),
        config_(config),
        occupancy_(window.fixed),
        residue_(window.incumbent_residue),
        best_residue_(window.incumbent_residue),
        best_(incumbent),
        floor_(floor),
        deadline_(deadline_after(Clock::now(), config.iteration_time_limit_s)) {
    for (int k : window.free_chains) {
      cap_.push_back(config.criterion.is_sum()
                         ? (window.degeneracy[static_cast<std::size_t>(k)] + 1) * window.period
                         : std::numeric_limits<Time>::max());
    }
  }

  void solve() {
    if (best_ > floor_) dfs(0, 0, 0, 0);
    complete_ = !aborted_;
  }

  bool improved() const { return improved_; }
  bool complete() const { return complete_; }
  std::int64_t best() const { return best_; }
  std::int64_t nodes() const { return nodes_; }
  const std::vector<Time>& best_residue() const { return best_residue_; }

 private:
  bool tick() {
    ++nodes_;
    if (config_.node_limit > 0 && nodes_ > config_.node_limit) aborted_ = true;
    if ((nodes_ & 1023) == 0 && Clock::now() > deadline_) aborted_ = true;
    return !aborted_;
  }

  // Latest admissible latency for the chain at `pos` given the accumulated cost.
  Time latency_cap(std::size_t pos, std::int64_t acc) const {
    std::int64_t budget = config_.criterion.is_sum() ? best_ - 1 - acc : best_ - 1;
    if (budget < 0 || (!config_.criterion.is_sum() && acc > best_ - 1)) return -1;
    return std::min(cap_[pos], max_latency_for(config_.criterion, budget, window_.period));
  }

  void place(TaskId id, Time r) {
    occupancy_[static_cast<std::size_t>(instance_.task(id).resource)].set(r, instance_.task(id).proc_time);
    residue_[static_cast<std::size_t>(id)] = r;
  }
  void unplace(TaskId id) {
    occupancy_[static_cast<std::size_t>(instance_.task(id).resource)].reset(
        residue_[static_cast<std::size_t>(id)], instance_.task(id).proc_time);
  }

  // Calls visit(offset) for each offset d in [0, limit] at which `id` fits at
  // base + d, in increasing order; stops when visit returns false.
  template <typename Visit>
  void scan(TaskId id, Time base, Time limit, Visit visit) {
    const Task& t = instance_.task(id);
    const CyclicBitmap& map = occupancy_[static_cast<std::size_t>(t.resource)];
    Time period = window_.period;
    limit = std::min(limit, period - 1);
    Time d = 0;
    while (d <= limit && !aborted_) {
      Time blocked = map.first_set(base + d, t.proc_time);
      if (blocked == t.proc_time) {
        if (!visit(d)) return;
        ++d;
        continue;
      }
      Time run = map.first_clear(base + d + blocked, period);
      if (run == period) return;
      d += blocked + run;
    }
  }

  void dfs(std::size_t pos, int index, Time latency, std::int64_t acc) {
    if (aborted_) return;
    if (pos == window_.free_chains.size()) {
      if (acc < best_) {
        best_ = acc;
        best_residue_ = residue_;
        improved_ = true;
      }
      return;
    }
    int k = window_.free_chains[pos];
    Time cap = latency_cap(pos, acc);
    if (cap < 0) return;
    TaskId id = instance_.task_id(k, index);
    const Task& t = instance_.task(id);
    bool last = id == instance_.last_task(k);
    auto descend = [&](Time r, Time new_latency) {
      if (!tick()) return false;
      place(id, r);
      if (last) {
        std::int64_t cost = config_.criterion.chain_cost(new_latency, window_.period);
        dfs(pos + 1, 0, 0, config_.criterion.combine(acc, cost));
      } else {
        dfs(pos, index + 1, new_latency, acc);
      }
      unplace(id);
      // Stop once nothing better than the floor can exist.
      return !aborted_ && best_ > floor_ && latency_cap(pos, acc) >= 0;
    };
    if (index == 0) {
      Time start = window_.incumbent_residue[static_cast<std::size_t>(id)];
      scan(id, start, window_.period - 1, [&](Time d) {
        return descend(mod_floor(start + d, window_.period), t.proc_time);
      });
      return;
    }
    Time prev_end = residue_[static_cast<std::size_t>(id) - 1] + instance_.task(id - 1).proc_time;
    Time rest = 0;
    for (TaskId j = id; j <= instance_.last_task(k); ++j) rest += instance_.task(j).proc_time;
    Time slack = cap - latency - rest;
    if (slack < 0) return;
    scan(id, prev_end, slack, [&](Time d) {
      Time new_latency = latency + d + t.proc_time;
      if (new_latency + (rest - t.proc_time) > latency_cap(pos, acc)) return false;
      return descend(mod_floor(prev_end + d, window_.period), new_latency);
    });
  }

  const Instance& instance_;
  const ReoptWindow& window_;
  const MatheurConfig& config_;
  std::vector<CyclicBitmap> occupancy_;
  std::vector<Time> residue_;
  std::vector<Time> best_residue_;
  std::vector<Time> cap_;
  std::int64_t best_;
  std::int64_t floor_;
  Clock::time_point deadline_;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  bool improved_ = false;
  bool complete_ = false;
};

}  // namespace

ReoptWindow build_window(const Instance& instance, const Schedule& schedule, int level,
                         std::optional<std::vector<int>> chains) {
  if (level < 0 || level >= instance.periods().size()) throw InputError("period level out of range");
  ReoptWindow w;
  w.level = level;
  w.period = instance.periods().period(level);
  CoreSchedule core = derive_core(instance, schedule);
  for (int m = 0; m < instance.num_resources(); ++m) {
    w.origin.push_back(resource_origin(instance, core, m).value_or(0));
    w.fixed.emplace_back(w.period);
  }
  std::vector<Time> lat = chain_latencies(instance, schedule);
  for (int k = 0; k < instance.num_chains(); ++k) {
    w.degeneracy.push_back(degeneracy(lat[static_cast<std::size_t>(k)], instance.chain_period(k)));
  }
  std::vector<char> is_free(static_cast<std::size_t>(instance.num_chains()), 0);
  if (chains) {
    for (int k : *chains) {
      if (k < 0 || k >= instance.num_chains() || instance.chain(k).period_level != level) {
        throw InputError("window chain does not belong to the period level");
      }
      is_free[static_cast<std::size_t>(k)] = 1;
    }
  } else {
    for (int k = 0; k < instance.num_chains(); ++k) {
      if (instance.chain(k).period_level == level) is_free[static_cast<std::size_t>(k)] = 1;
    }
  }
  for (int k = 0; k < instance.num_chains(); ++k) {
    if (is_free[static_cast<std::size_t>(k)]) w.free_chains.push_back(k);
  }
  std::stable_sort(w.free_chains.begin(), w.free_chains.end(), [&](int a, int b) {
    return w.degeneracy[static_cast<std::size_t>(a)] > w.degeneracy[static_cast<std::size_t>(b)];
  });
  w.incumbent_residue.assign(static_cast<std::size_t>(instance.num_tasks()), 0);
  for (TaskId id = 0; id < instance.num_tasks(); ++id) {
    const Task& t = instance.task(id);
    Time s = schedule.start[static_cast<std::size_t>(id)];
    w.incumbent_residue[static_cast<std::size_t>(id)] = mod_floor(s, w.period);
    if (is_free[static_cast<std::size_t>(t.chain)]) continue;
    CyclicBitmap& map = w.fixed[static_cast<std::size_t>(t.resource)];
    if (t.period <= w.period) {
      for (Time copy = 0; copy < w.period; copy += t.period) map.set(s + copy, t.proc_time);
    } else {
      map.set(s, std::min(t.proc_time, w.period));
    }
  }
  for (int k : w.free_chains) {
    for (TaskId id = instance.first_task(k); id <= instance.last_task(k); ++id) w.free_tasks.push_back(id);
  }
  return w;
}

ReoptOutcome reopt_period(const Instance& instance, const Schedule& schedule,
                          const ReoptWindow& window, const MatheurConfig& config) {
  const Criterion& crit = config.criterion;
  ReoptOutcome out;
  out.schedule = schedule;
  std::vector<Time> lat = chain_latencies(instance, schedule);
  out.before = crit.evaluate(instance, lat);
  out.after = out.before;
  std::vector<char> is_free(static_cast<std::size_t>(instance.num_chains()), 0);
  for (int k : window.free_chains) is_free[static_cast<std::size_t>(k)] = 1;
  std::int64_t free_value = 0;
  std::int64_t fixed_value = 0;
  for (int k = 0; k < instance.num_chains(); ++k) {
    std::int64_t cost = crit.chain_cost(lat[static_cast<std::size_t>(k)], instance.chain_period(k));
    if (is_free[static_cast<std::size_t>(k)]) {
      free_value = crit.combine(free_value, cost);
    } else {
      fixed_value = crit.combine(fixed_value, cost);
    }
  }
  // Under the max criterion the fixed chains bound what the window can reach.
  std::int64_t floor = crit.is_sum() ? 0 : fixed_value;
  if (window.free_chains.empty() || free_value <= floor) {
    out.complete = true;
    return out;
  }
  WindowSolver solver(instance, window, config, free_value, floor);
  solver.solve();
  out.nodes = solver.nodes();
  out.complete = solver.complete();
  if (!solver.improved()) return out;
  for (int k : window.free_chains) {
    Time t = solver.best_residue()[static_cast<std::size_t>(instance.first_task(k))];
    for (TaskId id = instance.first_task(k); id <= instance.last_task(k); ++id) {
      Time r = solver.best_residue()[static_cast<std::size_t>(id)];
      if (id != instance.first_task(k)) {
        Time prev_end = t + instance.task(id - 1).proc_time;
        t = prev_end + mod_floor(r - prev_end, window.period);
      }
      out.schedule.start[static_cast<std::size_t>(id)] = t;
    }
  }
  out.after = crit.evaluate(instance, out.schedule);
  out.improved = out.after < out.before;
  return out;
}

SweepResult reopt_sweep(const Instance& instance, const Schedule& schedule,
                        const MatheurConfig& config) {
  auto start = Clock::now();
  auto deadline = deadline_after(start, config.time_limit_s);
  SweepResult result;
  result.schedule = schedule;
  std::vector<int> levels;
  if (config.target_level >= 0) {
    levels.push_back(config.target_level);
  } else {
    for (int l = instance.periods().size() - 1; l >= 0; --l) levels.push_back(l);
  }
  auto run_window = [&](int level, int chunk, std::optional<std::vector<int>> chains) {
    MatheurConfig local = config;
    if (config.time_limit_s > 0) {
      double left = std::chrono::duration<double>(deadline - Clock::now()).count();
      double cap = config.iteration_time_limit_s > 0 ? std::min(config.iteration_time_limit_s, left) : left;
      local.iteration_time_limit_s = std::max(1e-3, cap);
    }
    ReoptWindow window = build_window(instance, result.schedule, level, std::move(chains));
    std::int64_t before = dg_sum(instance, result.schedule);
    ReoptOutcome out = reopt_period(instance, result.schedule, window, local);
    if (out.improved) {
      result.schedule = std::move(out.schedule);
      result.improved = true;
    }
    result.log.push_back({level, chunk, dg_sum(instance, result.schedule) - before, elapsed_ms(start)});
    return out;
  };
  for (int level : levels) {
    if (Clock::now() >= deadline) break;
    std::vector<int> chains;
    std::size_t tasks = 0;
    for (int k = 0; k < instance.num_chains(); ++k) {
      if (instance.chain(k).period_level == level) {
        chains.push_back(k);
        tasks += static_cast<std::size_t>(instance.chain_length(k));
      }
    }
    if (chains.empty()) continue;
    if (tasks <= static_cast<std::size_t>(config.max_free_tasks)) {
      ReoptOutcome out = run_window(level, 0, std::nullopt);
      if (out.complete || out.improved) continue;
    }
    // Chunked passes over the K worst chains at a time.
    bool progress = true;
    while (progress && Clock::now() < deadline) {
      progress = false;
      std::vector<Time> lat = chain_latencies(instance, result.schedule);
      auto cost = [&](int k) {
        return config.criterion.chain_cost(lat[static_cast<std::size_t>(k)], instance.chain_period(k));
      };
      std::vector<int> ranked = chains;
      std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) { return cost(a) > cost(b); });
      int chunk = 0;
      for (std::size_t i = 0; i < ranked.size() && Clock::now() < deadline;
           i += static_cast<std::size_t>(config.chunk_chains)) {
        std::vector<int> group(ranked.begin() + static_cast<std::ptrdiff_t>(i),
                               ranked.begin() + static_cast<std::ptrdiff_t>(std::min(
                                                    ranked.size(), i + static_cast<std::size_t>(config.chunk_chains))));
        bool worthwhile = std::any_of(group.begin(), group.end(), [&](int k) { return cost(k) > 0; });
        if (!worthwhile) break;
        if (run_window(level, ++chunk, group).improved) progress = true;
      }
    }
  }
  return result;
}

}  // namespace perisched
