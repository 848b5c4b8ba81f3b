#include "perisched/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace perisched {

namespace {

// Per-window node budget when the search runs on iteration limits only.
constexpr std::int64_t kUntimedMatheurNodes = 2'000'000;

}  // namespace

OrderedList initial_order(const Instance& instance) {
  OrderedList order(static_cast<std::size_t>(instance.num_tasks()));
  std::iota(order.begin(), order.end(), 0);
  // Task ids already enumerate chains in (chain, index) order.
  std::stable_sort(order.begin(), order.end(), [&](TaskId a, TaskId b) {
    return instance.task(a).period < instance.task(b).period;
  });
  return order;
}

std::vector<int> violating_chains(const Instance& instance, const OrderedList& order) {
  std::vector<int> position(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) position[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
  std::vector<int> out;
  for (int k = 0; k < instance.num_chains(); ++k) {
    for (TaskId id = instance.first_task(k); id < instance.last_task(k); ++id) {
      if (position[static_cast<std::size_t>(id) + 1] < position[static_cast<std::size_t>(id)]) {
        out.push_back(k);
        break;
      }
    }
  }
  return out;
}

OrderedList reorder_chain(const Instance& instance, const OrderedList& order, int chain) {
  OrderedList out = order;
  std::vector<std::size_t> slots;
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (instance.task(order[p]).chain == chain) slots.push_back(p);
  }
  TaskId id = instance.first_task(chain);
  for (std::size_t slot : slots) out[slot] = id++;
  return out;
}

OrderedList repair_move(const OrderedList& order, int position, Rng& rng) {
  OrderedList out = order;
  if (position <= 0) return out;
  int target = std::uniform_int_distribution<int>(0, position - 1)(rng);
  auto first = out.begin() + target;
  auto last = out.begin() + position;
  std::rotate(first, last, last + 1);
  return out;
}

Move neighborhood_move(const Instance& instance, const SearchState& state, Rng& rng) {
  bool try_reorder = state.phase == Phase::reorder || std::bernoulli_distribution(0.5)(rng);
  if (try_reorder) {
    std::vector<int> chains = violating_chains(instance, state.current);
    if (!chains.empty()) {
      int pick = chains[static_cast<std::size_t>(
          std::uniform_int_distribution<std::size_t>(0, chains.size() - 1)(rng))];
      return {reorder_chain(instance, state.current, pick), Move::Kind::reorder};
    }
  }
  Move move{state.current, Move::Kind::swap};
  std::size_t n = move.order.size();
  if (n < 2) return move;
  std::size_t a = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  std::size_t b = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
  if (b >= a) ++b;
  std::swap(move.order[a], move.order[b]);
  return move;
}

LocalSearch::LocalSearch(const Instance& instance, const SearchConfig& config,
                         std::optional<OrderedList> start, Clock::time_point epoch)
    : instance_(instance), config_(config), workspace_(instance), rng_(config.rng_seed), epoch_(epoch) {
  state_.current = start ? std::move(*start) : initial_order(instance);
  require_permutation(instance, state_.current);
  Evaluation e = evaluate(state_.current);
  state_.current_feasible = e.feasible;
  if (e.feasible) {
    state_.current_value = e.value;
    consider_best(state_.current, e);
  } else {
    current_failure_ = e.failed_position;
  }
}

double LocalSearch::elapsed_s() const {
  return std::chrono::duration<double>(Clock::now() - epoch_).count();
}

void LocalSearch::record(std::int64_t value, bool heartbeat) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - epoch_).count();
  trace_.push_back({state_.iterations, ms, value, heartbeat});
}

LocalSearch::Evaluation LocalSearch::evaluate(const OrderedList& order) {
#ifndef NDEBUG
  require_permutation(instance_, order);
#endif
  FfsResult run = ffs_run(instance_, order, {config_.method, config_.predecessor_tail}, workspace_);
  Evaluation e;
  if (!run.ok()) {
    e.failed_position = run.failure->position;
    return e;
  }
  e.feasible = true;
  e.value = config_.criterion.evaluate(instance_, *run.schedule);
  e.schedule = std::move(run.schedule);
  return e;
}

void LocalSearch::consider_best(const OrderedList& order, Evaluation& eval) {
  if (state_.best && eval.value >= state_.best_value) return;
  state_.best = std::move(eval.schedule);
  state_.best_order = order;
  state_.best_value = eval.value;
  last_improvement_iter_ = state_.iterations;
  last_improvement_s_ = elapsed_s();
  record(eval.value, false);
}

SearchResult::Stop LocalSearch::run(const Limits& limits) {
  using Stop = SearchResult::Stop;
  std::int64_t start_iterations = state_.iterations;
  while (true) {
    if (state_.best && state_.best_value == 0) return Stop::optimal;
    if (limits.iterations > 0 && state_.iterations - start_iterations >= limits.iterations) {
      return Stop::iteration_limit;
    }
    double now = elapsed_s();
    if (limits.time_s > 0 && now >= limits.time_s) return Stop::time_limit;
    if (!state_.best) {
      if ((limits.no_feasible_s > 0 && now >= limits.no_feasible_s) ||
          (limits.no_feasible_iters > 0 && state_.iterations >= limits.no_feasible_iters)) {
        return Stop::no_feasible;
      }
    } else {
      if ((limits.stagnation_s > 0 && now - last_improvement_s_ >= limits.stagnation_s) ||
          (limits.stagnation_iters > 0 &&
           state_.iterations - last_improvement_iter_ >= limits.stagnation_iters)) {
        return Stop::stagnation;
      }
      if (config_.heartbeat_s > 0 && now - last_heartbeat_s_ >= config_.heartbeat_s) {
        last_heartbeat_s_ = now;
        record(state_.best_value, true);
      }
    }
    ++state_.iterations;

    if (!state_.current_feasible) {
      state_.current = repair_move(state_.current, current_failure_, rng_);
      Evaluation e = evaluate(state_.current);
      if (e.feasible) {
        state_.current_feasible = true;
        state_.current_value = e.value;
        consider_best(state_.current, e);
      } else {
        current_failure_ = e.failed_position;
      }
      continue;
    }

    Move move;
    if (pending_repair_) {
      move = {std::move(*pending_repair_), Move::Kind::repair};
      pending_repair_.reset();
    } else {
      move = neighborhood_move(instance_, state_, rng_);
    }
    Evaluation e = evaluate(move.order);
    bool accept = e.feasible && e.value < state_.current_value;
    if (!accept && e.feasible && config_.anneal) {
      double temperature = 2.0 * std::pow(0.99, static_cast<double>(state_.iterations / 100));
      double delta = static_cast<double>(e.value - state_.current_value);
      accept = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < std::exp(-delta / temperature);
    }
    if (accept) {
      state_.current = std::move(move.order);
      state_.current_value = e.value;
      state_.rejected_streak = 0;
      consider_best(state_.current, e);
      continue;
    }
    ++state_.rejected_streak;
    if (move.kind == Move::Kind::reorder && state_.phase == Phase::reorder) {
      state_.phase = Phase::perturb;
    }
    if (!e.feasible && move.kind != Move::Kind::repair) {
      pending_repair_ = repair_move(move.order, e.failed_position, rng_);
    }
    if (config_.kick_after > 0 && state_.rejected_streak >= config_.kick_after && state_.best) {
      OrderedList kicked = state_.best_order;
      for (int s = 0; s < 3 && kicked.size() >= 2; ++s) {
        std::size_t a = std::uniform_int_distribution<std::size_t>(0, kicked.size() - 1)(rng_);
        std::size_t b = std::uniform_int_distribution<std::size_t>(0, kicked.size() - 1)(rng_);
        std::swap(kicked[a], kicked[b]);
      }
      Evaluation k = evaluate(kicked);
      state_.current = std::move(kicked);
      state_.current_feasible = k.feasible;
      state_.current_value = k.value;
      current_failure_ = k.failed_position;
      state_.rejected_streak = 0;
      pending_repair_.reset();
    }
  }
}

SearchResult LocalSearch::result() const {
  SearchResult r;
  r.schedule = state_.best;
  r.best_value = state_.best_value;
  r.best_order = state_.best_order;
  r.trace = trace_;
  r.iterations = state_.iterations;
  if (r.schedule) r.criteria = compute_criteria(instance_, *r.schedule);
  return r;
}

SearchResult local_search(const Instance& instance, const SearchConfig& config,
                          std::optional<OrderedList> warm) {
  LocalSearch search(instance, config, std::move(warm));
  LocalSearch::Limits limits;
  limits.time_s = config.time_limit_s;
  limits.iterations = config.max_iterations;
  SearchResult::Stop stop = search.run(limits);
  SearchResult r = search.result();
  r.stop = stop;
  return r;
}

FlowResult solve_flow(const Instance& instance, const SearchConfig& config) {
  using Stop = SearchResult::Stop;
  auto epoch = LocalSearch::Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(LocalSearch::Clock::now() - epoch).count(); };
  FlowResult flow;
  LocalSearch::Limits limits;
  limits.time_s = config.time_limit_s;
  limits.iterations = config.max_iterations;
  limits.no_feasible_s = config.warmstart_trigger_s;
  limits.no_feasible_iters = config.warmstart_trigger_iters;
  limits.stagnation_s = config.stagnation_trigger_s;
  limits.stagnation_iters = config.stagnation_trigger_iters;

  LocalSearch first(instance, config, std::nullopt, epoch);
  Stop stop = first.run(limits);
  SearchResult best = first.result();
  flow.trace = best.trace;
  flow.iterations = best.iterations;

  if (stop == Stop::no_feasible) {
    LocalSearch::Limits rest = limits;
    rest.no_feasible_s = 0;
    rest.no_feasible_iters = 0;
    if (rest.iterations > 0) rest.iterations = std::max<std::int64_t>(1, rest.iterations - flow.iterations);
    WarmStart ws = warm_start(instance, config.method, config.pack);
    flow.warm_start_used = true;
    flow.warm_start_status = ws.status;
    if (ws.status == WarmStart::Status::ok) {
      LocalSearch second(instance, config, std::move(ws.order.order), epoch);
      stop = second.run(rest);
      SearchResult r = second.result();
      for (TraceRow row : r.trace) {
        row.iteration += flow.iterations;
        flow.trace.push_back(row);
      }
      flow.iterations += r.iterations;
      best = std::move(r);
    } else {
      stop = first.run(rest);
      best = first.result();
      flow.trace = best.trace;
      flow.iterations = best.iterations;
    }
  }
  if (!best.schedule) return flow;
  flow.schedule = best.schedule;
  flow.best_value = best.best_value;
  flow.value_before_matheur = best.best_value;

  bool timed = config.time_limit_s > 0;
  double left = timed ? config.time_limit_s - elapsed() : 0;
  if (config.use_matheur && stop == Stop::stagnation && (!timed || left > 0)) {
    MatheurConfig mc = config.matheur;
    mc.criterion = config.criterion;
    if (timed) {
      mc.time_limit_s = std::min(mc.time_limit_s, left);
    } else {
      // Untimed runs stay reproducible: only node budgets bound the sweep.
      mc.time_limit_s = 0;
      mc.iteration_time_limit_s = 0;
      if (mc.node_limit <= 0) mc.node_limit = kUntimedMatheurNodes;
    }
    flow.matheur_invoked = true;
    SweepResult sweep = reopt_sweep(instance, *flow.schedule, mc);
    flow.matheur_log = sweep.log;
    std::int64_t value = config.criterion.evaluate(instance, sweep.schedule);
    if (value < flow.best_value) {
      flow.schedule = std::move(sweep.schedule);
      flow.best_value = value;
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(LocalSearch::Clock::now() - epoch).count();
      flow.trace.push_back({flow.iterations, ms, value, false});
    }
  }
  flow.criteria = compute_criteria(instance, *flow.schedule);
  return flow;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "elapsed_ms,criterion\n";
  for (const TraceRow& row : trace) out << row.elapsed_ms << ',' << row.criterion << '\n';
}

}  // namespace perisched
