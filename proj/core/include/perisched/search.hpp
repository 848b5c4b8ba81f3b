#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "perisched/ffs.hpp"
#include "perisched/matheur.hpp"
#include "perisched/packing.hpp"

namespace perisched {

struct SearchConfig {
  Method method = Method::predecessor;
  bool predecessor_tail = false;
  double time_limit_s = 60.0;
  double warmstart_trigger_s = 15.0;
  double stagnation_trigger_s = 60.0;
  // Iteration counterparts; 0 disables. Iteration limits make runs reproducible.
  std::int64_t max_iterations = 0;
  std::int64_t warmstart_trigger_iters = 0;
  std::int64_t stagnation_trigger_iters = 0;
  std::uint64_t rng_seed = 1;
  Criterion criterion;
  bool anneal = false;
  std::int64_t kick_after = 5000;  // consecutive rejections before a restart from best
  double heartbeat_s = 1.0;
  PackOptions pack;
  MatheurConfig matheur;  // criterion is overridden by `criterion`
  bool use_matheur = true;
};

enum class Phase { reorder, perturb };

struct SearchState {
  OrderedList current;
  std::optional<Schedule> best;
  OrderedList best_order;
  std::int64_t best_value = 0;
  std::int64_t current_value = 0;
  bool current_feasible = false;
  std::int64_t iterations = 0;
  std::int64_t rejected_streak = 0;
  Phase phase = Phase::reorder;
};

struct Move {
  enum class Kind { reorder, swap, repair, kick };
  OrderedList order;
  Kind kind = Kind::swap;
};

struct TraceRow {
  std::int64_t iteration = 0;
  std::int64_t elapsed_ms = 0;
  std::int64_t criterion = 0;
  bool heartbeat = false;
};

// Ascending period; ties by (chain, index).
OrderedList initial_order(const Instance& instance);

// Chains whose tasks appear out of chain order in `order`.
std::vector<int> violating_chains(const Instance& instance, const OrderedList& order);
// Restores chain order of chain k on the positions it already occupies.
OrderedList reorder_chain(const Instance& instance, const OrderedList& order, int chain);
// Moves the task at `position` to a uniformly drawn earlier position.
OrderedList repair_move(const OrderedList& order, int position, Rng& rng);

Move neighborhood_move(const Instance& instance, const SearchState& state, Rng& rng);

struct SearchResult {
  enum class Stop { time_limit, iteration_limit, optimal, stagnation, no_feasible };
  std::optional<Schedule> schedule;
  std::optional<CriteriaReport> criteria;
  std::int64_t best_value = 0;
  OrderedList best_order;
  std::vector<TraceRow> trace;
  std::int64_t iterations = 0;
  Stop stop = Stop::time_limit;
  bool feasible() const { return schedule.has_value(); }
};

// Iterated first-improvement search over ordered lists.
class LocalSearch {
 public:
  using Clock = std::chrono::steady_clock;

  LocalSearch(const Instance& instance, const SearchConfig& config,
              std::optional<OrderedList> start = std::nullopt,
              Clock::time_point epoch = Clock::now());

  struct Limits {
    double time_s = 0;                 // measured from the epoch; <= 0 disables
    std::int64_t iterations = 0;       // total for this object; 0 disables
    double no_feasible_s = 0;          // stop without a feasible solution after this
    std::int64_t no_feasible_iters = 0;
    double stagnation_s = 0;           // stop when the best has not improved for this long
    std::int64_t stagnation_iters = 0;
  };

  SearchResult::Stop run(const Limits& limits);
  SearchResult result() const;
  const SearchState& state() const { return state_; }
  const std::vector<TraceRow>& trace() const { return trace_; }

 private:
  struct Evaluation {
    bool feasible = false;
    std::int64_t value = 0;
    int failed_position = -1;
    std::optional<Schedule> schedule;
  };
  Evaluation evaluate(const OrderedList& order);
  void record(std::int64_t value, bool heartbeat);
  double elapsed_s() const;
  void consider_best(const OrderedList& order, Evaluation& eval);

  const Instance& instance_;
  SearchConfig config_;
  FfsWorkspace workspace_;
  Rng rng_;
  Clock::time_point epoch_;
  SearchState state_;
  int current_failure_ = -1;
  std::optional<OrderedList> pending_repair_;
  std::vector<TraceRow> trace_;
  std::int64_t last_improvement_iter_ = 0;
  double last_improvement_s_ = 0;
  double last_heartbeat_s_ = 0;
};

SearchResult local_search(const Instance& instance, const SearchConfig& config,
                          std::optional<OrderedList> warm = std::nullopt);

struct FlowResult {
  std::optional<Schedule> schedule;
  std::optional<CriteriaReport> criteria;
  std::int64_t best_value = 0;
  std::vector<TraceRow> trace;
  bool warm_start_used = false;
  std::optional<WarmStart::Status> warm_start_status;
  bool matheur_invoked = false;
  std::int64_t value_before_matheur = 0;
  std::vector<ReoptLogRow> matheur_log;
  std::int64_t iterations = 0;
  bool feasible() const { return schedule.has_value(); }
};

// Local search, warm-start fallback, then matheuristic refinement on stagnation.
FlowResult solve_flow(const Instance& instance, const SearchConfig& config);

// Rows "elapsed_ms,criterion".
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace perisched
