#include "perisched/packing.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <random>
#include <string>

namespace perisched {

namespace {

bool crosses_row(Time sigma, Time length, Time origin, Time width) {
  return mod_floor(sigma - origin, width) + length > width;
}

}  // namespace

std::optional<Time> resource_origin(const Instance& instance, const CoreSchedule& core, int m) {
  Time width = instance.periods().least();
  std::optional<Time> origin;
  for (TaskId id : instance.resource_tasks(m)) {
    if (instance.task(id).level == 0) {
      Time s = core.offset[static_cast<std::size_t>(id)];
      origin = origin ? std::min(*origin, s) : s;
    }
  }
  if (origin) return origin;
  for (Time o = 0; o < width; ++o) {
    bool aligned = std::none_of(
        instance.resource_tasks(m).begin(), instance.resource_tasks(m).end(), [&](TaskId id) {
          return crosses_row(core.offset[static_cast<std::size_t>(id)], instance.task(id).proc_time,
                             o, width);
        });
    if (aligned) return o;
  }
  return std::nullopt;
}

RowsView rows_view(const Instance& instance, const CoreSchedule& core, int m) {
  const PeriodSet& ps = instance.periods();
  RowsView view;
  view.origin = resource_origin(instance, core, m).value_or(0);
  view.width = ps.least();
  view.rows.resize(static_cast<std::size_t>(ps.rows()));
  Time hyper = ps.hyperperiod();
  for (TaskId id : instance.resource_tasks(m)) {
    const Task& t = instance.task(id);
    Time first = mod_floor(core.offset[static_cast<std::size_t>(id)] - view.origin, t.period);
    for (Time rel = first; rel < hyper; rel += t.period) {
      Time pos = rel;
      Time left = t.proc_time;
      while (left > 0) {
        Time at = mod_floor(pos, hyper);
        Time row = at / view.width;
        Time x = at % view.width;
        Time len = std::min(left, view.width - x);
        view.rows[static_cast<std::size_t>(row)].push_back({id, x, len});
        pos += len;
        left -= len;
      }
    }
  }
  for (auto& row : view.rows) {
    std::sort(row.begin(), row.end(), [](const RowSegment& a, const RowSegment& b) {
      return a.x != b.x ? a.x < b.x : a.task < b.task;
    });
  }
  return view;
}

std::vector<Time> row_permutation(const PeriodSet& periods) {
  std::vector<Time> bases = periods.multipliers();
  Time rows = periods.rows();
  std::vector<Time> perm(static_cast<std::size_t>(rows));
  for (Time v = 0; v < rows; ++v) {
    Time rest = v;
    Time y = 0;
    // Digit of base b_l is the l-th least significant in time view and the
    // l-th most significant in packing view.
    Time weight = rows;
    for (Time base : bases) {
      weight /= base;
      y += (rest % base) * weight;
      rest /= base;
    }
    perm[static_cast<std::size_t>(v)] = y;
  }
  return perm;
}

std::vector<Time> inverse_row_permutation(const PeriodSet& periods) {
  std::vector<Time> perm = row_permutation(periods);
  std::vector<Time> inv(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) inv[static_cast<std::size_t>(perm[v])] = static_cast<Time>(v);
  return inv;
}

Packing core_to_packing(const Instance& instance, const CoreSchedule& core, int m) {
  const PeriodSet& ps = instance.periods();
  Time width = ps.least();
  std::optional<Time> origin = resource_origin(instance, core, m);
  if (!origin) {
    throw InputError("resource " + std::to_string(m + 1) +
                     " has no origin free of row-crossing occurrences");
  }
  std::vector<Time> perm = row_permutation(ps);
  Packing packing;
  packing.resource = m;
  packing.origin = *origin;
  for (TaskId id : instance.resource_tasks(m)) {
    const Task& t = instance.task(id);
    Time rel = mod_floor(core.offset[static_cast<std::size_t>(id)] - *origin, t.period);
    Time x = rel % width;
    if (x + t.proc_time > width) {
      throw InputError("task wider than the remaining row cannot become a rectangle");
    }
    packing.rects.push_back(
        {id, x, perm[static_cast<std::size_t>(rel / width)], t.proc_time, ps.hyperperiod() / t.period});
  }
  return packing;
}

void validate_packing(const Instance& instance, const Packing& packing) {
  const PeriodSet& ps = instance.periods();
  for (const PlacedRect& r : packing.rects) {
    if (r.task < 0 || r.task >= instance.num_tasks()) throw InputError("rectangle names an unknown task");
    const Task& t = instance.task(r.task);
    if (t.resource != packing.resource) throw InputError("rectangle belongs to another resource");
    Time height = ps.hyperperiod() / t.period;
    if (r.width != t.proc_time || r.height != height) {
      throw InputError("rectangle size does not match its task");
    }
    if (r.y % r.height != 0) throw InputError("rectangle is not height-divisible");
    if (r.x < 0 || r.y < 0 || r.x + r.width > ps.least() || r.y + r.height > ps.rows()) {
      throw InputError("rectangle leaves the bin");
    }
  }
}

void apply_packing(const Instance& instance, const Packing& packing, CoreSchedule& core) {
  validate_packing(instance, packing);
  const PeriodSet& ps = instance.periods();
  std::vector<Time> inv = inverse_row_permutation(ps);
  core.offset.resize(static_cast<std::size_t>(instance.num_tasks()), 0);
  for (const PlacedRect& r : packing.rects) {
    const Task& t = instance.task(r.task);
    Time row = inv[static_cast<std::size_t>(r.y)];
    core.offset[static_cast<std::size_t>(r.task)] =
        mod_floor(packing.origin + row * ps.least() + r.x, t.period);
  }
}

CoreSchedule packing_to_core(const Instance& instance, std::span<const Packing> packings) {
  if (static_cast<int>(packings.size()) != instance.num_resources()) {
    throw InputError("need one packing per resource");
  }
  CoreSchedule core;
  core.offset.assign(static_cast<std::size_t>(instance.num_tasks()), 0);
  std::vector<char> covered(static_cast<std::size_t>(instance.num_tasks()), 0);
  for (const Packing& p : packings) {
    apply_packing(instance, p, core);
    for (const PlacedRect& r : p.rects) covered[static_cast<std::size_t>(r.task)] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    throw InputError("packings do not cover every task");
  }
  return core;
}

std::vector<Time> sub_bin_loads(std::span<const Time> widths, std::span<const int> assignment,
                                int num_sub_bins) {
  std::vector<Time> loads(static_cast<std::size_t>(num_sub_bins), 0);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    int b = assignment[i];
    if (b < 0 || b >= num_sub_bins) throw InputError("sub-bin index out of range");
    loads[static_cast<std::size_t>(b)] += widths[i];
  }
  return loads;
}

Time row_load(const SubBinModel& model, Time row) {
  Time total = 0;
  for (const SubBinClass& c : model.classes) {
    if (!c.loads.empty()) total += c.loads[static_cast<std::size_t>(row / c.height)];
  }
  return total;
}

SubBinModel empty_model(const PeriodSet& periods) {
  SubBinModel model;
  model.width = periods.least();
  model.rows = periods.rows();
  for (int j = 0; j < periods.size(); ++j) {
    SubBinClass c;
    c.height = periods.hyperperiod() / periods.period(j);
    c.loads.assign(static_cast<std::size_t>(model.rows / c.height), 0);
    model.classes.push_back(std::move(c));
  }
  return model;
}

std::vector<PlacedRect> canonical_placement(const SubBinModel& model,
                                            std::span<const PackItem> items) {
  std::vector<PlacedRect> out;
  for (std::size_t j = 0; j < model.classes.size(); ++j) {
    const SubBinClass& c = model.classes[j];
    std::vector<Time> cursor(c.loads.size(), 0);
    for (std::size_t b = 0; b < cursor.size(); ++b) {
      Time row = static_cast<Time>(b) * c.height;
      for (std::size_t t = 0; t < j; ++t) {
        const SubBinClass& taller = model.classes[t];
        cursor[b] += taller.loads[static_cast<std::size_t>(row / taller.height)];
      }
    }
    for (std::size_t i = 0; i < c.items.size(); ++i) {
      auto b = static_cast<std::size_t>(c.assignment[i]);
      const PackItem& item = items[static_cast<std::size_t>(c.items[i])];
      out.push_back({item.task, cursor[b], static_cast<Time>(b) * c.height, item.width, c.height});
      cursor[b] += item.width;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PlacedRect& a, const PlacedRect& b) { return a.task < b.task; });
  return out;
}

std::string_view pack_status_name(PackStatus status) {
  switch (status) {
    case PackStatus::sat: return "sat";
    case PackStatus::unsat: return "unsat";
    case PackStatus::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

class Packer {
 public:
  Packer(const PeriodSet& periods, std::span<const PackItem> items, const PackOptions& options)
      : items_(items), options_(options), model_(empty_model(periods)) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].width > model_.width || items[i].width < 1) {
        throw InputError("pack item wider than the bin");
      }
      if (items[i].level < 0 || items[i].level >= periods.size()) {
        throw InputError("pack item level out of range");
      }
      order_.push_back(static_cast<int>(i));
    }
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const PackItem& x = items[static_cast<std::size_t>(a)];
      const PackItem& y = items[static_cast<std::size_t>(b)];
      if (x.level != y.level) return x.level < y.level;
      if (x.width != y.width) return x.width > y.width;
      return x.task < y.task;
    });
    suffix_area_.assign(order_.size() + 1, 0);
    for (std::size_t i = order_.size(); i-- > 0;) {
      const PackItem& it = items[static_cast<std::size_t>(order_[i])];
      suffix_area_[i] = suffix_area_[i + 1] + it.width * height(it.level);
    }
    choice_.assign(order_.size(), -1);
    auto words = static_cast<std::size_t>(model_.width / 64 + 1);
    suffix_reach_.assign(order_.size() + 1, std::vector<std::uint64_t>(words, 0));
    suffix_reach_.back()[0] = 1;
    for (std::size_t i = order_.size(); i-- > 0;) {
      suffix_reach_[i] = suffix_reach_[i + 1];
      shift_or(suffix_reach_[i], suffix_reach_[i + 1], items[static_cast<std::size_t>(order_[i])].width);
    }
  }

  PackResult run() {
    PackResult result;
    if (suffix_area_[0] > model_.width * model_.rows) {
      result.status = PackStatus::unsat;
      result.model = model_;
      return result;
    }
    // Restarts with growing budgets and shuffled ties cut off heavy-tailed
    // runs; a restart that finishes without hitting its budget is exhaustive.
    bool found = false;
    std::int64_t attempt_budget = kFirstAttemptNodes;
    for (std::uint64_t attempt = 0; nodes_ < options_.node_budget; ++attempt) {
      reset_search();
      shuffle_ = attempt > 0;
      rng_.seed(attempt);
      attempt_limit_ = std::min(options_.node_budget, nodes_ + attempt_budget);
      found = dfs(0);
      if (found || !aborted_) break;
      attempt_budget *= 2;
    }
    result.nodes = nodes_;
    if (found) {
      result.status = PackStatus::sat;
      for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        const PackItem& it = items_[static_cast<std::size_t>(order_[pos])];
        SubBinClass& c = model_.classes[static_cast<std::size_t>(it.level)];
        c.items.push_back(order_[pos]);
        c.widths.push_back(it.width);
        c.assignment.push_back(choice_[pos]);
      }
      result.placement = canonical_placement(model_, items_);
    } else {
      result.status = aborted_ ? PackStatus::unknown : PackStatus::unsat;
    }
    result.model = std::move(model_);
    return result;
  }

 private:
  Time height(int level) const { return model_.classes[static_cast<std::size_t>(level)].height; }

  Time prefix(int level, Time bin) const {
    Time row = bin * height(level);
    Time total = 0;
    for (int t = 0; t < level; ++t) {
      const SubBinClass& c = model_.classes[static_cast<std::size_t>(t)];
      total += c.loads[static_cast<std::size_t>(row / c.height)];
    }
    return total;
  }

  // Lower bound on the area left empty: every row's final fill is a subset
  // sum of the widths still to place.
  Time waste(std::size_t pos) const {
    Time wasted = 0;
    for (Time row = 0; row < model_.rows; ++row) {
      Time residual = model_.width - row_load(model_, row);
      wasted += residual - best_fill(pos, residual);
    }
    return wasted;
  }

  // Largest subset sum of the suffix widths that is at most `cap`.
  Time best_fill(std::size_t pos, Time cap) const {
    const std::vector<std::uint64_t>& reach = suffix_reach_[pos];
    for (Time word = cap / 64; word >= 0; --word) {
      std::uint64_t bits = reach[static_cast<std::size_t>(word)];
      if (word == cap / 64) bits &= cap % 64 == 63 ? ~0ULL : (2ULL << (cap % 64)) - 1;
      if (bits != 0) return word * 64 + 63 - std::countl_zero(bits);
    }
    return 0;
  }

  bool dfs(std::size_t pos) {
    if (pos == order_.size()) return true;
    const PackItem& it = items_[static_cast<std::size_t>(order_[pos])];
    SubBinClass& c = model_.classes[static_cast<std::size_t>(it.level)];
    if (model_.rows <= 256 || pos == 0 ||
        items_[static_cast<std::size_t>(order_[pos - 1])].level != it.level) {
      if (suffix_area_[pos] > free_area() - waste(pos)) return false;
    }
    int lowest = 0;
    if (pos > 0) {
      const PackItem& prev = items_[static_cast<std::size_t>(order_[pos - 1])];
      if (prev.level == it.level && prev.width == it.width) lowest = choice_[pos - 1];
    }
    struct Candidate {
      Time fill;
      int bin;
    };
    std::vector<Candidate> candidates;
    std::vector<std::pair<Time, Time>> seen;
    for (int b = lowest; b < static_cast<int>(c.loads.size()); ++b) {
      Time pre = prefix(it.level, b);
      Time load = c.loads[static_cast<std::size_t>(b)];
      if (pre + load + it.width > model_.width) continue;
      std::pair<Time, Time> key{pre, load};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      candidates.push_back({pre + load, b});
    }
    if (shuffle_) std::shuffle(candidates.begin(), candidates.end(), rng_);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.fill > b.fill; });
    if (shuffle_ && candidates.size() > 1 && rng_() % 8 == 0) {
      std::swap(candidates[0], candidates[1 + rng_() % (candidates.size() - 1)]);
    }
    for (const Candidate& cand : candidates) {
      if (++nodes_ > attempt_limit_) {
        aborted_ = true;
        return false;
      }
      c.loads[static_cast<std::size_t>(cand.bin)] += it.width;
      used_area_ += it.width * c.height;
      choice_[pos] = cand.bin;
      if (dfs(pos + 1)) return true;
      c.loads[static_cast<std::size_t>(cand.bin)] -= it.width;
      used_area_ -= it.width * c.height;
      if (aborted_) return false;
    }
    return false;
  }

  // dst |= src << shift, truncated to dst's length.
  static void shift_or(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, Time shift) {
    auto word_shift = static_cast<std::size_t>(shift / 64);
    auto bit_shift = static_cast<unsigned>(shift % 64);
    for (std::size_t i = dst.size(); i-- > word_shift;) {
      std::uint64_t v = src[i - word_shift] << bit_shift;
      if (bit_shift != 0 && i > word_shift) v |= src[i - word_shift - 1] >> (64 - bit_shift);
      dst[i] |= v;
    }
  }

  Time free_area() const { return model_.width * model_.rows - used_area_; }

  void reset_search() {
    for (SubBinClass& c : model_.classes) std::fill(c.loads.begin(), c.loads.end(), 0);
    std::fill(choice_.begin(), choice_.end(), -1);
    used_area_ = 0;
    aborted_ = false;
  }

  static constexpr std::int64_t kFirstAttemptNodes = 20'000;

  std::span<const PackItem> items_;
  PackOptions options_;
  SubBinModel model_;
  std::vector<int> order_;
  std::vector<std::vector<std::uint64_t>> suffix_reach_;  // subset sums of order_[pos..]
  std::vector<Time> suffix_area_;
  std::vector<int> choice_;
  Time used_area_ = 0;
  std::int64_t nodes_ = 0;
  std::int64_t attempt_limit_ = 0;
  bool aborted_ = false;
  bool shuffle_ = false;
  Rng rng_;
};

}  // namespace

PackResult pack_items(const PeriodSet& periods, std::span<const PackItem> items,
                      const PackOptions& options) {
  return Packer(periods, items, options).run();
}

PackResult pack_canonical(const Instance& instance, int m, const PackOptions& options) {
  std::vector<PackItem> items;
  for (TaskId id : instance.resource_tasks(m)) {
    const Task& t = instance.task(id);
    if (t.proc_time > instance.periods().least()) {
      throw InputError("task " + std::to_string(t.chain + 1) + "." + std::to_string(t.index + 1) +
                       " is longer than the least period and has no rectangle");
    }
    items.push_back({id, t.proc_time, t.level});
  }
  return pack_items(instance.periods(), items, options);
}

namespace {

struct OrderGraph {
  std::vector<std::vector<TaskId>> succ;

  // Smallest-id-first topological order; partial when a cycle remains.
  OrderedList kahn(std::vector<int>& indegree) const {
    std::size_t n = succ.size();
    indegree.assign(n, 0);
    for (const auto& out : succ) {
      for (TaskId w : out) ++indegree[static_cast<std::size_t>(w)];
    }
    std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v) {
      if (indegree[v] == 0) ready.push(static_cast<TaskId>(v));
    }
    OrderedList order;
    order.reserve(n);
    while (!ready.empty()) {
      TaskId v = ready.top();
      ready.pop();
      order.push_back(v);
      for (TaskId w : succ[static_cast<std::size_t>(v)]) {
        if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push(w);
      }
    }
    return order;
  }

  // Cycle among the nodes Kahn left behind (positive indegree), in edge order.
  std::vector<TaskId> cycle(const std::vector<int>& indegree) const {
    std::size_t n = succ.size();
    // Every unordered node keeps an unordered predecessor; walk backwards to a repeat.
    std::vector<std::vector<TaskId>> pred(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (indegree[v] == 0) continue;
      for (TaskId w : succ[v]) {
        if (indegree[static_cast<std::size_t>(w)] > 0) pred[static_cast<std::size_t>(w)].push_back(static_cast<TaskId>(v));
      }
    }
    TaskId v = 0;
    while (indegree[static_cast<std::size_t>(v)] == 0) ++v;
    std::vector<int> visited_at(n, -1);
    std::vector<TaskId> walk;
    while (visited_at[static_cast<std::size_t>(v)] < 0) {
      visited_at[static_cast<std::size_t>(v)] = static_cast<int>(walk.size());
      walk.push_back(v);
      v = pred[static_cast<std::size_t>(v)].front();
    }
    std::vector<TaskId> out(walk.begin() + visited_at[static_cast<std::size_t>(v)], walk.end());
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace

OrderOutcome warmstart_order(const Instance& instance, const CoreSchedule& core, Method method,
                             CycleRule rule) {
  auto n = static_cast<std::size_t>(instance.num_tasks());
  auto sigma = [&](TaskId id) { return core.offset[static_cast<std::size_t>(id)]; };
  auto by_start = [&](TaskId a, TaskId b) {
    return sigma(a) != sigma(b) ? sigma(a) < sigma(b) : a < b;
  };
  OrderOutcome outcome;
  if (method == Method::leftmost) {
    OrderedList order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), by_start);
    outcome.order = std::move(order);
    return outcome;
  }
  OrderGraph graph{std::vector<std::vector<TaskId>>(n)};
  for (int m = 0; m < instance.num_resources(); ++m) {
    std::vector<TaskId> ids(instance.resource_tasks(m).begin(), instance.resource_tasks(m).end());
    std::sort(ids.begin(), ids.end(), by_start);
    for (std::size_t i = 1; i < ids.size(); ++i) graph.succ[static_cast<std::size_t>(ids[i - 1])].push_back(ids[i]);
  }
  for (int k = 0; k < instance.num_chains(); ++k) {
    for (TaskId id = instance.first_task(k); id < instance.last_task(k); ++id) {
      if (sigma(id) + instance.task(id).proc_time > sigma(id + 1)) {
        graph.succ[static_cast<std::size_t>(id + 1)].push_back(id);
      }
    }
  }
  std::vector<int> indegree;
  for (;;) {
    OrderedList order = graph.kahn(indegree);
    if (order.size() == n) {
      outcome.order = std::move(order);
      return outcome;
    }
    std::vector<TaskId> cycle = graph.cycle(indegree);
    if (outcome.cycle.empty()) outcome.cycle = cycle;
    if (rule == CycleRule::report) return outcome;
    // Same-resource edges alone are acyclic, so every cycle has a chain edge.
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      TaskId from = cycle[i];
      TaskId to = cycle[(i + 1) % cycle.size()];
      if (from != to + 1 || instance.task(from).chain != instance.task(to).chain) continue;
      auto& out = graph.succ[static_cast<std::size_t>(from)];
      out.erase(std::find(out.begin(), out.end(), to));
      ++outcome.dropped_edges;
      break;
    }
  }
}

std::string_view warm_start_status_name(WarmStart::Status status) {
  switch (status) {
    case WarmStart::Status::ok: return "ok";
    case WarmStart::Status::pack_unsat: return "pack_unsat";
    case WarmStart::Status::pack_unknown: return "pack_unknown";
    case WarmStart::Status::not_packable: return "not_packable";
    case WarmStart::Status::order_infeasible: return "order_infeasible";
  }
  return "ok";
}

namespace {

constexpr int kRotationAttempts = 16;
constexpr std::uint64_t kRotationSeed = 0x5EED;

}  // namespace

WarmStart warm_start(const Instance& instance, Method method, const PackOptions& options) {
  WarmStart ws;
  std::vector<int> resources(static_cast<std::size_t>(instance.num_resources()));
  std::iota(resources.begin(), resources.end(), 0);
  std::stable_sort(resources.begin(), resources.end(), [&](int a, int b) {
    return instance.utilization(a) > instance.utilization(b);
  });
  ws.core.offset.assign(static_cast<std::size_t>(instance.num_tasks()), 0);
  for (int m : resources) {
    for (TaskId id : instance.resource_tasks(m)) {
      if (instance.task(id).proc_time > instance.periods().least()) {
        ws.status = WarmStart::Status::not_packable;
        ws.failed_resource = m;
        return ws;
      }
    }
    PackResult packed = pack_canonical(instance, m, options);
    ws.nodes += packed.nodes;
    if (packed.status != PackStatus::sat) {
      ws.status = packed.status == PackStatus::unsat ? WarmStart::Status::pack_unsat
                                                      : WarmStart::Status::pack_unknown;
      ws.failed_resource = m;
      return ws;
    }
    apply_packing(instance, Packing{m, 0, std::move(packed.placement)}, ws.core);
  }
  // Each resource's packing may be rotated freely; retry rotations until the
  // inferred order survives first fit.
  CoreSchedule packed = ws.core;
  Rng rng(kRotationSeed);
  for (int attempt = 0; attempt < kRotationAttempts; ++attempt) {
    std::vector<Time> shift(static_cast<std::size_t>(instance.num_resources()), 0);
    if (attempt > 0) {
      std::uniform_int_distribution<Time> pick(0, instance.periods().hyperperiod() - 1);
      for (Time& d : shift) d = pick(rng);
    }
    for (TaskId id = 0; id < instance.num_tasks(); ++id) {
      const Task& t = instance.task(id);
      ws.core.offset[static_cast<std::size_t>(id)] =
          mod_floor(packed.offset[static_cast<std::size_t>(id)] + shift[static_cast<std::size_t>(t.resource)], t.period);
    }
    ws.order = warmstart_order(instance, ws.core, method, CycleRule::break_chain_edges);
    ws.rotations = attempt;
    FfsOptions ffs_options;
    ffs_options.method = method;
    if (ffs_run(instance, *ws.order.order, ffs_options).ok()) return ws;
  }
  ws.status = WarmStart::Status::order_infeasible;
  return ws;
}

}  // namespace perisched
