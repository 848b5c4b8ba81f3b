#include "perisched/special.hpp"

#include <algorithm>
#include <numeric>

namespace perisched {

JohnsonSchedule johnson_single_period(const Instance& instance) {
  if (instance.num_chains() == 0) throw InputError("instance has no chains");
  int first_resource = instance.task(0).resource;
  int second_resource = instance.chain_length(0) == 2 ? instance.task(1).resource : -1;
  Time period = instance.chain_period(0);
  for (int k = 0; k < instance.num_chains(); ++k) {
    if (instance.chain_length(k) != 2 || instance.chain_period(k) != period ||
        instance.task(instance.first_task(k)).resource != first_resource ||
        instance.task(instance.last_task(k)).resource != second_resource ||
        first_resource == second_resource) {
      throw InputError("not a two-resource single-period scattering instance");
    }
  }
  auto p1 = [&](int k) { return instance.task(instance.first_task(k)).proc_time; };
  auto p2 = [&](int k) { return instance.task(instance.last_task(k)).proc_time; };
  std::vector<int> head;
  std::vector<int> tail;
  for (int k = 0; k < instance.num_chains(); ++k) (p1(k) <= p2(k) ? head : tail).push_back(k);
  std::stable_sort(head.begin(), head.end(), [&](int a, int b) { return p1(a) < p1(b); });
  std::stable_sort(tail.begin(), tail.end(), [&](int a, int b) { return p2(a) > p2(b); });
  JohnsonSchedule out;
  out.chain_order = head;
  out.chain_order.insert(out.chain_order.end(), tail.begin(), tail.end());

  Time first_end = 0;
  Time second_end = 0;
  Time second_total = 0;
  for (int k : out.chain_order) {
    first_end += p1(k);
    second_end = std::max(second_end, first_end) + p2(k);
    second_total += p2(k);
  }
  out.makespan = second_end;

  CoreSchedule core;
  core.offset.assign(static_cast<std::size_t>(instance.num_tasks()), 0);
  Time t1 = 0;
  Time t2 = out.makespan - second_total;
  for (int k : out.chain_order) {
    core.offset[static_cast<std::size_t>(instance.first_task(k))] = mod_floor(t1, period);
    core.offset[static_cast<std::size_t>(instance.last_task(k))] = mod_floor(t2, period);
    t1 += p1(k);
    t2 += p2(k);
  }
  out.schedule = postpone_to_schedule(instance, core).schedule;
  out.criteria = compute_criteria(instance, out.schedule);
  return out;
}

TreeView validate_scattering(const Instance& instance) {
  const auto& topo = instance.topology();
  if (!topo) throw InputError("instance carries no line/tree topology");
  TreeView view;
  view.parent = topo->parent;
  int roots = 0;
  for (int m = 0; m < instance.num_resources(); ++m) {
    int p = view.parent[static_cast<std::size_t>(m)];
    if (p == -1) {
      view.root = m;
      ++roots;
    } else if (p < 0 || p >= instance.num_resources() || p == m) {
      throw InputError("topology parent out of range");
    }
    if (topo->kind == Topology::Kind::line && p != m - 1) {
      throw InputError("line topology must chain resources in index order");
    }
  }
  if (roots != 1) throw InputError("topology needs exactly one root");
  for (int m = 0; m < instance.num_resources(); ++m) {
    int hops = 0;
    for (int r = m; r != view.root; r = view.parent[static_cast<std::size_t>(r)]) {
      if (++hops > instance.num_resources()) throw InputError("topology has a cycle");
    }
  }
  for (int k = 0; k < instance.num_chains(); ++k) {
    TaskId first = instance.first_task(k);
    if (instance.task(first).resource != view.root) {
      throw InputError("chain " + std::to_string(k + 1) + " does not start at the root resource");
    }
    Time p = instance.task(first).proc_time;
    for (TaskId id = first + 1; id <= instance.last_task(k); ++id) {
      if (instance.task(id).proc_time != p) {
        throw InputError("chain " + std::to_string(k + 1) + " has unequal processing times");
      }
      if (view.parent[static_cast<std::size_t>(instance.task(id).resource)] != instance.task(id - 1).resource) {
        throw InputError("chain " + std::to_string(k + 1) + " does not follow a root path");
      }
    }
    view.chain_work.push_back(p);
  }
  return view;
}

OffsetSchedule offset_schedule_tree(const Instance& instance, const CoreSchedule& root_core) {
  TreeView view = validate_scattering(instance);
  auto n = static_cast<std::size_t>(instance.num_resources());
  // Edge maxima, keyed by the child resource.
  std::vector<Time> edge_max(n, 0);
  for (int k = 0; k < instance.num_chains(); ++k) {
    for (TaskId id = instance.first_task(k) + 1; id <= instance.last_task(k); ++id) {
      auto child = static_cast<std::size_t>(instance.task(id).resource);
      edge_max[child] = std::max(edge_max[child], view.chain_work[static_cast<std::size_t>(k)]);
    }
  }
  std::vector<std::vector<int>> children(n);
  for (int m = 0; m < instance.num_resources(); ++m) {
    int p = view.parent[static_cast<std::size_t>(m)];
    if (p >= 0) children[static_cast<std::size_t>(p)].push_back(m);
  }
  OffsetSchedule out;
  out.offset.assign(n, 0);
  std::vector<int> stack{view.root};
  while (!stack.empty()) {
    int m = stack.back();
    stack.pop_back();
    for (int c : children[static_cast<std::size_t>(m)]) {
      out.offset[static_cast<std::size_t>(c)] =
          out.offset[static_cast<std::size_t>(m)] + edge_max[static_cast<std::size_t>(c)];
      stack.push_back(c);
    }
  }
  out.schedule.start.resize(static_cast<std::size_t>(instance.num_tasks()));
  for (int k = 0; k < instance.num_chains(); ++k) {
    Time sigma = root_core.offset[static_cast<std::size_t>(instance.first_task(k))];
    if (sigma < 0 || sigma >= instance.chain_period(k)) throw InputError("root offset out of range");
    out.root_offset.push_back(sigma);
    for (TaskId id = instance.first_task(k); id <= instance.last_task(k); ++id) {
      out.schedule.start[static_cast<std::size_t>(id)] =
          sigma + out.offset[static_cast<std::size_t>(instance.task(id).resource)];
    }
  }
  out.criteria = compute_criteria(instance, out.schedule);
  return out;
}

OffsetSchedule offset_schedule_line(const Instance& instance, const CoreSchedule& root_core) {
  const auto& topo = instance.topology();
  if (!topo || topo->kind != Topology::Kind::line) throw InputError("instance is not a line");
  return offset_schedule_tree(instance, root_core);
}

std::string_view theory_status_name(TheoryResult::Status status) {
  switch (status) {
    case TheoryResult::Status::ok: return "ok";
    case TheoryResult::Status::pack_unsat: return "pack_unsat";
    case TheoryResult::Status::pack_unknown: return "pack_unknown";
    case TheoryResult::Status::not_packable: return "not_packable";
  }
  return "ok";
}

TheoryResult solve_theory(const Instance& instance, const PackOptions& options) {
  TreeView view = validate_scattering(instance);
  TheoryResult result;
  for (TaskId id : instance.resource_tasks(view.root)) {
    if (instance.task(id).proc_time > instance.periods().least()) {
      result.status = TheoryResult::Status::not_packable;
      return result;
    }
  }
  PackResult packed = pack_canonical(instance, view.root, options);
  result.nodes = packed.nodes;
  if (packed.status != PackStatus::sat) {
    result.status = packed.status == PackStatus::unsat ? TheoryResult::Status::pack_unsat
                                                        : TheoryResult::Status::pack_unknown;
    return result;
  }
  CoreSchedule core;
  apply_packing(instance, Packing{view.root, 0, std::move(packed.placement)}, core);
  result.solution = offset_schedule_tree(instance, core);
  return result;
}

}  // namespace perisched
