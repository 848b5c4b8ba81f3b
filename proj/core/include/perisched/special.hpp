#pragma once

#include <optional>
#include <vector>

#include "perisched/packing.hpp"

namespace perisched {

struct JohnsonSchedule {
  std::vector<int> chain_order;  // Johnson permutation, shared by both resources
  Time makespan = 0;
  Schedule schedule;
  CriteriaReport criteria;
};

// Requires every chain to be (first resource, second resource) with one
// common period; throws InputError otherwise.
JohnsonSchedule johnson_single_period(const Instance& instance);

// Out-tree view of a scattering instance: chains start at the root and every
// next task runs on a child of the previous task's resource.
struct TreeView {
  int root = 0;
  std::vector<int> parent;       // per resource, -1 at the root
  std::vector<Time> chain_work;  // the common processing time per chain
};

// Throws InputError when the instance lacks a line/tree topology, violates
// scattering, or has unequal processing times inside a chain.
TreeView validate_scattering(const Instance& instance);

struct OffsetSchedule {
  std::vector<Time> root_offset;  // per chain, residue of its root task
  std::vector<Time> offset;       // per resource
  Schedule schedule;
  CriteriaReport criteria;
};

// Offsets from per-edge maxima of the crossing chains' processing times.
OffsetSchedule offset_schedule_tree(const Instance& instance, const CoreSchedule& root_core);
// Line specialization: o_i = o_{i-1} + max{p^k : chain k reaches i}.
OffsetSchedule offset_schedule_line(const Instance& instance, const CoreSchedule& root_core);

struct TheoryResult {
  enum class Status { ok, pack_unsat, pack_unknown, not_packable };
  Status status = Status::ok;
  std::optional<OffsetSchedule> solution;
  std::int64_t nodes = 0;
};

std::string_view theory_status_name(TheoryResult::Status status);

// Packs the root resource, then replicates it with offsets.
TheoryResult solve_theory(const Instance& instance, const PackOptions& options = {});

}  // namespace perisched
