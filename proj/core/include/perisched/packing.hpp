#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "perisched/ffs.hpp"

namespace perisched {

// Row-arranged view of one resource over [origin, origin + hyperperiod).
struct RowSegment {
  TaskId task = 0;
  Time x = 0;
  Time length = 0;
};

struct RowsView {
  Time origin = 0;
  Time width = 0;
  std::vector<std::vector<RowSegment>> rows;  // each row sorted by x
};

// Start of the first least-period task on m; otherwise the least origin at
// which no occurrence crosses a row boundary; otherwise nullopt.
std::optional<Time> resource_origin(const Instance& instance, const CoreSchedule& core, int m);

// Occurrences crossing a row boundary are split across rows.
RowsView rows_view(const Instance& instance, const CoreSchedule& core, int m);

// perm[time_row] = packing_row: mixed-radix digits (least significant in the
// shortest-period ratio) read back in reverse order.
std::vector<Time> row_permutation(const PeriodSet& periods);
std::vector<Time> inverse_row_permutation(const PeriodSet& periods);

struct PlacedRect {
  TaskId task = 0;
  Time x = 0;
  Time y = 0;
  Time width = 0;
  Time height = 0;
  friend bool operator==(const PlacedRect&, const PlacedRect&) = default;
};

struct Packing {
  int resource = 0;
  Time origin = 0;
  std::vector<PlacedRect> rects;  // sorted by task id
};

// Throws InputError when some occurrence crosses a row boundary for every origin.
Packing core_to_packing(const Instance& instance, const CoreSchedule& core, int m);
// Throws InputError for rectangles that are not height-divisible or leave the bin.
void validate_packing(const Instance& instance, const Packing& packing);
// Writes the residues of the packing's tasks into `core`.
void apply_packing(const Instance& instance, const Packing& packing, CoreSchedule& core);
// One packing per resource, in resource order.
CoreSchedule packing_to_core(const Instance& instance, std::span<const Packing> packings);

// Rectangle of the pack model: width = processing time, level = period level.
struct PackItem {
  TaskId task = 0;
  Time width = 0;
  int level = 0;
};

struct SubBinClass {
  Time height = 0;
  std::vector<int> items;          // indices into the item list, branching order
  std::vector<Time> widths;        // parallel to items
  std::vector<int> assignment;     // sub-bin per item, parallel to items
  std::vector<Time> loads;         // one per sub-bin
};

struct SubBinModel {
  Time width = 0;   // bin width (least period)
  Time rows = 0;    // bin height in unit rows
  std::vector<SubBinClass> classes;  // indexed by period level, tallest first
};

// L^j_b for one class: width sums per sub-bin.
std::vector<Time> sub_bin_loads(std::span<const Time> widths, std::span<const int> assignment,
                                int num_sub_bins);
// Sum over classes of the load of the sub-bin crossing unit row r.
Time row_load(const SubBinModel& model, Time row);
// Empty model skeleton for the period set (one class per level).
SubBinModel empty_model(const PeriodSet& periods);
// Left-to-right placement: class-j sub-bins start after the loads of the
// taller sub-bins that contain them.
std::vector<PlacedRect> canonical_placement(const SubBinModel& model,
                                            std::span<const PackItem> items);

enum class PackStatus { sat, unsat, unknown };
std::string_view pack_status_name(PackStatus status);

struct PackOptions {
  std::int64_t node_budget = 1'000'000;
};

struct PackResult {
  PackStatus status = PackStatus::unknown;
  SubBinModel model;
  std::vector<PlacedRect> placement;  // canonical, valid iff sat
  std::int64_t nodes = 0;
};

PackResult pack_items(const PeriodSet& periods, std::span<const PackItem> items,
                      const PackOptions& options = {});
// Throws InputError when a task on m is wider than the least period.
PackResult pack_canonical(const Instance& instance, int m, const PackOptions& options = {});

struct OrderOutcome {
  std::optional<OrderedList> order;
  std::vector<TaskId> cycle;  // first cycle met, in edge order; empty when acyclic
  int dropped_edges = 0;      // successor-first chain edges removed to break cycles
};

// report: a cycle leaves `order` empty. break_chain_edges: drop one chain edge
// per cycle found until the graph is acyclic.
enum class CycleRule { report, break_chain_edges };

// Order inference from a packed core schedule.
OrderOutcome warmstart_order(const Instance& instance, const CoreSchedule& core, Method method,
                             CycleRule rule = CycleRule::report);

struct WarmStart {
  enum class Status { ok, pack_unsat, pack_unknown, not_packable, order_infeasible };
  Status status = Status::ok;
  int failed_resource = -1;
  CoreSchedule core;
  OrderOutcome order;
  int rotations = 0;  // rotated packings tried before the order passed first fit
  std::int64_t nodes = 0;
};

std::string_view warm_start_status_name(WarmStart::Status status);

// Packs every resource (busiest first) and infers an order, breaking cycles.
// Status ok only when first fit turns the order into a feasible schedule.
WarmStart warm_start(const Instance& instance, Method method, const PackOptions& options = {});

}  // namespace perisched
