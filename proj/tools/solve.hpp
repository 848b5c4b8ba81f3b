#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perisched/search.hpp"

namespace perisched::tools {

// Method tag: leftmost|predecessor with optional "+cp" (packing warm start)
// or "+flow" (full orchestration), or offset, or johnson.
struct MethodTag {
  enum class Kind { search, offset, johnson };
  enum class Warm { none, cp, flow };
  Kind kind = Kind::search;
  Method ffs = Method::predecessor;
  Warm warm = Warm::flow;
  std::string text;
};

// Throws InputError for unknown tags.
MethodTag parse_method_tag(const std::string& text);

struct SolveOutcome {
  std::optional<Schedule> schedule;
  std::optional<CriteriaReport> criteria;
  std::vector<TraceRow> trace;
  std::string status;  // "ok" or the reason nothing feasible was produced
  bool matheur_invoked = false;
  std::int64_t matheur_delta = 0;  // configured criterion, after minus before
};

SolveOutcome solve_with(const Instance& instance, const MethodTag& method, const SearchConfig& config);

}  // namespace perisched::tools
