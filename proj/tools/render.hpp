#pragma once

#include <string>

#include "perisched/packing.hpp"

namespace perisched::tools {

// One lane per resource over one hyperperiod.
std::string render_gantt_svg(const Instance& instance, const Schedule& schedule);
// Packing bin with sub-bin partition lines of every height class.
std::string render_packing_svg(const Instance& instance, const Packing& packing);

}  // namespace perisched::tools
