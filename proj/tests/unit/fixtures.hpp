#pragma once

#include <string>

#include "perisched/io.hpp"
#include "testkit.hpp"

namespace perisched::testkit {

inline std::string fixture(const std::string& relative) { return std::string(PERISCHED_FIXTURES) + "/" + relative; }

inline Instance motivating_instance() { return read_instances_file(fixture("motivating/instances.jsonl")).front(); }

inline Schedule motivating_schedule() {
  return parse_schedule(motivating_instance(), read_lines_file(fixture("motivating/witness.jsonl")).front());
}

// Chains given as (period level, [(resource, p)...]) with 0-based resources.
inline Instance make_instance(std::vector<Time> periods, int resources, std::vector<ChainSpec> chains) {
  return Instance(PeriodSet(std::move(periods)), resources, std::move(chains));
}

}  // namespace perisched::testkit
