#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "perisched/schedule.hpp"

namespace perisched {

// One JSON document per line. Indices are 1-based on disk.
Instance parse_instance(const std::string& line);
std::string format_instance(const Instance& instance);
std::vector<Instance> read_instances(std::istream& in);
std::vector<Instance> read_instances_file(const std::string& path);
void write_instances(std::ostream& out, const std::vector<Instance>& instances);

// {"starts": {"<chain>.<task>": t, ...}} with chain and task 1-based.
Schedule parse_schedule(const Instance& instance, const std::string& line);
std::string format_schedule(const Instance& instance, const Schedule& schedule);
std::vector<std::string> read_lines(std::istream& in);
std::vector<std::string> read_lines_file(const std::string& path);

// Criteria as a single-line JSON object; rationals rendered with 4 decimals.
std::string format_criteria(const CriteriaReport& report);

}  // namespace perisched
