#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "solve.hpp"

namespace perisched::tools {

struct BenchRow {
  std::string dataset;
  std::string method;
  int instances = 0;
  int solved = 0;
  double pct_feasible = 0;
  double avg_dg_sum = 0;     // over solved instances
  double pct_zero_dg = 0;    // over solved instances, or all with all_instances
  double avg_matheur_delta = 0;  // over instances where the matheuristic ran
};

struct BenchOptions {
  std::vector<std::string> methods;
  SearchConfig config;  // rng_seed is offset by the instance index
  int jobs = 1;
  bool all_instances = false;
};

struct BenchCell {
  int instance = 0;
  std::string method;
  SolveOutcome outcome;
};

std::vector<BenchRow> run_bench(const std::vector<Instance>& corpus, const std::string& dataset,
                                const BenchOptions& options, std::vector<BenchCell>* cells = nullptr);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_summary(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace perisched::tools
