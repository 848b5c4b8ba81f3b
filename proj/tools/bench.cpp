#include "bench.hpp"

#include <atomic>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include "perisched/special.hpp"

namespace perisched::tools {

MethodTag parse_method_tag(const std::string& text) {
  MethodTag tag;
  tag.text = text;
  if (text == "offset") {
    tag.kind = MethodTag::Kind::offset;
    return tag;
  }
  if (text == "johnson") {
    tag.kind = MethodTag::Kind::johnson;
    return tag;
  }
  if (text == "flow") {
    tag.text = "predecessor+flow";
    return tag;
  }
  std::string base = text;
  tag.warm = MethodTag::Warm::none;
  if (auto plus = text.find('+'); plus != std::string::npos) {
    base = text.substr(0, plus);
    std::string warm = text.substr(plus + 1);
    if (warm == "cp") {
      tag.warm = MethodTag::Warm::cp;
    } else if (warm == "flow") {
      tag.warm = MethodTag::Warm::flow;
    } else if (warm != "none") {
      throw InputError("unknown warm start '" + warm + "'");
    }
  }
  tag.ffs = parse_method(base);
  return tag;
}

SolveOutcome solve_with(const Instance& instance, const MethodTag& method, const SearchConfig& config) {
  SolveOutcome out;
  SearchConfig cfg = config;
  cfg.method = method.ffs;
  switch (method.kind) {
    case MethodTag::Kind::johnson: {
      JohnsonSchedule j = johnson_single_period(instance);
      out.schedule = j.schedule;
      out.criteria = j.criteria;
      out.status = "ok";
      return out;
    }
    case MethodTag::Kind::offset: {
      TheoryResult t = solve_theory(instance, cfg.pack);
      out.status = std::string(theory_status_name(t.status));
      if (t.solution) {
        out.schedule = t.solution->schedule;
        out.criteria = t.solution->criteria;
      }
      return out;
    }
    case MethodTag::Kind::search:
      break;
  }
  if (method.warm == MethodTag::Warm::flow) {
    FlowResult flow = solve_flow(instance, cfg);
    out.schedule = flow.schedule;
    out.criteria = flow.criteria;
    out.trace = flow.trace;
    out.matheur_invoked = flow.matheur_invoked;
    out.matheur_delta = flow.best_value - flow.value_before_matheur;
    out.status = flow.feasible() ? "ok" : "no_feasible";
    return out;
  }
  std::optional<OrderedList> warm;
  std::string warm_status;
  if (method.warm == MethodTag::Warm::cp) {
    WarmStart ws = warm_start(instance, cfg.method, cfg.pack);
    warm_status = std::string(warm_start_status_name(ws.status));
    if (ws.order.order) warm = std::move(ws.order.order);
  }
  SearchResult r = local_search(instance, cfg, std::move(warm));
  out.schedule = r.schedule;
  out.criteria = r.criteria;
  out.trace = r.trace;
  out.status = r.feasible() ? "ok" : (warm_status.empty() ? "no_feasible" : "no_feasible/" + warm_status);
  return out;
}

std::vector<BenchRow> run_bench(const std::vector<Instance>& corpus, const std::string& dataset,
                                const BenchOptions& options, std::vector<BenchCell>* cells) {
  std::vector<MethodTag> tags;
  for (const std::string& m : options.methods) tags.push_back(parse_method_tag(m));
  std::vector<BenchCell> results(corpus.size() * tags.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      std::size_t job = next++;
      if (job >= results.size()) return;
      std::size_t i = job / tags.size();
      std::size_t m = job % tags.size();
      SearchConfig cfg = options.config;
      cfg.rng_seed = options.config.rng_seed + i;
      try {
        results[job] = {static_cast<int>(i), tags[m].text, solve_with(corpus[i], tags[m], cfg)};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<BenchRow> rows;
  for (std::size_t m = 0; m < tags.size(); ++m) {
    BenchRow row{dataset, tags[m].text};
    double dg_total = 0;
    int zero = 0;
    int matheur_runs = 0;
    double matheur_total = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const SolveOutcome& o = results[i * tags.size() + m].outcome;
      ++row.instances;
      if (o.matheur_invoked) {
        ++matheur_runs;
        matheur_total += static_cast<double>(o.matheur_delta);
      }
      if (!o.criteria) continue;
      ++row.solved;
      dg_total += static_cast<double>(o.criteria->dg_sum);
      if (o.criteria->dg_sum == 0) ++zero;
    }
    row.pct_feasible = row.instances ? 100.0 * row.solved / row.instances : 0;
    row.avg_dg_sum = row.solved ? dg_total / row.solved : 0;
    int denom = options.all_instances ? row.instances : row.solved;
    row.pct_zero_dg = denom ? 100.0 * zero / denom : 0;
    row.avg_matheur_delta = matheur_runs ? matheur_total / matheur_runs : 0;
    rows.push_back(row);
  }
  if (cells) *cells = std::move(results);
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "dataset,method,instances,solved,pct_feasible,avg_dg_sum,pct_zero_dg,avg_matheur_delta\n";
  out << std::fixed << std::setprecision(2);
  for (const BenchRow& r : rows) {
    out << r.dataset << ',' << r.method << ',' << r.instances << ',' << r.solved << ',' << r.pct_feasible << ','
        << r.avg_dg_sum << ',' << r.pct_zero_dg << ',' << r.avg_matheur_delta << '\n';
  }
}

void write_bench_summary(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << std::left << std::setw(16) << "dataset" << std::setw(20) << "method" << std::right << std::setw(10)
      << "%feasible" << std::setw(12) << "avg DGsum" << std::setw(10) << "%zeroDG" << std::setw(12)
      << "avg dMH" << '\n';
  out << std::fixed << std::setprecision(1);
  for (const BenchRow& r : rows) {
    out << std::left << std::setw(16) << r.dataset << std::setw(20) << r.method << std::right << std::setw(10)
        << r.pct_feasible << std::setw(12) << r.avg_dg_sum << std::setw(10) << r.pct_zero_dg << std::setw(12)
        << r.avg_matheur_delta << '\n';
  }
}

}  // namespace perisched::tools
