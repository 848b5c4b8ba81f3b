#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bench.hpp"
#include "perisched/instgen.hpp"
#include "perisched/io.hpp"
#include "render.hpp"

namespace perisched::tools {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kInstances = "instances.jsonl";
constexpr const char* kWitness = "witness.jsonl";
constexpr const char* kManifest = "manifest.json";
constexpr const char* kInfeasibleLine = R"({"infeasible":true})";

struct Common {
  std::uint64_t seed = 1;
  bool seed_given = false;
  double time_limit_s = 360.0;
  std::int64_t iterations = 0;
  std::string method = "predecessor+flow";
  std::string criterion = "dgsum";
  std::string alpha;
  std::string corpus;
  std::string out;
  std::string schedules;
  int jobs = 1;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed_given) return c.seed;
  if (const char* env = std::getenv("PERISCHED_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("PERISCHED_SEED is not an unsigned integer");
    }
  }
  return c.seed;
}

std::vector<Alpha> alpha_list(const Common& c) {
  if (c.alpha.empty()) return {};
  return {Alpha::parse(c.alpha)};
}

SearchConfig search_config(const Common& c) {
  SearchConfig cfg;
  cfg.rng_seed = resolve_seed(c);
  cfg.time_limit_s = c.time_limit_s;
  // Keep the trigger ratios of the default six-minute run.
  cfg.warmstart_trigger_s = c.time_limit_s / 4;
  cfg.stagnation_trigger_s = std::min(c.time_limit_s / 2, 60.0);
  if (c.iterations > 0) {
    // Iteration budgets make a run reproducible regardless of machine speed.
    cfg.time_limit_s = 0;
    cfg.warmstart_trigger_s = 0;
    cfg.stagnation_trigger_s = 0;
    cfg.max_iterations = c.iterations;
    cfg.warmstart_trigger_iters = c.iterations / 4;
    cfg.stagnation_trigger_iters = c.iterations / 4;
    cfg.heartbeat_s = 0;
  }
  std::optional<Alpha> alpha;
  if (!c.alpha.empty()) alpha = Alpha::parse(c.alpha);
  cfg.criterion = Criterion::parse(c.criterion, alpha);
  return cfg;
}

std::vector<Instance> load_corpus(const std::string& dir) {
  if (dir.empty()) throw InputError("--corpus is required");
  fs::path path = fs::path(dir) / kInstances;
  if (!fs::exists(path)) throw InputError("no corpus at '" + dir + "' (missing " + kInstances + ")");
  return read_instances_file(path.string());
}

// One schedule per instance; std::nullopt for lines marked infeasible.
std::vector<std::optional<Schedule>> load_schedules(const std::vector<Instance>& corpus, const std::string& file) {
  std::vector<std::string> lines = read_lines_file(file);
  if (lines.size() != corpus.size()) {
    throw InputError(file + ": " + std::to_string(lines.size()) + " schedules for " +
                     std::to_string(corpus.size()) + " instances");
  }
  std::vector<std::optional<Schedule>> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Json::parse(lines[i]).contains("infeasible")) {
      out.emplace_back();
    } else {
      out.emplace_back(parse_schedule(corpus[i], lines[i]));
    }
  }
  return out;
}

std::string schedules_path(const Common& c) {
  return c.schedules.empty() ? (fs::path(c.corpus) / kWitness).string() : c.schedules;
}

fs::path ensure_out(const Common& c) {
  if (c.out.empty()) throw InputError("--out is required");
  fs::create_directories(c.out);
  return fs::path(c.out);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << text;
}

// ---- gen ----

struct GenArgs {
  std::string kind = "gen";
  int count = 10;
  std::string utilization = "1";
  int resources = 0;
  std::string network = "star";
  int size = 4;
  std::string shape = "line";
  int partition_n = 2;
  std::int64_t partition_bound = 15;
  std::vector<std::int64_t> partition_items;
};

int cmd_gen(const Common& c, const GenArgs& g, std::ostream& out) {
  fs::path dir = ensure_out(c);
  std::uint64_t seed = resolve_seed(c);
  Rational target = Rational::parse(g.utilization);
  std::ostringstream instances;
  std::ostringstream witnesses;
  Json manifest;
  manifest["kind"] = g.kind;
  manifest["seed"] = seed;
  manifest["count"] = g.count;
  Json entries = Json::array();
  for (int i = 0; i < g.count; ++i) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    Json entry;
    entry["index"] = i + 1;
    entry["seed"] = s;
    std::optional<Generated> generated;
    if (g.kind == "gen") {
      GenConfig cfg = GenConfig::desk(target, s);
      if (g.resources > 0) cfg.resources = g.resources;
      entry["utilization"] = target.to_fixed(4);
      entry["resources"] = cfg.resources;
      generated = gen_general(cfg);
    } else if (g.kind == "top") {
      TopConfig cfg;
      cfg.kind = parse_network_kind(g.network);
      cfg.size = g.size;
      cfg.periods = GenConfig::desk(Rational(1), s);
      entry["network"] = g.network;
      entry["size"] = g.size;
      generated = gen_topology(cfg);
    } else if (g.kind == "theory") {
      TheoryConfig cfg;
      if (g.shape == "line") {
        cfg.kind = Topology::Kind::line;
      } else if (g.shape == "tree") {
        cfg.kind = Topology::Kind::tree;
      } else {
        throw InputError("unknown theory shape '" + g.shape + "'");
      }
      cfg.gen = GenConfig::desk(target, s);
      if (g.resources > 0) cfg.gen.resources = g.resources;
      entry["shape"] = g.shape;
      entry["utilization"] = target.to_fixed(4);
      entry["resources"] = cfg.gen.resources;
      generated = gen_theory(cfg);
    } else if (g.kind == "3partition") {
      Instance gadget = gen_3partition(g.partition_n, g.partition_bound, g.partition_items);
      instances << format_instance(gadget) << '\n';
      witnesses << kInfeasibleLine << '\n';
      entry["n"] = g.partition_n;
      entry["bound"] = g.partition_bound;
      entry["items"] = g.partition_items;
      entries.push_back(std::move(entry));
      continue;
    } else {
      throw InputError("unknown generator '" + g.kind + "'");
    }
    instances << format_instance(generated->instance) << '\n';
    witnesses << format_schedule(generated->instance, generated->witness) << '\n';
    entry["tasks"] = generated->instance.num_tasks();
    entry["chains"] = generated->instance.num_chains();
    entries.push_back(std::move(entry));
  }
  manifest["instances"] = std::move(entries);
  write_file(dir / kInstances, instances.str());
  write_file(dir / kWitness, witnesses.str());
  write_file(dir / kManifest, manifest.dump(2) + "\n");
  out << "wrote " << g.count << " instances to " << dir.string() << '\n';
  return exit_ok;
}

// ---- solve / eval ----

int cmd_solve(const Common& c, std::ostream& out) {
  std::vector<Instance> corpus = load_corpus(c.corpus);
  MethodTag tag = parse_method_tag(c.method);
  SearchConfig cfg = search_config(c);
  fs::path dir = ensure_out(c);
  BenchOptions options;
  options.methods = {c.method};
  options.config = cfg;
  options.jobs = c.jobs;
  std::vector<BenchCell> cells;
  run_bench(corpus, "solve", options, &cells);
  std::ostringstream schedules;
  std::ostringstream criteria;
  std::ostringstream traces;
  traces << "instance,elapsed_ms,criterion\n";
  int solved = 0;
  std::vector<Alpha> alphas = alpha_list(c);
  for (const BenchCell& cell : cells) {
    const Instance& instance = corpus[static_cast<std::size_t>(cell.instance)];
    const SolveOutcome& o = cell.outcome;
    if (o.schedule) {
      ++solved;
      schedules << format_schedule(instance, *o.schedule) << '\n';
      criteria << format_criteria(compute_criteria(instance, *o.schedule, alphas)) << '\n';
    } else {
      schedules << kInfeasibleLine << '\n';
      Json mark;
      mark["infeasible"] = true;
      mark["status"] = o.status;
      criteria << mark.dump() << '\n';
    }
    for (const TraceRow& row : o.trace) {
      traces << cell.instance + 1 << ',' << row.elapsed_ms << ',' << row.criterion << '\n';
    }
  }
  write_file(dir / "schedules.jsonl", schedules.str());
  write_file(dir / "criteria.jsonl", criteria.str());
  write_file(dir / "trace.csv", traces.str());
  out << tag.text << ": solved " << solved << '/' << corpus.size() << '\n';
  return solved == 0 && !corpus.empty() ? exit_infeasible : exit_ok;
}

int cmd_eval(const Common& c, std::ostream& out) {
  std::vector<Instance> corpus = load_corpus(c.corpus);
  auto schedules = load_schedules(corpus, schedules_path(c));
  std::vector<Alpha> alphas = alpha_list(c);
  int feasible = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Json mark;
    if (!schedules[i]) {
      mark["infeasible"] = true;
      mark["status"] = "no schedule";
      out << mark.dump() << '\n';
      continue;
    }
    FeasibilityVerdict verdict = check_feasible(corpus[i], *schedules[i]);
    if (!verdict.ok()) {
      mark["infeasible"] = true;
      mark["status"] = verdict.describe(corpus[i]);
      out << mark.dump() << '\n';
      continue;
    }
    ++feasible;
    out << format_criteria(compute_criteria(corpus[i], *schedules[i], alphas)) << '\n';
  }
  return feasible == 0 && !corpus.empty() ? exit_infeasible : exit_ok;
}

// ---- pack / render ----

Json packing_json(const Packing& packing) {
  Json doc;
  doc["resource"] = packing.resource + 1;
  doc["origin"] = packing.origin;
  Json rects = Json::array();
  for (const PlacedRect& r : packing.rects) {
    rects.push_back({{"task", r.task}, {"x", r.x}, {"y", r.y}, {"width", r.width}, {"height", r.height}});
  }
  doc["rects"] = std::move(rects);
  return doc;
}

int cmd_pack(const Common& c, std::ostream& out) {
  std::vector<Instance> corpus = load_corpus(c.corpus);
  auto schedules = load_schedules(corpus, schedules_path(c));
  std::ostringstream lines;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Json doc;
    doc["instance"] = i + 1;
    if (!schedules[i]) {
      doc["infeasible"] = true;
    } else {
      CoreSchedule core = derive_core(corpus[i], *schedules[i]);
      Json per_resource = Json::array();
      for (int m = 0; m < corpus[i].num_resources(); ++m) {
        per_resource.push_back(packing_json(core_to_packing(corpus[i], core, m)));
      }
      doc["packings"] = std::move(per_resource);
    }
    lines << doc.dump() << '\n';
  }
  if (c.out.empty()) {
    out << lines.str();
  } else {
    write_file(ensure_out(c) / "packings.jsonl", lines.str());
  }
  return exit_ok;
}

int cmd_render(const Common& c, int index, std::ostream& out) {
  std::vector<Instance> corpus = load_corpus(c.corpus);
  auto schedules = load_schedules(corpus, schedules_path(c));
  fs::path dir = ensure_out(c);
  int files = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (index > 0 && static_cast<std::size_t>(index) != i + 1) continue;
    if (!schedules[i]) continue;
    std::string stem = "instance" + std::to_string(i + 1);
    write_file(dir / (stem + "_gantt.svg"), render_gantt_svg(corpus[i], *schedules[i]));
    ++files;
    CoreSchedule core = derive_core(corpus[i], *schedules[i]);
    for (int m = 0; m < corpus[i].num_resources(); ++m) {
      Packing packing = core_to_packing(corpus[i], core, m);
      write_file(dir / (stem + "_packing_r" + std::to_string(m + 1) + ".svg"),
                 render_packing_svg(corpus[i], packing));
      ++files;
    }
  }
  out << "wrote " << files << " files to " << dir.string() << '\n';
  return exit_ok;
}

// ---- bench ----

int cmd_bench(const Common& c, const std::vector<std::string>& methods, bool all_instances, std::ostream& out) {
  std::vector<Instance> corpus = load_corpus(c.corpus);
  BenchOptions options;
  options.methods = methods.empty() ? std::vector<std::string>{c.method} : methods;
  for (const std::string& m : options.methods) parse_method_tag(m);
  options.config = search_config(c);
  options.jobs = c.jobs;
  options.all_instances = all_instances;
  std::string dataset = fs::path(c.corpus).filename().string();
  if (dataset.empty()) dataset = fs::path(c.corpus).parent_path().filename().string();
  std::vector<BenchCell> cells;
  std::vector<BenchRow> rows = run_bench(corpus, dataset, options, &cells);
  fs::path dir = ensure_out(c);
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  std::ostringstream summary;
  write_bench_summary(summary, rows);
  if (all_instances) summary << "(%zeroDG over all instances)\n";
  std::ostringstream detail;
  detail << "instance,method,status,dg_sum,dg_max\n";
  for (const BenchCell& cell : cells) {
    detail << cell.instance + 1 << ',' << cell.method << ',' << cell.outcome.status << ',';
    if (cell.outcome.criteria) {
      detail << cell.outcome.criteria->dg_sum << ',' << cell.outcome.criteria->dg_max;
    } else {
      detail << ',';
    }
    detail << '\n';
  }
  write_file(dir / "bench.csv", csv.str());
  write_file(dir / "summary.txt", summary.str());
  write_file(dir / "cells.csv", detail.str());
  out << summary.str();
  return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic chain scheduling on harmonic periods"};
  app.require_subcommand(1);
  Common common;
  GenArgs gen;
  int render_index = 0;
  std::vector<std::string> bench_methods;
  bool all_instances = false;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed",
        [&](std::uint64_t s) {
          common.seed = s;
          common.seed_given = true;
        },
        "RNG seed (falls back to PERISCHED_SEED, then 1)");
  };
  auto add_solver = [&](CLI::App* sub) {
    add_seed(sub);
    sub->add_option("--time-limit-s", common.time_limit_s, "Per-instance time limit")->check(CLI::PositiveNumber);
    sub->add_option("--iterations", common.iterations, "Iteration budget; replaces the time limit");
    sub->add_option("--criterion", common.criterion, "dgsum | dgmax | dgalpha")
        ->check(CLI::IsMember({"dgsum", "dgmax", "dgalpha"}));
    sub->add_option("--alpha", common.alpha, "Alpha in (0,1], e.g. 3/4");
    sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_corpus = [&](CLI::App* sub) { sub->add_option("--corpus", common.corpus, "Corpus directory")->required(); };

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance corpus");
  add_seed(gen_cmd);
  gen_cmd->add_option("--kind", gen.kind, "gen | top | theory | 3partition")
      ->check(CLI::IsMember({"gen", "top", "theory", "3partition"}));
  gen_cmd->add_option("--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--utilization", gen.utilization, "Target minimum utilization U*");
  gen_cmd->add_option("--resources", gen.resources, "Resources M (default drawn from the seed)");
  gen_cmd->add_option("--network", gen.network, "star | triangle | bridge | stubbed_line | pair");
  gen_cmd->add_option("--size", gen.size, "Network size parameter");
  gen_cmd->add_option("--shape", gen.shape, "line | tree (theory)");
  gen_cmd->add_option("--n", gen.partition_n, "3-partition groups");
  gen_cmd->add_option("--bound", gen.partition_bound, "3-partition group sum B");
  gen_cmd->add_option("--items", gen.partition_items, "3-partition items")->delimiter(',');
  gen_cmd->add_option("--out", common.out, "Output directory")->required();

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve every instance of a corpus");
  add_corpus(solve_cmd);
  add_solver(solve_cmd);
  solve_cmd->add_option("--method", common.method, "Method tag");
  solve_cmd->add_option("--out", common.out, "Output directory")->required();

  CLI::App* eval_cmd = app.add_subcommand("eval", "Recompute criteria of schedule files");
  add_corpus(eval_cmd);
  eval_cmd->add_option("--schedules", common.schedules, "Schedule file (default: corpus witness)");
  eval_cmd->add_option("--alpha", common.alpha, "Alpha in (0,1]");

  CLI::App* pack_cmd = app.add_subcommand("pack", "Dump per-resource packings of schedules");
  add_corpus(pack_cmd);
  pack_cmd->add_option("--schedules", common.schedules, "Schedule file (default: corpus witness)");
  pack_cmd->add_option("--out", common.out, "Output directory (default: stdout)");

  CLI::App* render_cmd = app.add_subcommand("render", "Render Gantt and packing SVG files");
  add_corpus(render_cmd);
  render_cmd->add_option("--schedules", common.schedules, "Schedule file (default: corpus witness)");
  render_cmd->add_option("--index", render_index, "1-based instance index (default: all)");
  render_cmd->add_option("--out", common.out, "Output directory")->required();

  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a method matrix over a corpus");
  add_corpus(bench_cmd);
  add_solver(bench_cmd);
  bench_cmd->add_option("--method", bench_methods, "Method tags (repeatable or comma separated)")->delimiter(',');
  bench_cmd->add_flag("--all-instances", all_instances, "Report %zero-DG over all instances");
  bench_cmd->add_option("--out", common.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*gen_cmd) return cmd_gen(common, gen, out);
    if (*solve_cmd) return cmd_solve(common, out);
    if (*eval_cmd) return cmd_eval(common, out);
    if (*pack_cmd) return cmd_pack(common, out);
    if (*render_cmd) return cmd_render(common, render_index, out);
    if (*bench_cmd) return cmd_bench(common, bench_methods, all_instances, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_usage;
}

}  // namespace perisched::tools
