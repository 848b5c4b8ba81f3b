#include "perisched/instgen.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "perisched/packing.hpp"
#include "perisched/special.hpp"
#include "perisched/timeline.hpp"

namespace perisched {

namespace {

Time uniform(Rng& rng, Time lo, Time hi) { return std::uniform_int_distribution<Time>(lo, hi)(rng); }
std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// Piece of a carved bin: a task-to-be with its residue in the witness.
struct Piece {
  int resource = 0;
  int level = 0;
  Time residue = 0;
  Time width = 0;
};

// Recursive horizontal slicing of the w x H bin into height-divisible rectangles.
class Carver {
 public:
  Carver(const PeriodSet& periods, const GenConfig& config, Rng& rng)
      : periods_(periods),
        ratios_(periods.multipliers()),
        inverse_(inverse_row_permutation(periods)),
        min_width_(config.min_width > 0 ? config.min_width : std::max<Time>(1, periods.least() / 12)),
        max_width_(config.max_width > 0 ? config.max_width : std::max<Time>(1, periods.least() / 4)),
        split_(config.split_probability),
        rng_(rng) {
    max_width_ = std::min(max_width_, periods.least());
    min_width_ = std::min(min_width_, max_width_);
  }

  void carve(int resource, std::vector<Piece>& out) {
    resource_ = resource;
    out_ = &out;
    fill(0, 0, 0, periods_.least());
  }

 private:
  void fill(int level, Time bin, Time x0, Time width) {
    Time x = x0;
    Time end = x0 + width;
    while (x < end) {
      Time rest = end - x;
      Time seg = rest < 2 * min_width_ ? rest : uniform(rng_, min_width_, std::min(max_width_, rest));
      if (end - x - seg > 0 && end - x - seg < min_width_) seg = rest;
      if (seg > max_width_ && rest <= max_width_) seg = rest;
      if (level + 1 < periods_.size() && std::bernoulli_distribution(split_)(rng_)) {
        Time b = ratios_[static_cast<std::size_t>(level)];
        for (Time c = 0; c < b; ++c) fill(level + 1, bin * b + c, x, seg);
      } else {
        Time height = periods_.hyperperiod() / periods_.period(level);
        Time row = inverse_[static_cast<std::size_t>(bin * height)];
        out_->push_back({resource_, level, mod_floor(row * periods_.least() + x, periods_.period(level)), seg});
      }
      x += seg;
    }
  }

  const PeriodSet& periods_;
  std::vector<Time> ratios_;
  std::vector<Time> inverse_;
  Time min_width_;
  Time max_width_;
  double split_;
  Rng& rng_;
  int resource_ = 0;
  std::vector<Piece>* out_ = nullptr;
};

// Chain as piece indices plus start offsets relative to the head.
struct Linked {
  int level = 0;
  std::vector<std::size_t> pieces;
  std::vector<Time> rel;
};

// Greedy random linking of same-level pieces into zero-degeneracy chains.
std::vector<Linked> link_pieces(const std::vector<Piece>& pieces, const PeriodSet& periods,
                                int max_length, Rng& rng) {
  std::vector<Linked> chains;
  for (int level = 0; level < periods.size(); ++level) {
    Time period = periods.period(level);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].level == level) open.push_back(i);
    }
    while (!open.empty()) {
      std::size_t slot = pick(rng, open.size());
      std::size_t head = open[slot];
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(slot));
      Linked chain{level, {head}, {0}};
      Time end = pieces[head].width;
      while (static_cast<int>(chain.pieces.size()) < max_length) {
        struct Option {
          Time rel;
          std::size_t slot;
        };
        std::vector<Option> options;
        int last_resource = pieces[chain.pieces.back()].resource;
        for (std::size_t s = 0; s < open.size(); ++s) {
          const Piece& c = pieces[open[s]];
          if (c.resource == last_resource) continue;
          Time rel = mod_floor(c.residue - pieces[head].residue, period);
          if (rel >= end && rel + c.width <= period) options.push_back({rel, s});
        }
        if (options.empty()) break;
        std::sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
          return a.rel != b.rel ? a.rel < b.rel : a.slot < b.slot;
        });
        const Option& o = options[pick(rng, std::min<std::size_t>(3, options.size()))];
        std::size_t next = open[o.slot];
        chain.pieces.push_back(next);
        chain.rel.push_back(o.rel);
        end = o.rel + pieces[next].width;
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(o.slot));
      }
      chains.push_back(std::move(chain));
    }
  }
  return chains;
}

bool over_target(Time busy, Time hyper, Rational target) {
  return static_cast<__int128>(busy) * target.den() > static_cast<__int128>(target.num()) * hyper;
}

}  // namespace

GenConfig GenConfig::desk(Rational target, std::uint64_t seed) {
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  GenConfig c;
  const Time bases[] = {100, 200, 400};
  c.base_period = bases[pick(rng, 3)];
  c.num_periods = 3;
  c.resources = static_cast<int>(uniform(rng, 5, 8));
  c.target_utilization = target;
  c.seed = seed;
  c.max_tasks = target == Rational(1) ? 300 : 200;
  return c;
}

PeriodSet draw_periods(const GenConfig& config, Rng& rng) {
  if (config.num_periods < 1) throw InputError("need at least one period");
  if (config.base_period < 1) throw InputError("base period must be positive");
  std::vector<Time> periods{config.base_period};
  for (int l = 1; l < config.num_periods; ++l) {
    Time ratio = static_cast<std::size_t>(l - 1) < config.ratios.size()
                     ? config.ratios[static_cast<std::size_t>(l - 1)]
                     : uniform(rng, 2, 4);
    if (ratio < 2) throw InputError("period ratios must be at least 2");
    periods.push_back(periods.back() * ratio);
  }
  return PeriodSet(std::move(periods));
}

Generated gen_general(const GenConfig& config) {
  if (config.resources < 1) throw InputError("need at least one resource");
  if (config.target_utilization <= Rational(0) || config.target_utilization > Rational(1)) {
    throw InputError("target utilization must lie in (0, 1]");
  }
  Rng rng(config.seed);
  PeriodSet periods = draw_periods(config, rng);
  Time hyper = periods.hyperperiod();
  for (int attempt = 0;; ++attempt) {
    std::vector<Piece> pieces;
    Carver carver(periods, config, rng);
    for (int m = 0; m < config.resources; ++m) carver.carve(m, pieces);
    std::vector<Linked> chains = link_pieces(pieces, periods, config.max_chain_length, rng);

    std::vector<Time> busy(static_cast<std::size_t>(config.resources), 0);
    for (const Piece& p : pieces) busy[static_cast<std::size_t>(p.resource)] += p.width * (hyper / periods.period(p.level));
    std::vector<char> removed(chains.size(), 0);
    while (true) {
      auto top = std::max_element(busy.begin(), busy.end());
      if (!over_target(*top, hyper, config.target_utilization)) break;
      int m = static_cast<int>(top - busy.begin());
      int longest = -1;
      std::vector<std::size_t> candidates;
      for (std::size_t c = 0; c < chains.size(); ++c) {
        if (removed[c]) continue;
        bool touches = std::any_of(chains[c].pieces.begin(), chains[c].pieces.end(),
                                   [&](std::size_t i) { return pieces[i].resource == m; });
        if (!touches) continue;
        if (chains[c].level > longest) {
          longest = chains[c].level;
          candidates.clear();
        }
        if (chains[c].level == longest) candidates.push_back(c);
      }
      std::size_t victim = candidates[pick(rng, candidates.size())];
      removed[victim] = 1;
      for (std::size_t i : chains[victim].pieces) {
        busy[static_cast<std::size_t>(pieces[i].resource)] -= pieces[i].width * (hyper / periods.period(pieces[i].level));
      }
    }

    std::vector<ChainSpec> specs;
    std::vector<Time> starts;
    std::size_t tasks = 0;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (removed[c]) continue;
      ChainSpec spec;
      spec.period_level = chains[c].level;
      Time head = pieces[chains[c].pieces.front()].residue;
      for (std::size_t i = 0; i < chains[c].pieces.size(); ++i) {
        const Piece& p = pieces[chains[c].pieces[i]];
        spec.tasks.push_back({p.resource, p.width});
        starts.push_back(head + chains[c].rel[i]);
      }
      tasks += spec.tasks.size();
      specs.push_back(std::move(spec));
    }
    if (config.max_tasks > 0 && tasks > static_cast<std::size_t>(config.max_tasks) && attempt < 100) continue;
    Generated g{Instance(periods, config.resources, std::move(specs)), Schedule{std::move(starts)}, {}};
    g.filler.assign(static_cast<std::size_t>(g.instance.num_chains()), 0);
    return g;
  }
}

NetworkKind parse_network_kind(std::string_view name) {
  if (name == "star") return NetworkKind::star;
  if (name == "triangle") return NetworkKind::triangle;
  if (name == "bridge") return NetworkKind::bridge;
  if (name == "stubbed-line" || name == "stubbed_line") return NetworkKind::stubbed_line;
  if (name == "pair") return NetworkKind::pair;
  throw InputError("unknown topology '" + std::string(name) + "'");
}

std::string_view network_kind_name(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::star: return "star";
    case NetworkKind::triangle: return "triangle";
    case NetworkKind::bridge: return "bridge";
    case NetworkKind::stubbed_line: return "stubbed-line";
    case NetworkKind::pair: return "pair";
  }
  return "star";
}

Network build_network(NetworkKind kind, int size) {
  if (size < 1 && kind != NetworkKind::pair) throw InputError("topology size must be positive");
  Network net;
  std::vector<std::pair<int, int>> edges;
  auto attach = [&](int sw, int count) {
    for (int e = 0; e < count; ++e) {
      edges.push_back({sw, net.nodes});
      net.endpoints.push_back(net.nodes++);
    }
  };
  switch (kind) {
    case NetworkKind::star:
      net.nodes = 1;
      attach(0, size);
      break;
    case NetworkKind::triangle:
      net.nodes = 3;
      edges = {{0, 1}, {1, 2}, {0, 2}};
      for (int s = 0; s < 3; ++s) attach(s, size);
      break;
    case NetworkKind::bridge:
      net.nodes = 2;
      edges = {{0, 1}};
      for (int s = 0; s < 2; ++s) attach(s, size);
      break;
    case NetworkKind::stubbed_line:
      net.nodes = size;
      for (int s = 0; s + 1 < size; ++s) edges.push_back({s, s + 1});
      for (int s = 0; s < size; ++s) attach(s, 1);
      break;
    case NetworkKind::pair:
      net.nodes = 2;
      edges = {{0, 1}};
      net.endpoints = {0, 1};
      break;
  }
  for (auto [u, v] : edges) {
    net.links.push_back({u, v});
    net.links.push_back({v, u});
  }
  return net;
}

std::vector<int> shortest_path(const Network& network, int from, int to) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(network.nodes));
  for (auto [u, v] : network.links) adj[static_cast<std::size_t>(u)].push_back(v);
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> parent(static_cast<std::size_t>(network.nodes), -2);
  std::deque<int> queue{from};
  parent[static_cast<std::size_t>(from)] = -1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (parent[static_cast<std::size_t>(v)] == -2) {
        parent[static_cast<std::size_t>(v)] = u;
        queue.push_back(v);
      }
    }
  }
  if (parent[static_cast<std::size_t>(to)] == -2) return {};
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

Generated gen_topology(const TopConfig& config) {
  Rng rng(config.periods.seed);
  PeriodSet periods = draw_periods(config.periods, rng);
  Network net = build_network(config.kind, config.size);
  if (net.endpoints.size() < 2) throw InputError("topology needs at least two endpoints");
  auto resources = static_cast<int>(net.links.size());
  Time w = periods.least();
  Time hyper = periods.hyperperiod();
  Time lo = config.min_message > 0 ? config.min_message : std::max<Time>(1, w / 50);
  Time hi = config.max_message > 0 ? config.max_message : std::max<Time>(lo, w / 10);
  std::vector<ResourceTimeline> timelines(static_cast<std::size_t>(resources), ResourceTimeline(periods));
  std::vector<Time> busy(static_cast<std::size_t>(resources), 0);
  auto link_of = [&](int u, int v) {
    for (int r = 0; r < resources; ++r) {
      if (net.links[static_cast<std::size_t>(r)] == std::pair<int, int>{u, v}) return r;
    }
    throw InputError("route uses a missing link");
  };

  std::vector<ChainSpec> specs;
  std::vector<Time> starts;
  std::vector<char> filler;
  auto mean_reached = [&] {
    Time total = std::accumulate(busy.begin(), busy.end(), Time{0});
    return static_cast<__int128>(total) * config.message_utilization.den() >=
           static_cast<__int128>(config.message_utilization.num()) * hyper * resources;
  };
  int failures = 0;
  while (!mean_reached() && failures < 500) {
    std::size_t a = pick(rng, net.endpoints.size());
    std::size_t b = pick(rng, net.endpoints.size() - 1);
    if (b >= a) ++b;
    std::vector<int> path = shortest_path(net, net.endpoints[a], net.endpoints[b]);
    if (path.empty()) throw InputError("disconnected endpoints");
    std::vector<int> route;
    for (std::size_t i = 1; i < path.size(); ++i) route.push_back(link_of(path[i - 1], path[i]));
    int level = static_cast<int>(uniform(rng, 0, periods.size() - 1));
    Time period = periods.period(level);
    Time p = uniform(rng, lo, hi);
    std::vector<Time> placed;
    for (Time from = 0; from < period;) {
      std::optional<Time> s = timelines[static_cast<std::size_t>(route[0])].earliest_fit(level, p, from);
      if (!s || *s >= period) break;
      std::vector<Time> trial{*s};
      for (std::size_t i = 1; i < route.size(); ++i) {
        std::optional<Time> t = timelines[static_cast<std::size_t>(route[i])].earliest_fit(level, p, trial.back() + p);
        if (!t) break;
        trial.push_back(*t);
      }
      if (trial.size() == route.size() && trial.back() + p - trial.front() <= period) {
        placed = std::move(trial);
        break;
      }
      from = *s + 1;
    }
    if (placed.empty()) {
      ++failures;
      continue;
    }
    ChainSpec spec{level, {}};
    for (std::size_t i = 0; i < route.size(); ++i) {
      auto r = static_cast<std::size_t>(route[i]);
      timelines[r].place(level, placed[i], p);
      busy[r] += p * (hyper / period);
      spec.tasks.push_back({route[i], p});
      starts.push_back(placed[i]);
    }
    specs.push_back(std::move(spec));
    filler.push_back(0);
  }

  // Fillers: free runs level by level, each run split into pieces of at most w.
  for (int r = 0; r < resources; ++r) {
    ResourceTimeline& tl = timelines[static_cast<std::size_t>(r)];
    for (int level = 0; level < periods.size(); ++level) {
      Time period = periods.period(level);
      CyclicBitmap free_map = tl.level_map(level);
      std::vector<std::pair<Time, Time>> runs;
      Time anchor = free_map.first_set(0, period);
      if (anchor == period) {
        runs.push_back({0, period});
      } else {
        Time off = 0;
        while (off < period) {
          Time gap = free_map.first_clear(anchor + off, period - off);
          if (gap == period - off) break;
          off += gap;
          Time run = free_map.first_set(anchor + off, period - off);
          runs.push_back({mod_floor(anchor + off, period), run});
          off += run;
        }
      }
      for (auto [start, len] : runs) {
        for (Time done = 0; done < len;) {
          Time piece = std::min(w, len - done);
          Time s = mod_floor(start + done, period);
          tl.place(level, s, piece);
          busy[static_cast<std::size_t>(r)] += piece * (hyper / period);
          specs.push_back({level, {{r, piece}}});
          starts.push_back(s);
          filler.push_back(1);
          done += piece;
        }
      }
    }
  }
  return {Instance(periods, resources, std::move(specs)), Schedule{std::move(starts)}, std::move(filler)};
}

Generated gen_theory(const TheoryConfig& config) {
  const GenConfig& gen = config.gen;
  if (gen.resources < 1) throw InputError("need at least one resource");
  Rng rng(gen.seed);
  PeriodSet periods = draw_periods(gen, rng);
  int resources = gen.resources;
  std::vector<int> parent(static_cast<std::size_t>(resources), -1);
  std::vector<int> depth(static_cast<std::size_t>(resources), 0);
  for (int m = 1; m < resources; ++m) {
    int p = config.kind == Topology::Kind::line ? m - 1 : static_cast<int>(uniform(rng, 0, m - 1));
    parent[static_cast<std::size_t>(m)] = p;
    depth[static_cast<std::size_t>(m)] = depth[static_cast<std::size_t>(p)] + 1;
  }
  std::vector<Piece> pieces;
  Carver(periods, gen, rng).carve(0, pieces);
  Time hyper = periods.hyperperiod();
  Time busy = 0;
  for (const Piece& p : pieces) busy += p.width * (hyper / periods.period(p.level));
  std::vector<char> removed(pieces.size(), 0);
  while (over_target(busy, hyper, gen.target_utilization)) {
    int longest = -1;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (removed[i]) continue;
      if (pieces[i].level > longest) {
        longest = pieces[i].level;
        candidates.clear();
      }
      if (pieces[i].level == longest) candidates.push_back(i);
    }
    std::size_t victim = candidates[pick(rng, candidates.size())];
    removed[victim] = 1;
    busy -= pieces[victim].width * (hyper / periods.period(pieces[victim].level));
  }
  Time widest = 1;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!removed[i]) widest = std::max(widest, pieces[i].width);
  }
  std::vector<ChainSpec> specs;
  CoreSchedule root;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (removed[i]) continue;
    const Piece& piece = pieces[i];
    Time period = periods.period(piece.level);
    int reach = static_cast<int>(std::min<Time>((period - piece.width) / widest + 1, resources));
    std::vector<int> path;
    if (config.kind == Topology::Kind::line) {
      int length = static_cast<int>(uniform(rng, 1, reach));
      for (int m = 0; m < length; ++m) path.push_back(m);
    } else {
      std::vector<int> ends;
      for (int m = 0; m < resources; ++m) {
        if (depth[static_cast<std::size_t>(m)] + 1 <= reach) ends.push_back(m);
      }
      for (int v = ends[pick(rng, ends.size())]; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
      std::reverse(path.begin(), path.end());
    }
    ChainSpec spec{piece.level, {}};
    for (int m : path) spec.tasks.push_back({m, piece.width});
    for (std::size_t t = 0; t < path.size(); ++t) root.offset.push_back(piece.residue);
    specs.push_back(std::move(spec));
  }
  Instance instance(periods, resources, std::move(specs), Topology{config.kind, parent});
  OffsetSchedule witness = offset_schedule_tree(instance, root);
  Generated g{std::move(instance), std::move(witness.schedule), {}};
  g.filler.assign(static_cast<std::size_t>(g.instance.num_chains()), 0);
  return g;
}

Instance gen_3partition(int n, Time bound, const std::vector<Time>& items) {
  if (n < 1 || bound < 1) throw InputError("3-partition needs n >= 1 and B >= 1");
  if (items.size() != static_cast<std::size_t>(3 * n)) throw InputError("3-partition needs 3n items");
  Time total = 0;
  for (Time a : items) {
    if (4 * a <= bound || 2 * a >= bound) throw InputError("3-partition items must satisfy B/4 < a < B/2");
    total += a;
  }
  if (total != n * bound) throw InputError("3-partition items must sum to nB");
  std::vector<Time> periods{2 * bound};
  if (n > 1) periods.push_back(2 * bound * n);
  int item_level = n > 1 ? 1 : 0;
  std::vector<ChainSpec> chains;
  chains.push_back({0, {{0, 2 * bound}, {1, bound}}});
  for (Time a : items) chains.push_back({item_level, {{1, a}}});
  return Instance(PeriodSet(std::move(periods)), 2, std::move(chains));
}

}  // namespace perisched
