#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perisched/schedule.hpp"

namespace perisched {

struct GenConfig {
  Time base_period = 100;
  int num_periods = 3;
  std::vector<Time> ratios;  // empty: drawn from {2, 3, 4}
  int resources = 6;
  Rational target_utilization{1};
  std::uint64_t seed = 1;
  Time min_width = 0;  // 0: base_period / 12
  Time max_width = 0;  // 0: base_period / 4
  double split_probability = 0.35;
  int max_chain_length = 12;
  int max_tasks = 0;  // 0: unbounded; otherwise carving is redrawn until it fits

  // Desk-scale GEN analogue: base period and M drawn from the seed.
  static GenConfig desk(Rational target, std::uint64_t seed);
};

struct Generated {
  Instance instance;
  Schedule witness;
  std::vector<char> filler;  // per chain; set for TOP filler chains
};

PeriodSet draw_periods(const GenConfig& config, Rng& rng);

Generated gen_general(const GenConfig& config);

enum class NetworkKind { star, triangle, bridge, stubbed_line, pair };
NetworkKind parse_network_kind(std::string_view name);
std::string_view network_kind_name(NetworkKind kind);

struct Network {
  int nodes = 0;
  std::vector<std::pair<int, int>> links;  // directed; index = resource
  std::vector<int> endpoints;
};

// `size`: endpoints of a star, endpoints per switch for triangle/bridge,
// switches of a stubbed line; ignored for pair.
Network build_network(NetworkKind kind, int size);
// Node path by BFS; ties broken by the lowest node index. Empty if unreachable.
std::vector<int> shortest_path(const Network& network, int from, int to);

struct TopConfig {
  NetworkKind kind = NetworkKind::star;
  int size = 4;
  GenConfig periods;  // base period, ratios and seed
  Rational message_utilization{18, 25};
  Time min_message = 0;  // 0: base_period / 50
  Time max_message = 0;  // 0: base_period / 10
};

Generated gen_topology(const TopConfig& config);

struct TheoryConfig {
  Topology::Kind kind = Topology::Kind::line;
  GenConfig gen;  // periods, resources, root utilization target, seed
};

Generated gen_theory(const TheoryConfig& config);

// Frame chain [(1, 2B), (2, B)] with period 2B and one single-task chain per
// item on resource 2 with period 2nB. Throws InputError unless sum = nB and
// B/4 < a_i < B/2.
Instance gen_3partition(int n, Time bound, const std::vector<Time>& items);
// Degeneracy sum reachable iff the items split into n groups of sum B.
constexpr std::int64_t kThreePartitionTarget = 1;

}  // namespace perisched
