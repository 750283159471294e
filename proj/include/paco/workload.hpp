#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paco/net_model.hpp"

namespace paco {

enum class FlowKind { Protected, Suspicious, Bulk, TimeSensitive };

std::string flow_kind_name(FlowKind k);

struct FlowSpec {
    std::string fid;
    NodeId src;
    NodeId dst;
    FlowKind kind = FlowKind::TimeSensitive;
    std::optional<NodeId> waypoint;  // suspicious only
};

struct PolicyPaths {
    std::vector<Path> paths;
    bool disjoint_fallback = false;  // protected flow, only one path exists
};

struct DesiredPathSet {
    std::vector<Path> paths;
    std::vector<FlowSpec> flow_of;            // parallel to paths
    std::vector<std::string> warnings;        // per-flow policy failures
};

/// splitmix64, used to derive independent per-flow RNG streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// m flows of random kind between every ordered node pair. Flow j of a pair
/// draws from a stream keyed by (pair, j), so the flow list for m is a prefix
/// of the list for m' > m. `weights` biases the four kinds, in enum order.
std::vector<FlowSpec> gen_flows(const Topology& topo, int m, std::uint64_t seed,
                                const std::array<double, 4>& weights = {1, 1, 1, 1});

PolicyPaths policy_path(const Topology& topo, const FlowSpec& flow);

DesiredPathSet build_desired_set(const Topology& topo, const std::vector<FlowSpec>& flows);

/// Minimum-latency path, ties broken lexicographically on node sequence.
Path min_latency_path(const Topology& topo, const NodeId& src, const NodeId& dst);
/// Minimum-hop path, ties broken lexicographically.
Path shortest_hop_path(const Topology& topo, const NodeId& src, const NodeId& dst);
/// Maximum-bottleneck-bandwidth path, ties: fewer hops then lexicographic.
Path widest_path(const Topology& topo, const NodeId& src, const NodeId& dst);
/// Two link-disjoint paths via two shortest-augmenting-path iterations.
PolicyPaths disjoint_pair(const Topology& topo, const NodeId& src, const NodeId& dst);

}  // namespace paco
