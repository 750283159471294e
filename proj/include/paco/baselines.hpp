#pragma once

#include <map>
#include <vector>

#include "paco/net_model.hpp"

namespace paco {

/// One rule per path at every node it traverses, ingress and egress included.
std::map<NodeId, int> hop_by_hop_rules(const std::vector<Path>& paths);

/// Strict source routing: one output-port label per node on the path.
int hop_sr_labels(const Path& path);

struct MiddlepointResult {
    bool success = false;
    int labels = 0;  // segment count when successful
};

/// Can the path be written as at most max_segments consecutive shortest
/// (minimum-hop) segments between waypoints on it?
MiddlepointResult middlepoint_concat(const Topology& topo, const Path& path, int max_segments);

}  // namespace paco
