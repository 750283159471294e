#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paco/errors.hpp"

namespace paco {

using NodeId = std::string;
using Link = std::pair<NodeId, NodeId>;

struct LinkAttr {
    double bandwidth = 100.0;
    double latency = 1.0;
};

/// Directed network graph with per-node free rule-table capacity and
/// per-link bandwidth/latency attributes.
class Topology {
public:
    void add_node(const NodeId& v);
    void add_link(const NodeId& u, const NodeId& v, LinkAttr attr);

    bool has_node(const NodeId& v) const { return nodes_.count(v) > 0; }
    bool has_link(const NodeId& u, const NodeId& v) const { return links_.count({u, v}) > 0; }
    const LinkAttr& link_attr(const NodeId& u, const NodeId& v) const;

    const std::set<NodeId>& nodes() const { return nodes_; }
    const std::map<Link, LinkAttr>& links() const { return links_; }

    /// Out-neighbors of v in ascending node-id order.
    std::vector<NodeId> neighbors(const NodeId& v) const;

    int free_capacity(const NodeId& v) const;
    void set_free_capacity(const NodeId& v, int c);
    void set_default_capacity(int c) { default_capacity_ = c; }
    int default_capacity() const { return default_capacity_; }

private:
    std::set<NodeId> nodes_;
    std::map<Link, LinkAttr> links_;
    std::map<NodeId, int> free_capacity_;
    int default_capacity_ = 2000;
};

/// Simple directed path: all nodes distinct, every hop a topology link.
struct Path {
    std::vector<NodeId> nodes;

    int length() const { return static_cast<int>(nodes.size()) - 1; }
    const NodeId& head() const { return nodes.front(); }
    const NodeId& tail() const { return nodes.back(); }
    std::vector<Link> links() const;

    bool operator==(const Path& o) const { return nodes == o.nodes; }
    bool operator<(const Path& o) const { return nodes < o.nodes; }
};

enum class PathletKind { Concrete, Representative };

/// A sub-path carrying a locally scoped label. Concrete pathlets demand one
/// rule at every node except the last; a representative pathlet stands for a
/// run of concrete pathlets and demands a single unfold rule at its start.
struct Pathlet {
    std::vector<NodeId> nodes;
    int pid = 0;  // 0 = unassigned
    PathletKind kind = PathletKind::Concrete;
    std::vector<Pathlet> expansion;  // constituents, representative kind only

    int length() const { return static_cast<int>(nodes.size()) - 1; }
    const NodeId& head() const { return nodes.front(); }
    const NodeId& tail() const { return nodes.back(); }

    /// Nodes that carry a rule for this pathlet.
    std::vector<NodeId> rule_nodes() const;
    /// d_{v,S}: rules this pathlet needs at node v.
    int rule_demand(const NodeId& v) const;
    /// Total rule count (= length for concrete, 1 for representative).
    int rule_count() const;

    bool operator==(const Pathlet& o) const { return nodes == o.nodes; }
};

struct CandidateSet {
    std::vector<Pathlet> pathlets;
    int k = 0;
    int max_len = 0;
    std::uint64_t seed = 0;
};

/// Parse the plain-text edge-list topology format. Undirected by default
/// (each line yields both directions); a "directed" header line switches mode.
Topology parse_topology(const std::string& text);

Path make_path(const Topology& topo, const std::vector<NodeId>& nodes);

/// Up to k simple paths of length <= max_len between every ordered node pair,
/// shortest first, ties broken lexicographically. Deterministic.
CandidateSet enumerate_candidates(const Topology& topo, int k, int max_len, std::uint64_t seed);

/// True iff the pathlet's node sequence is a contiguous subsequence of the path.
bool is_subpath(const Pathlet& pathlet, const Path& path);
bool is_subsequence(const std::vector<NodeId>& sub, const std::vector<NodeId>& full);

/// All simple paths src->dst of length <= max_len, DFS with sorted neighbors.
std::vector<std::vector<NodeId>> simple_paths(const Topology& topo, const NodeId& src,
                                              const NodeId& dst, int max_len);

std::string path_to_string(const std::vector<NodeId>& nodes);

}  // namespace paco
