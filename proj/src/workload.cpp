#include "paco/workload.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace paco {

std::string flow_kind_name(FlowKind k) {
    switch (k) {
        case FlowKind::Protected: return "protected";
        case FlowKind::Suspicious: return "suspicious";
        case FlowKind::Bulk: return "bulk";
        case FlowKind::TimeSensitive: return "time_sensitive";
    }
    return "?";
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

static std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

namespace {

struct SearchKey {
    double a = 0;
    double b = 0;
    std::vector<NodeId> nodes;

    bool operator<(const SearchKey& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return nodes < o.nodes;
    }
};

// Label-setting search over a key that only gets worse along edges; exact for
// the composite (a, b, lexicographic path) order.
template <typename Extend>
std::optional<SearchKey> best_path_search(const Topology& topo, const NodeId& src,
                                          const NodeId& dst, Extend extend) {
    if (!topo.has_node(src) || !topo.has_node(dst)) throw NoPath("unknown endpoint");
    auto cmp = [](const SearchKey& x, const SearchKey& y) { return y < x; };
    std::priority_queue<SearchKey, std::vector<SearchKey>, decltype(cmp)> pq(cmp);
    std::set<NodeId> done;
    pq.push(SearchKey{0, 0, {src}});
    while (!pq.empty()) {
        SearchKey cur = pq.top();
        pq.pop();
        const NodeId& v = cur.nodes.back();
        if (done.count(v)) continue;
        done.insert(v);
        if (v == dst) return cur;
        for (const auto& w : topo.neighbors(v)) {
            if (done.count(w)) continue;
            if (std::find(cur.nodes.begin(), cur.nodes.end(), w) != cur.nodes.end()) continue;
            SearchKey nxt = cur;
            nxt.nodes.push_back(w);
            extend(nxt, v, w);
            pq.push(std::move(nxt));
        }
    }
    return std::nullopt;
}

}  // namespace

Path min_latency_path(const Topology& topo, const NodeId& src, const NodeId& dst) {
    auto r = best_path_search(topo, src, dst, [&](SearchKey& k, const NodeId& u, const NodeId& v) {
        k.a += topo.link_attr(u, v).latency;
    });
    if (!r) throw NoPath("no path " + src + "->" + dst);
    return Path{r->nodes};
}

Path shortest_hop_path(const Topology& topo, const NodeId& src, const NodeId& dst) {
    auto r = best_path_search(topo, src, dst,
                              [&](SearchKey& k, const NodeId&, const NodeId&) { k.a += 1; });
    if (!r) throw NoPath("no path " + src + "->" + dst);
    return Path{r->nodes};
}

Path widest_path(const Topology& topo, const NodeId& src, const NodeId& dst) {
    auto r = best_path_search(topo, src, dst, [&](SearchKey& k, const NodeId& u, const NodeId& v) {
        double bw = topo.link_attr(u, v).bandwidth;
        // a = -bottleneck; the search seeds a at 0, so the first link sets it
        k.a = (k.nodes.size() == 2) ? -bw : std::max(k.a, -bw);
        k.b += 1;  // b = hops
    });
    if (!r) throw NoPath("no path " + src + "->" + dst);
    return Path{r->nodes};
}

PolicyPaths disjoint_pair(const Topology& topo, const NodeId& src, const NodeId& dst) {
    // unit-capacity max flow, two shortest-augmenting-path iterations
    std::set<Link> used;      // links carrying flow
    auto augment = [&]() -> bool {
        std::map<NodeId, NodeId> parent;
        std::queue<NodeId> q;
        q.push(src);
        parent[src] = src;
        while (!q.empty() && !parent.count(dst)) {
            NodeId v = q.front();
            q.pop();
            std::vector<NodeId> nbrs = topo.neighbors(v);
            // residual reverse edges: (v,u) where (u,v) carries flow
            for (const auto& l : used)
                if (l.second == v) nbrs.push_back(l.first);
            std::sort(nbrs.begin(), nbrs.end());
            for (const auto& w : nbrs) {
                bool forward_free = topo.has_link(v, w) && !used.count({v, w});
                bool reverse = used.count({w, v});
                if (!forward_free && !reverse) continue;
                if (parent.count(w)) continue;
                parent[w] = v;
                q.push(w);
            }
        }
        if (!parent.count(dst)) return false;
        NodeId v = dst;
        while (v != src) {
            NodeId u = parent[v];
            if (used.count({v, u}))
                used.erase({v, u});  // cancel opposing flow
            else
                used.insert({u, v});
            v = u;
        }
        return true;
    };
    if (!augment()) throw NoPath("no path " + src + "->" + dst);
    bool two = augment();
    PolicyPaths out;
    if (!two) {
        out.paths.push_back(shortest_hop_path(topo, src, dst));
        out.disjoint_fallback = true;
        return out;
    }
    // decompose the 2-unit flow into two link-disjoint paths
    for (int i = 0; i < 2; ++i) {
        std::vector<NodeId> seq{src};
        NodeId v = src;
        while (v != dst) {
            NodeId next;
            bool found = false;
            for (const auto& l : used) {
                if (l.first == v) {  // set order makes the pick deterministic
                    next = l.second;
                    found = true;
                    break;
                }
            }
            if (!found) throw Error("flow decomposition failed");
            used.erase({v, next});
            seq.push_back(next);
            v = next;
        }
        // loop-erase any decomposition cycles
        std::vector<NodeId> simple;
        for (const auto& n : seq) {
            auto it = std::find(simple.begin(), simple.end(), n);
            if (it != simple.end()) simple.erase(it + 1, simple.end());
            else simple.push_back(n);
        }
        out.paths.push_back(make_path(topo, simple));
    }
    std::sort(out.paths.begin(), out.paths.end());
    return out;
}

std::vector<FlowSpec> gen_flows(const Topology& topo, int m, std::uint64_t seed,
                                const std::array<double, 4>& weights) {
    double total = weights[0] + weights[1] + weights[2] + weights[3];
    if (total <= 0) throw Error("flow kind weights must not all be zero");
    std::vector<FlowSpec> flows;
    std::vector<NodeId> nodes(topo.nodes().begin(), topo.nodes().end());
    if (nodes.size() < 2) throw Error("topology needs at least 2 nodes");
    for (const auto& s : nodes) {
        for (const auto& d : nodes) {
            if (s == d) continue;
            std::uint64_t pair_key = fnv1a(s + "|" + d);
            for (int j = 0; j < m; ++j) {
                std::uint64_t r = mix_seed(mix_seed(seed, pair_key), static_cast<std::uint64_t>(j));
                FlowSpec f;
                f.src = s;
                f.dst = d;
                f.fid = s + ">" + d + "#" + std::to_string(j);
                double u = static_cast<double>(r >> 11) * 0x1.0p-53 * total;
                int kind = 3;
                double acc = 0;
                for (int t = 0; t < 4; ++t) {
                    acc += weights[t];
                    if (u < acc) {
                        kind = t;
                        break;
                    }
                }
                f.kind = static_cast<FlowKind>(kind);
                if (f.kind == FlowKind::Suspicious) {
                    std::uint64_t r2 = mix_seed(r, 0x5757ULL);
                    std::vector<NodeId> others;
                    for (const auto& n : nodes)
                        if (n != s && n != d) others.push_back(n);
                    if (!others.empty()) f.waypoint = others[r2 % others.size()];
                }
                flows.push_back(std::move(f));
            }
        }
    }
    return flows;
}

static std::optional<Path> waypoint_path(const Topology& topo, const NodeId& src,
                                         const NodeId& dst, const NodeId& w) {
    Path p1, p2;
    try {
        p1 = shortest_hop_path(topo, src, w);
        p2 = shortest_hop_path(topo, w, dst);
    } catch (const NoPath&) {
        return std::nullopt;
    }
    std::vector<NodeId> seq = p1.nodes;
    seq.insert(seq.end(), p2.nodes.begin() + 1, p2.nodes.end());
    // loop erasure, then require the waypoint to have survived
    std::vector<NodeId> simple;
    for (const auto& n : seq) {
        auto it = std::find(simple.begin(), simple.end(), n);
        if (it != simple.end()) simple.erase(it + 1, simple.end());
        else simple.push_back(n);
    }
    if (std::find(simple.begin(), simple.end(), w) == simple.end()) return std::nullopt;
    if (simple.size() < 2) return std::nullopt;
    return make_path(topo, simple);
}

PolicyPaths policy_path(const Topology& topo, const FlowSpec& flow) {
    PolicyPaths out;
    switch (flow.kind) {
        case FlowKind::Protected:
            return disjoint_pair(topo, flow.src, flow.dst);
        case FlowKind::Bulk:
            out.paths.push_back(widest_path(topo, flow.src, flow.dst));
            return out;
        case FlowKind::TimeSensitive:
            out.paths.push_back(min_latency_path(topo, flow.src, flow.dst));
            return out;
        case FlowKind::Suspicious: {
            std::vector<NodeId> candidates;
            if (flow.waypoint) candidates.push_back(*flow.waypoint);
            for (const auto& n : topo.nodes())
                if (n != flow.src && n != flow.dst && (!flow.waypoint || n != *flow.waypoint))
                    candidates.push_back(n);
            for (const auto& w : candidates) {
                if (auto p = waypoint_path(topo, flow.src, flow.dst, w)) {
                    out.paths.push_back(std::move(*p));
                    return out;
                }
            }
            throw NoWaypointPath("no waypoint path " + flow.src + "->" + flow.dst);
        }
    }
    throw Error("unreachable flow kind");
}

DesiredPathSet build_desired_set(const Topology& topo, const std::vector<FlowSpec>& flows) {
    DesiredPathSet out;
    std::set<std::vector<NodeId>> seen;  // src/dst are implied by the sequence
    for (const auto& f : flows) {
        PolicyPaths pp;
        try {
            pp = policy_path(topo, f);
        } catch (const Error& e) {
            out.warnings.push_back(f.fid + ": " + e.what());
            continue;
        }
        if (pp.disjoint_fallback)
            out.warnings.push_back(f.fid + ": no link-disjoint pair, single path kept");
        for (auto& p : pp.paths) {
            if (!seen.insert(p.nodes).second) continue;
            out.paths.push_back(std::move(p));
            out.flow_of.push_back(f);
        }
    }
    return out;
}

}  // namespace paco
