#include "paco/baselines.hpp"

#include <queue>

namespace paco {

std::map<NodeId, int> hop_by_hop_rules(const std::vector<Path>& paths) {
    std::map<NodeId, int> occ;
    for (const auto& p : paths)
        for (const auto& v : p.nodes) ++occ[v];
    return occ;
}

int hop_sr_labels(const Path& path) { return static_cast<int>(path.nodes.size()); }

static std::map<NodeId, int> hop_distances(const Topology& topo, const NodeId& src) {
    std::map<NodeId, int> dist;
    std::queue<NodeId> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (const auto& w : topo.neighbors(v)) {
            if (dist.count(w)) continue;
            dist[w] = dist[v] + 1;
            q.push(w);
        }
    }
    return dist;
}

MiddlepointResult middlepoint_concat(const Topology& topo, const Path& path, int max_segments) {
    if (max_segments < 1) throw Error("max_segments must be >= 1");
    int n = static_cast<int>(path.nodes.size());
    // segment (i, j) is admissible iff path[i..j] is itself a shortest path,
    // i.e. its hop count equals the graph distance between its endpoints
    std::vector<std::map<NodeId, int>> dist(n);
    for (int i = 0; i < n; ++i) dist[i] = hop_distances(topo, path.nodes[i]);
    auto shortest = [&](int i, int j) {
        auto it = dist[i].find(path.nodes[j]);
        return it != dist[i].end() && it->second == j - i;
    };
    // dp[j] = min segments to reach node index j
    const int INF = n + 10;
    std::vector<int> dp(n, INF);
    dp[0] = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (dp[i] < INF && shortest(i, j)) dp[j] = std::min(dp[j], dp[i] + 1);
    MiddlepointResult r;
    if (dp[n - 1] <= max_segments) {
        r.success = true;
        r.labels = dp[n - 1];
    }
    return r;
}

}  // namespace paco
