#include "paco/net_model.hpp"

#include <algorithm>
#include <sstream>

namespace paco {

void Topology::add_node(const NodeId& v) { nodes_.insert(v); }

void Topology::add_link(const NodeId& u, const NodeId& v, LinkAttr attr) {
    if (u == v) throw Error("self-loop link " + u);
    if (!nodes_.count(u) || !nodes_.count(v))
        throw DanglingEndpoint("link (" + u + "," + v + ") references undeclared node");
    links_[{u, v}] = attr;
}

const LinkAttr& Topology::link_attr(const NodeId& u, const NodeId& v) const {
    auto it = links_.find({u, v});
    if (it == links_.end()) throw MissingLink("no link (" + u + "," + v + ")");
    return it->second;
}

std::vector<NodeId> Topology::neighbors(const NodeId& v) const {
    std::vector<NodeId> out;
    for (auto it = links_.lower_bound({v, ""}); it != links_.end() && it->first.first == v; ++it)
        out.push_back(it->first.second);
    return out;  // map order is already ascending
}

int Topology::free_capacity(const NodeId& v) const {
    auto it = free_capacity_.find(v);
    return it == free_capacity_.end() ? default_capacity_ : it->second;
}

void Topology::set_free_capacity(const NodeId& v, int c) {
    if (c < 0) throw Error("negative capacity for node " + v);
    free_capacity_[v] = c;
}

std::vector<Link> Path::links() const {
    std::vector<Link> out;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) out.push_back({nodes[i], nodes[i + 1]});
    return out;
}

std::vector<NodeId> Pathlet::rule_nodes() const {
    if (kind == PathletKind::Representative) return {nodes.front()};
    return std::vector<NodeId>(nodes.begin(), nodes.end() - 1);
}

int Pathlet::rule_demand(const NodeId& v) const {
    if (kind == PathletKind::Representative) return v == nodes.front() ? 1 : 0;
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i] == v) return 1;
    return 0;
}

int Pathlet::rule_count() const {
    return kind == PathletKind::Representative ? 1 : length();
}

Topology parse_topology(const std::string& text) {
    Topology topo;
    bool directed = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    struct PendingLink {
        NodeId u, v;
        LinkAttr attr;
    };
    std::vector<PendingLink> pending;
    bool first_content = true;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (first_content && tok.size() == 1 && (tok[0] == "directed" || tok[0] == "undirected")) {
            directed = (tok[0] == "directed");
            first_content = false;
            continue;
        }
        first_content = false;
        if (tok.size() < 2 || tok.size() > 5) throw ParseError(lineno, "expected 2-5 columns");
        PendingLink pl;
        pl.u = tok[0];
        pl.v = tok[1];
        if (pl.u == pl.v) throw ParseError(lineno, "self-loop link " + pl.u);
        try {
            // column 3 (weight) is accepted but unused
            if (tok.size() >= 3) (void)std::stoi(tok[2]);
            if (tok.size() >= 4) pl.attr.latency = std::stod(tok[3]);
            if (tok.size() >= 5) pl.attr.bandwidth = std::stod(tok[4]);
        } catch (const std::exception&) {
            throw ParseError(lineno, "bad numeric column");
        }
        topo.add_node(pl.u);
        topo.add_node(pl.v);
        pending.push_back(pl);
    }
    for (const auto& pl : pending) {
        topo.add_link(pl.u, pl.v, pl.attr);
        if (!directed) topo.add_link(pl.v, pl.u, pl.attr);
    }
    return topo;
}

Path make_path(const Topology& topo, const std::vector<NodeId>& nodes) {
    if (nodes.size() < 2) throw Error("path needs at least 2 nodes");
    std::set<NodeId> seen;
    for (const auto& v : nodes)
        if (!seen.insert(v).second) throw NotSimple("repeated node " + v);
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!topo.has_link(nodes[i], nodes[i + 1]))
            throw MissingLink("no link (" + nodes[i] + "," + nodes[i + 1] + ")");
    return Path{nodes};
}

std::vector<std::vector<NodeId>> simple_paths(const Topology& topo, const NodeId& src,
                                              const NodeId& dst, int max_len) {
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> cur{src};
    std::set<NodeId> on_path{src};
    // depth-bounded DFS, neighbors visited in ascending node-id order so the
    // result list is deterministic and lexicographically sorted per length
    auto dfs = [&](auto&& self, const NodeId& v) -> void {
        if (v == dst && cur.size() >= 2) {
            out.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) - 1 >= max_len) return;
        for (const auto& w : topo.neighbors(v)) {
            if (on_path.count(w)) continue;
            cur.push_back(w);
            on_path.insert(w);
            self(self, w);
            cur.pop_back();
            on_path.erase(w);
        }
    };
    if (src != dst) dfs(dfs, src);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

CandidateSet enumerate_candidates(const Topology& topo, int k, int max_len, std::uint64_t seed) {
    if (k < 1 || max_len < 1) throw Error("k and max_len must be >= 1");
    CandidateSet cs;
    cs.k = k;
    cs.max_len = max_len;
    cs.seed = seed;
    std::set<std::vector<NodeId>> dedup;
    for (const auto& s : topo.nodes()) {
        for (const auto& d : topo.nodes()) {
            if (s == d) continue;
            auto paths = simple_paths(topo, s, d, max_len);
            int taken = 0;
            for (const auto& p : paths) {
                if (taken >= k) break;
                ++taken;
                if (dedup.insert(p).second) { Pathlet c; c.nodes = p; cs.pathlets.push_back(std::move(c)); }
            }
        }
    }
    return cs;
}

bool is_subsequence(const std::vector<NodeId>& sub, const std::vector<NodeId>& full) {
    if (sub.empty() || sub.size() > full.size()) return false;
    for (size_t i = 0; i + sub.size() <= full.size(); ++i) {
        if (std::equal(sub.begin(), sub.end(), full.begin() + i)) return true;
    }
    return false;
}

bool is_subpath(const Pathlet& pathlet, const Path& path) {
    return is_subsequence(pathlet.nodes, path.nodes);
}

std::string path_to_string(const std::vector<NodeId>& nodes) {
    std::string s;
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (i) s += ' ';
        s += nodes[i];
    }
    return s;
}

}  // namespace paco
