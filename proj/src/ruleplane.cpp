#include "paco/ruleplane.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace paco {

std::string action_name(ActionKind a) {
    switch (a) {
        case ActionKind::Forward: return "forward";
        case ActionKind::Pop: return "pop";
        case ActionKind::Insert: return "insert";
        case ActionKind::Unfold: return "unfold";
    }
    return "?";
}

const Rule* RuleTable::find_pid(const NodeId& node, int pid) const {
    std::string val = std::to_string(pid);
    for (const auto& r : rules)
        if (r.node == node && r.match_kind == MatchKind::Pid && r.match_value == val) return &r;
    return nullptr;
}

const Rule* RuleTable::find_fid(const NodeId& node, const std::string& fid) const {
    for (const auto& r : rules)
        if (r.node == node && r.match_kind == MatchKind::Fid && r.match_value == fid) return &r;
    return nullptr;
}

std::map<NodeId, int> RuleTable::occupancy() const {
    std::map<NodeId, int> occ;
    for (const auto& r : rules) ++occ[r.node];
    return occ;
}

void RuleTable::sort() {
    std::stable_sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
        if (a.node != b.node) return a.node < b.node;
        if (a.match_kind != b.match_kind) return a.match_kind < b.match_kind;
        return a.match_value < b.match_value;
    });
}

std::string RuleTable::dump_csv() const {
    std::ostringstream out;
    out << "node,match_kind,match_value,action,arg\n";
    for (const auto& r : rules) {
        out << r.node << ',' << (r.match_kind == MatchKind::Pid ? "pid" : "fid") << ','
            << r.match_value << ',' << action_name(r.action) << ',';
        if (r.action == ActionKind::Insert || r.action == ActionKind::Unfold) {
            out << "sl:";
            for (size_t i = 0; i < r.label_list.size(); ++i) {
                if (i) out << '|';
                out << r.label_list[i];
            }
        } else {
            out << r.outport;
        }
        out << '\n';
    }
    return out.str();
}

int PidAllocator::mint() {
    if (next_ > space_) throw PidSpaceExhausted(next_, space_);
    return next_++;
}

std::vector<int> assign_pids(std::vector<Pathlet>& pathlets, int pid_space) {
    int n = static_cast<int>(pathlets.size());
    std::vector<std::set<NodeId>> rn(n);
    for (int i = 0; i < n; ++i) {
        auto nodes = pathlets[i].rule_nodes();
        rn[i] = std::set<NodeId>(nodes.begin(), nodes.end());
    }
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool conflict = std::any_of(rn[i].begin(), rn[i].end(),
                                        [&](const NodeId& v) { return rn[j].count(v) > 0; });
            if (conflict) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return adj[a].size() > adj[b].size();
    });
    std::vector<int> pid(n, 0);
    for (int i : order) {
        std::set<int> taken;
        for (int j : adj[i])
            if (pid[j]) taken.insert(pid[j]);
        int p = 1;
        while (taken.count(p)) ++p;
        if (p > pid_space) throw PidSpaceExhausted(p, pid_space);
        pid[i] = p;
    }
    for (int i = 0; i < n; ++i) pathlets[i].pid = pid[i];
    return pid;
}

std::vector<Rule> synthesize_pathlet_rules(const Pathlet& pathlet, const Topology& topo) {
    if (pathlet.pid <= 0) throw Error("pathlet has no pid assigned");
    std::vector<Rule> rules;
    std::string pid = std::to_string(pathlet.pid);
    if (pathlet.kind == PathletKind::Representative) {
        Rule r;
        r.node = pathlet.head();
        r.match_kind = MatchKind::Pid;
        r.match_value = pid;
        r.action = ActionKind::Unfold;
        for (const auto& part : pathlet.expansion) r.label_list.push_back(part.pid);
        rules.push_back(std::move(r));
        return rules;
    }
    int n = pathlet.length();
    for (int k = 0; k < n; ++k) {
        if (!topo.has_link(pathlet.nodes[k], pathlet.nodes[k + 1]))
            throw MissingLink("pathlet hop off topology");
        Rule r;
        r.node = pathlet.nodes[k];
        r.match_kind = MatchKind::Pid;
        r.match_value = pid;
        r.action = (k == n - 1) ? ActionKind::Pop : ActionKind::Forward;
        r.outport = pathlet.nodes[k + 1];
        rules.push_back(std::move(r));
    }
    return rules;
}

std::vector<Rule> synthesize_flow_rules(const FlowSpec& flow, const Concatenation& conc,
                                        const Topology& topo) {
    (void)topo;
    std::vector<Rule> rules;
    Rule ins;
    ins.node = conc.path.head();
    ins.match_kind = MatchKind::Fid;
    ins.match_value = flow.fid;
    ins.action = ActionKind::Insert;
    ins.label_list = conc.label_list();
    ins.outport = conc.parts.front().nodes[1];
    rules.push_back(std::move(ins));

    Rule egress;
    egress.node = conc.path.tail();
    egress.match_kind = MatchKind::Fid;
    egress.match_value = flow.fid;
    egress.action = ActionKind::Forward;
    rules.push_back(std::move(egress));
    return rules;
}

CapacityReport table_load(const Topology& topo, const std::vector<Rule>& rules) {
    CapacityReport rep;
    for (const auto& v : topo.nodes()) rep.occupancy[v] = 0;
    for (const auto& r : rules) ++rep.occupancy[r.node];
    for (const auto& [v, occ] : rep.occupancy)
        if (topo.has_node(v) && occ > topo.free_capacity(v)) rep.overflow.push_back(v);
    return rep;
}

std::vector<NodeId> simulate_forward(const Topology& topo, const RuleTable& table,
                                     const std::string& fid, const NodeId& injected_at) {
    std::vector<NodeId> trace{injected_at};
    std::vector<int> stack;  // front = top
    NodeId node = injected_at;
    size_t max_steps = topo.nodes().size() * 4 + 16;
    for (size_t step = 0; step < max_steps; ++step) {
        if (stack.empty()) {
            const Rule* r = table.find_fid(node, fid);
            if (!r) throw NoMatch("no fid rule at " + node + " for " + fid);
            if (r->action == ActionKind::Insert) {
                stack = r->label_list;
                continue;  // rematch on the freshly pushed top at this node
            }
            if (r->action == ActionKind::Forward) return trace;  // egress delivery
            throw NoMatch("unexpected fid action at " + node);
        }
        const Rule* r = table.find_pid(node, stack.front());
        if (!r) throw NoMatch("no pid rule at " + node + " for label " +
                              std::to_string(stack.front()));
        switch (r->action) {
            case ActionKind::Forward:
                node = r->outport;
                trace.push_back(node);
                break;
            case ActionKind::Pop:
                stack.erase(stack.begin());
                node = r->outport;
                trace.push_back(node);
                break;
            case ActionKind::Unfold: {
                std::vector<int> expanded = r->label_list;
                stack.erase(stack.begin());
                stack.insert(stack.begin(), expanded.begin(), expanded.end());
                break;
            }
            default:
                throw NoMatch("unexpected pid action at " + node);
        }
    }
    throw LoopDetected("forwarding did not terminate for " + fid);
}

double rule_saving(const std::map<NodeId, int>& paco_occupancy,
                   const std::map<NodeId, int>& baseline_occupancy,
                   const std::vector<NodeId>& nodes) {
    long paco = 0, base = 0;
    for (const auto& v : nodes) {
        auto p = paco_occupancy.find(v);
        if (p != paco_occupancy.end()) paco += p->second;
        auto b = baseline_occupancy.find(v);
        if (b != baseline_occupancy.end()) base += b->second;
    }
    if (base == 0) throw Error("rule_saving undefined: baseline occupancy is zero");
    return (1.0 - static_cast<double>(paco) / static_cast<double>(base)) * 100.0;
}

}  // namespace paco
