#pragma once

#include <map>
#include <string>
#include <vector>

#include "paco/concat.hpp"
#include "paco/net_model.hpp"
#include "paco/workload.hpp"

namespace paco {

enum class MatchKind { Pid, Fid };
enum class ActionKind { Forward, Pop, Insert, Unfold };

struct Rule {
    NodeId node;
    MatchKind match_kind;
    std::string match_value;  // pid rendered as decimal, or the fid token
    ActionKind action;
    NodeId outport;               // next-hop node, empty for egress deliver
    std::vector<int> label_list;  // Insert/Unfold payload, first element = top
};

std::string action_name(ActionKind a);

struct RuleTable {
    std::vector<Rule> rules;

    /// Rules at `node` matching pid, at most one per (node, pid).
    const Rule* find_pid(const NodeId& node, int pid) const;
    const Rule* find_fid(const NodeId& node, const std::string& fid) const;

    std::map<NodeId, int> occupancy() const;
    /// Stable (node, match_kind, match_value) order for golden dumps.
    void sort();
    std::string dump_csv() const;
};

/// Serialized pid allocator; representative pathlets mint fresh pids here.
class PidAllocator {
public:
    explicit PidAllocator(int pid_space = 256) : space_(pid_space) {}
    int mint();
    int space() const { return space_; }
    void reserve_up_to(int pid) { next_ = std::max(next_, pid + 1); }

private:
    int space_;
    int next_ = 1;
};

/// Assign pids so that two pathlets share one only if their rule-bearing node
/// sets are disjoint. Greedy coloring, highest conflict degree first.
std::vector<int> assign_pids(std::vector<Pathlet>& pathlets, int pid_space = 256);

std::vector<Rule> synthesize_pathlet_rules(const Pathlet& pathlet, const Topology& topo);

std::vector<Rule> synthesize_flow_rules(const FlowSpec& flow, const Concatenation& conc,
                                        const Topology& topo);

struct CapacityReport {
    std::map<NodeId, int> occupancy;
    std::vector<NodeId> overflow;
};

CapacityReport table_load(const Topology& topo, const std::vector<Rule>& rules);

/// Executes the installed rules for one packet of `fid` injected at a node;
/// returns the traversed node sequence. The terminal label stack must be
/// empty, which the caller checks via the returned trace contract.
std::vector<NodeId> simulate_forward(const Topology& topo, const RuleTable& table,
                                     const std::string& fid, const NodeId& injected_at);

/// 1 - sum(paco)/sum(baseline) over `nodes`, as a percentage.
double rule_saving(const std::map<NodeId, int>& paco_occupancy,
                   const std::map<NodeId, int>& baseline_occupancy,
                   const std::vector<NodeId>& nodes);

}  // namespace paco
