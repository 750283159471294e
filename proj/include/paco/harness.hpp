#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "paco/baselines.hpp"
#include "paco/concat.hpp"
#include "paco/lagrangian.hpp"
#include "paco/net_model.hpp"
#include "paco/ruleplane.hpp"
#include "paco/workload.hpp"

namespace paco {

struct ExperimentConfig {
    std::string topology_file;
    int m = 1;
    std::uint64_t seed = 0;
    std::array<double, 4> type_weights = {1, 1, 1, 1};
    int k = 3;
    int max_len = 4;
    int sample_per_pair = 20;
    double epsilon_star = 1e-6;
    int stall_limit = 30;
    int rounds = 10;
    int hard_iteration_cap = 500;
    int capacity_default = 2000;
    int m_max = 3;
    int pid_space = 256;
    std::string out_dir;

    SolverConfig solver() const;
    CandidateGenParams candidate_gen() const;
};

/// key=value config file; unknown keys rejected.
ExperimentConfig load_config(const std::string& path);

struct SchemeStats {
    int max_rules = 0;
    double avg_rules = 0;
};

struct MetricsReport {
    size_t paths_count = 0;
    double success_fraction = 0;
    SchemeStats hop_by_hop;  // over core nodes
    SchemeStats paco;        // over core nodes
    double r_avgsave = 0;    // percent, core nodes, PACO vs Hop-by-Hop
    double middlepoint_success_fraction = 0;
    double mean_labels_paco_post = 0;
    double mean_labels_hopsr = 0;
    std::vector<std::pair<int, double>> ccdf_paco_pre;
    std::vector<std::pair<int, double>> ccdf_paco_post;
    std::vector<std::pair<int, double>> ccdf_hopsr;
};

struct PerPathMetrics {
    int labels_pre = 0;      // part count before nesting
    int labels_post = 0;     // ingress label count
    int hopsr_labels = 0;
    bool middlepoint_ok = false;
    int middlepoint_labels = 0;
    bool concatenated = false;
};

struct ExperimentResult {
    Topology topo;
    DesiredPathSet desired;
    SelectionOutcome outcome;
    std::vector<Pathlet> installed;  // selected pathlets + minted representatives
    std::vector<Concatenation> concatenations;  // parallel to desired.paths; empty when uncovered
    RuleTable rules;
    std::map<NodeId, int> paco_core_occupancy;  // pid-match rules per node
    std::map<NodeId, int> hbh_core_occupancy;   // paths traversing the node as intermediate
    std::vector<NodeId> core_nodes;
    std::vector<PerPathMetrics> per_path;
    MetricsReport report;
};

/// Full pipeline: workload, selection, concatenation, rule synthesis, and a
/// hard forwarding round-trip check for every concatenated path.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<std::pair<int, double>> emit_ccdf(const std::vector<int>& label_counts);

std::string compare_schemes_csv(const MetricsReport& report);
std::string compare_schemes_text(const MetricsReport& report);

/// Write the run artifacts (per-path CSV, CCDF, rules, occupancy, solver
/// trace, concatenation dump, report) into config.out_dir.
void write_outputs(const ExperimentResult& result, const std::string& out_dir);

/// Connected n-node subgraph grown by BFS from `start` (lexicographically
/// smallest node when empty); emitted in directed edge-list form.
std::string extract_subgraph(const Topology& topo, int n, const NodeId& start);

std::string format_double(double v);

/// Whole-file read; throws Error when the file cannot be opened.
std::string read_file(const std::string& path);

}  // namespace paco
