#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "paco/selection.hpp"

namespace paco {

struct SolverConfig {
    double epsilon_star = 1e-6;
    int stall_limit = 30;        // T'
    int outer_rounds = 10;       // N
    int hard_iteration_cap = 500;
    double beta_floor = 1e-4;
    std::uint64_t seed = 0;
};

struct SubgradientState {
    std::vector<double> lambda;
    int k = 1;
    double beta = 2.0;
    double z_up = std::numeric_limits<double>::infinity();
    double z_lb = 0.0;  // objective is a count, so 0 is a valid floor
    int stall = 0;      // t'
    double epsilon = std::numeric_limits<double>::infinity();
};

struct IterationRecord {
    int round = 1;
    int k;
    double z_lr;
    double z_fe;
    double z_up;
    double z_lb;
    double eps;
    double beta;
    int stall;
    double lambda_min;  // componentwise minimum after the update
};

struct Sub1Result {
    std::vector<int> parts;  // x-row support for P
    char y;
    double value;
};

struct Sub2Result {
    std::vector<char> t;
    double value;  // -|P^D| * optimum of the knapsack
};

struct OneRoundResult {
    SelectionSolution best;  // R*
    double z_up;
    double z_lb;
    std::vector<IterationRecord> trace;
};

/// Minimize y_P + sum lambda_S x_{S,P} over exact tilings of P (or y_P=1).
Sub1Result solve_sub1_path(const SelectionInstance& instance, int path_index,
                           const std::vector<double>& lambda);

/// Maximize sum lambda_S t_S under per-node rule capacities; exact best-first
/// branch-and-bound with a surrogate fractional bound.
Sub2Result solve_sub2(const SelectionInstance& instance, const std::vector<double>& lambda);

struct LagrangianValue {
    double z_lr;
    std::vector<std::vector<int>> parts;
    std::vector<char> y;
    std::vector<char> t;
};

LagrangianValue lagrangian_value(const SelectionInstance& instance,
                                 const std::vector<double>& lambda);

struct RestoreResult {
    SelectionSolution sol;
    long z_fe;
};

/// Fix the selected set from t and re-tile every path with it. The tiling
/// prefers pathlets already in use (earlier paths or `reuse_bias`); a fresh
/// pathlet is charged its rule count amortized over the number of paths that
/// could share it, so the tiling lands on widely shared segments. Fewer parts
/// breaks remaining ties. Feasibility and z_FE do not depend on these costs.
RestoreResult restore_feasible(const SelectionInstance& instance, const std::vector<char>& t,
                               const std::set<std::vector<NodeId>>& reuse_bias = {});

/// lambda^{k+1} = max(lambda^k + theta * mu, 0). Returns false when the
/// subgradient vanished and the dual step cannot move.
bool subgradient_update(SubgradientState& state, const SelectionInstance& instance,
                        const std::vector<std::vector<int>>& parts, const std::vector<char>& t,
                        double beta_floor);

OneRoundResult one_round_selection(const SelectionInstance& instance, const SolverConfig& config,
                                   const std::set<std::vector<NodeId>>& reuse_bias = {});

struct SelectionOutcome {
    std::vector<Pathlet> selected;            // S^select, accumulated
    std::vector<char> covered;                // per desired path
    std::vector<std::vector<int>> parts;      // indices into `selected`, per covered path
    int rounds_used = 0;
    std::vector<std::vector<IterationRecord>> traces;  // one per round
};

struct CandidateGenParams {
    int k = 3;
    int max_len = 4;
    int sample_per_pair = 20;
};

/// Outer re-selection loop: repeatedly run one_round_selection on the still
/// uncovered paths with fresh per-round candidates, decrementing node
/// capacities by the rules of newly selected pathlets.
SelectionOutcome select_pathlets(const std::vector<Path>& paths, const Topology& topo,
                                 const SolverConfig& config, const CandidateGenParams& gen,
                                 int m_max);

}  // namespace paco
