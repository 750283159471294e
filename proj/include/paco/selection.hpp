#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paco/net_model.hpp"

namespace paco {

/// The pathlet-selection ILP data: desired paths, candidate pool, per-node
/// rule-capacity snapshot, and the per-path label bound.
struct SelectionInstance {
    std::vector<Path> paths;
    std::vector<Pathlet> candidates;
    std::map<NodeId, int> capacities;
    int m_max = 3;
    /// Optional per-segment sharing potential (how many node pairs could
    /// route over it); guides feasibility-restoration tie-breaks only.
    std::map<std::vector<NodeId>, double> share_hint;

    int capacity(const NodeId& v) const {
        auto it = capacities.find(v);
        return it == capacities.end() ? 0 : it->second;
    }
};

/// Decision variables. x_{S,P} is stored sparsely: parts[p] lists the
/// candidate indices with x_{S,P}=1.
struct SelectionSolution {
    std::vector<std::vector<int>> parts;
    std::vector<char> y;
    std::vector<char> t;
};

enum class Constraint { EdgeCover, LengthMatch, LabelBound, Linking, Capacity, Binary };

std::string constraint_name(Constraint c);

struct Violation {
    Constraint constraint;
    std::string entity;
    double slack;
};

using ViolationReport = std::vector<Violation>;

/// One placement of a candidate pathlet inside a path: candidate index,
/// start link offset, and link count.
struct Placement {
    int cand;
    int start;
    int len;
};

/// All placements of candidates that occur as contiguous sub-paths of P,
/// sorted by (start, cand).
std::vector<Placement> placements_on_path(const Path& path, const std::vector<Pathlet>& candidates);

struct Tiling {
    std::vector<int> cands;  // in path order
    double cost;
};

/// Exact link tiling of the path with at most m_max parts, minimizing total
/// candidate cost, then part count; deterministic reconstruction. `allowed`
/// filters usable candidates; cost must be non-negative.
std::optional<Tiling> tile_min_cost(int path_len, const std::vector<Placement>& placements,
                                    int m_max, const std::function<double(int)>& cand_cost,
                                    const std::function<bool(int)>& allowed);

ViolationReport check_feasible(const SelectionInstance& instance, const SelectionSolution& sol);

long objective(const SelectionInstance& instance, const SelectionSolution& sol);

struct ExactLimits {
    int max_candidates = 18;
    int max_paths = 12;
};

/// Exhaustive optimum for the selection ILP; minimizes sum(y), then sum(t).
SelectionSolution exact_solve(const SelectionInstance& instance, ExactLimits limits = {});

}  // namespace paco
