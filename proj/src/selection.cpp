#include "paco/selection.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace paco {

std::string constraint_name(Constraint c) {
    switch (c) {
        case Constraint::EdgeCover: return "EdgeCover";
        case Constraint::LengthMatch: return "LengthMatch";
        case Constraint::LabelBound: return "LabelBound";
        case Constraint::Linking: return "Linking";
        case Constraint::Capacity: return "Capacity";
        case Constraint::Binary: return "Binary";
    }
    return "?";
}

std::vector<Placement> placements_on_path(const Path& path,
                                          const std::vector<Pathlet>& candidates) {
    std::unordered_map<std::string, std::vector<int>> by_seq;
    for (size_t i = 0; i < candidates.size(); ++i)
        by_seq[path_to_string(candidates[i].nodes)].push_back(static_cast<int>(i));
    std::vector<Placement> out;
    int n = static_cast<int>(path.nodes.size());
    for (int s = 0; s < n - 1; ++s) {
        std::string key = path.nodes[s];
        for (int e = s + 1; e < n; ++e) {
            key += ' ';
            key += path.nodes[e];
            auto it = by_seq.find(key);
            if (it == by_seq.end()) continue;
            for (int c : it->second) out.push_back({c, s, e - s});
        }
    }
    std::sort(out.begin(), out.end(), [](const Placement& a, const Placement& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.cand < b.cand;
    });
    return out;
}

std::optional<Tiling> tile_min_cost(int path_len, const std::vector<Placement>& placements,
                                    int m_max, const std::function<double(int)>& cand_cost,
                                    const std::function<bool(int)>& allowed) {
    const double INF = std::numeric_limits<double>::infinity();
    // by_start[s]: placements beginning at link offset s, sorted by cand
    std::vector<std::vector<Placement>> by_start(path_len);
    for (const auto& pl : placements)
        if (allowed(pl.cand)) by_start[pl.start].push_back(pl);
    // f[pos][j]: min cost to tile links [pos, path_len) with at most j parts
    std::vector<std::vector<double>> f(path_len + 1, std::vector<double>(m_max + 1, INF));
    for (int j = 0; j <= m_max; ++j) f[path_len][j] = 0;
    for (int pos = path_len - 1; pos >= 0; --pos) {
        for (int j = 1; j <= m_max; ++j) {
            double best = INF;
            for (const auto& pl : by_start[pos]) {
                double rest = f[pos + pl.len][j - 1];
                if (rest == INF) continue;
                best = std::min(best, cand_cost(pl.cand) + rest);
            }
            f[pos][j] = best;
        }
    }
    if (f[0][m_max] == INF) return std::nullopt;
    double opt = f[0][m_max];
    int parts = m_max;
    while (parts > 1 && f[0][parts - 1] == opt) --parts;
    Tiling tiling;
    tiling.cost = opt;
    int pos = 0, budget = parts;
    while (pos < path_len) {
        bool advanced = false;
        for (const auto& pl : by_start[pos]) {
            if (budget == 0) break;
            double rest = f[pos + pl.len][budget - 1];
            if (rest != std::numeric_limits<double>::infinity() &&
                cand_cost(pl.cand) + rest == f[pos][budget]) {
                tiling.cands.push_back(pl.cand);
                pos += pl.len;
                --budget;
                advanced = true;
                break;
            }
        }
        if (!advanced) return std::nullopt;  // unreachable when DP succeeded
    }
    return tiling;
}

ViolationReport check_feasible(const SelectionInstance& instance, const SelectionSolution& sol) {
    const auto& paths = instance.paths;
    const auto& cands = instance.candidates;
    if (sol.parts.size() != paths.size() || sol.y.size() != paths.size() ||
        sol.t.size() != cands.size())
        throw DimensionMismatch("solution dimensions do not match instance");
    ViolationReport report;
    long n_paths = static_cast<long>(paths.size());
    std::vector<long> uses(cands.size(), 0);
    for (size_t p = 0; p < paths.size(); ++p) {
        const Path& path = paths[p];
        std::set<int> dedup;
        std::map<Link, int> link_cover;
        long len_sum = 0;
        for (int c : sol.parts[p]) {
            if (!dedup.insert(c).second) {
                report.push_back({Constraint::Binary,
                                  "x duplicate cand " + std::to_string(c) + " path " +
                                      std::to_string(p),
                                  1});
                continue;
            }
            ++uses[c];
            len_sum += cands[c].length();
            for (size_t i = 0; i + 1 < cands[c].nodes.size(); ++i)
                ++link_cover[{cands[c].nodes[i], cands[c].nodes[i + 1]}];
        }
        const auto path_link_list = path.links();
        std::set<Link> path_links(path_link_list.begin(), path_link_list.end());
        for (const auto& [link, cnt] : link_cover) {
            int b = path_links.count(link) ? 1 : 0;
            if (cnt > b)
                report.push_back({Constraint::EdgeCover,
                                  "link (" + link.first + "," + link.second + ") path " +
                                      std::to_string(p),
                                  static_cast<double>(cnt - b)});
        }
        long lhs = static_cast<long>(path.length()) * (1 - sol.y[p]);
        if (lhs != len_sum)
            report.push_back({Constraint::LengthMatch, "path " + std::to_string(p),
                              static_cast<double>(len_sum - lhs)});
        if (static_cast<int>(dedup.size()) > instance.m_max)
            report.push_back({Constraint::LabelBound, "path " + std::to_string(p),
                              static_cast<double>(dedup.size() - instance.m_max)});
    }
    for (size_t c = 0; c < cands.size(); ++c) {
        if (uses[c] > n_paths * sol.t[c])
            report.push_back({Constraint::Linking, "cand " + std::to_string(c),
                              static_cast<double>(uses[c] - n_paths * sol.t[c])});
    }
    std::map<NodeId, long> demand;
    for (size_t c = 0; c < cands.size(); ++c) {
        if (!sol.t[c]) continue;
        for (const auto& v : cands[c].rule_nodes()) ++demand[v];
    }
    for (const auto& [v, d] : demand) {
        if (d > instance.capacity(v))
            report.push_back({Constraint::Capacity, "node " + v,
                              static_cast<double>(d - instance.capacity(v))});
    }
    return report;
}

long objective(const SelectionInstance& instance, const SelectionSolution& sol) {
    (void)instance;
    long z = 0;
    for (char v : sol.y) z += v;
    return z;
}

SelectionSolution exact_solve(const SelectionInstance& instance, ExactLimits limits) {
    int nc = static_cast<int>(instance.candidates.size());
    int np = static_cast<int>(instance.paths.size());
    if (nc > limits.max_candidates || np > limits.max_paths)
        throw TooLarge("instance exceeds exact-solver limits");

    std::vector<std::vector<Placement>> pls(np);
    for (int p = 0; p < np; ++p) pls[p] = placements_on_path(instance.paths[p], instance.candidates);

    // per-candidate rule demand, for capacity pruning
    std::vector<std::vector<NodeId>> rule_nodes(nc);
    for (int c = 0; c < nc; ++c) rule_nodes[c] = instance.candidates[c].rule_nodes();

    auto capacity_ok = [&](std::uint32_t mask) {
        std::map<NodeId, int> demand;
        for (int c = 0; c < nc; ++c) {
            if (!(mask >> c & 1)) continue;
            for (const auto& v : rule_nodes[c])
                if (++demand[v] > instance.capacity(v)) return false;
        }
        return true;
    };

    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << nc); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
    });

    long best_obj = np + 1;
    int best_card = nc + 1;
    std::uint32_t best_mask = 0;
    auto zero_cost = [](int) { return 0.0; };
    for (std::uint32_t mask : masks) {
        int card = __builtin_popcount(mask);
        if (best_obj == 0 && card >= best_card) break;  // cannot improve further
        if (!capacity_ok(mask)) continue;
        long obj = 0;
        for (int p = 0; p < np; ++p) {
            auto t = tile_min_cost(instance.paths[p].length(), pls[p], instance.m_max, zero_cost,
                                   [&](int c) { return (mask >> c & 1) != 0; });
            if (!t) ++obj;
        }
        if (obj < best_obj || (obj == best_obj && card < best_card)) {
            best_obj = obj;
            best_card = card;
            best_mask = mask;
        }
        if (best_obj == 0 && card > best_card) break;
    }

    SelectionSolution sol;
    sol.parts.resize(np);
    sol.y.assign(np, 0);
    sol.t.assign(nc, 0);
    for (int c = 0; c < nc; ++c) sol.t[c] = (best_mask >> c & 1) ? 1 : 0;
    for (int p = 0; p < np; ++p) {
        auto t = tile_min_cost(instance.paths[p].length(), pls[p], instance.m_max, zero_cost,
                               [&](int c) { return (best_mask >> c & 1) != 0; });
        if (t) sol.parts[p] = t->cands;
        else sol.y[p] = 1;
    }
    return sol;
}

}  // namespace paco
