#include "paco/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

namespace paco {

Sub1Result solve_sub1_path(const SelectionInstance& instance, int path_index,
                           const std::vector<double>& lambda) {
    const Path& path = instance.paths[path_index];
    auto pls = placements_on_path(path, instance.candidates);
    auto cost = [&](int c) { return lambda[c]; };
    auto tiling = tile_min_cost(path.length(), pls, instance.m_max, cost, [](int) { return true; });
    Sub1Result r;
    if (tiling && tiling->cost < 1.0) {
        r.parts = tiling->cands;
        r.y = 0;
        r.value = tiling->cost;
    } else {
        r.y = 1;
        r.value = 1.0;
    }
    return r;
}

Sub2Result solve_sub2(const SelectionInstance& instance, const std::vector<double>& lambda) {
    int nc = static_cast<int>(instance.candidates.size());
    long np = static_cast<long>(instance.paths.size());
    Sub2Result out;
    out.t.assign(nc, 0);

    // items with zero multiplier contribute nothing; leave them out
    struct Item {
        int cand;
        double gain;
        int weight;  // total rule demand
    };
    std::vector<Item> items;
    std::vector<std::vector<NodeId>> rule_nodes(nc);
    for (int c = 0; c < nc; ++c) {
        rule_nodes[c] = instance.candidates[c].rule_nodes();
        if (lambda[c] > 0)
            items.push_back({c, lambda[c], static_cast<int>(rule_nodes[c].size())});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return a.gain * b.weight > b.gain * a.weight;  // density, descending
    });

    std::map<NodeId, int> used;
    auto fits = [&](int c) {
        for (const auto& v : rule_nodes[c])
            if (used[v] + 1 > instance.capacity(v)) return false;
        return true;
    };
    auto take = [&](int c, int dir) {
        for (const auto& v : rule_nodes[c]) used[v] += dir;
    };

    double best = -1.0;
    std::vector<char> best_t;
    std::vector<char> cur_t(nc, 0);

    // surrogate fractional bound: one aggregated capacity, greedy by density
    auto bound = [&](size_t i, double value) {
        long agg = 0;
        std::map<NodeId, int> caps;
        for (const auto& [v, u] : used) caps[v] = u;
        for (const auto& [v, c] : instance.capacities) {
            auto it = caps.find(v);
            int u = it == caps.end() ? 0 : it->second;
            agg += std::max(0, c - u);
        }
        double b = value;
        for (size_t j = i; j < items.size() && agg > 0; ++j) {
            if (items[j].weight <= agg) {
                b += items[j].gain;
                agg -= items[j].weight;
            } else {
                b += items[j].gain * static_cast<double>(agg) / items[j].weight;
                agg = 0;
            }
        }
        return b;
    };

    // greedy "take everything that fits" completion, evaluated at every node;
    // it closes the common unconstrained case in one dive
    auto greedy_complete = [&](size_t i, double value) {
        std::vector<int> taken;
        double v = value;
        for (size_t j = i; j < items.size(); ++j) {
            if (!fits(items[j].cand)) continue;
            take(items[j].cand, +1);
            taken.push_back(items[j].cand);
            v += items[j].gain;
        }
        if (v > best) {
            best = v;
            best_t = cur_t;
            for (int c : taken) best_t[c] = 1;
        }
        for (int c : taken) take(c, -1);
    };

    std::function<void(size_t, double)> search = [&](size_t i, double value) {
        greedy_complete(i, value);
        if (i >= items.size()) return;
        if (bound(i, value) <= best) return;
        const Item& it = items[i];
        if (fits(it.cand)) {
            take(it.cand, +1);
            cur_t[it.cand] = 1;
            search(i + 1, value + it.gain);
            cur_t[it.cand] = 0;
            take(it.cand, -1);
        }
        search(i + 1, value);
    };
    best_t = cur_t;
    search(0, 0.0);

    // zero-multiplier items are value-indifferent; admit the ones that still
    // fit so feasibility restoration can draw on them
    used.clear();
    for (int c = 0; c < nc; ++c)
        if (best_t[c]) take(c, +1);
    for (int c = 0; c < nc; ++c) {
        if (best_t[c] || lambda[c] > 0) continue;
        if (!fits(c)) continue;
        take(c, +1);
        best_t[c] = 1;
    }

    for (int c = 0; c < nc; ++c) out.t[c] = best_t[c];
    double opt = 0;
    for (int c = 0; c < nc; ++c)
        if (out.t[c]) opt += lambda[c];
    out.value = -static_cast<double>(np) * opt;
    return out;
}

LagrangianValue lagrangian_value(const SelectionInstance& instance,
                                 const std::vector<double>& lambda) {
    LagrangianValue out;
    out.z_lr = 0;
    int np = static_cast<int>(instance.paths.size());
    out.parts.resize(np);
    out.y.assign(np, 0);
    for (int p = 0; p < np; ++p) {
        auto r = solve_sub1_path(instance, p, lambda);
        out.parts[p] = std::move(r.parts);
        out.y[p] = r.y;
        out.z_lr += r.value;
    }
    auto s2 = solve_sub2(instance, lambda);
    out.t = std::move(s2.t);
    out.z_lr += s2.value;
    return out;
}

RestoreResult restore_feasible(const SelectionInstance& instance, const std::vector<char>& t,
                               const std::set<std::vector<NodeId>>& reuse_bias) {
    RestoreResult out;
    int np = static_cast<int>(instance.paths.size());
    out.sol.parts.resize(np);
    out.sol.y.assign(np, 0);
    out.sol.t = t;
    out.z_fe = 0;
    // how many paths could share each candidate; a new pathlet's rule cost is
    // amortized over that count so the tiling lands on shared segments
    std::map<std::vector<NodeId>, int> freq;
    for (const auto& path : instance.paths) {
        int l = path.length();
        for (int len = 1; len <= l; ++len)
            for (int s = 0; s + len <= l; ++s)
                ++freq[std::vector<NodeId>(path.nodes.begin() + s,
                                           path.nodes.begin() + s + len + 1)];
    }
    auto fresh_cost = [&](int c) {
        const auto& cand = instance.candidates[c];
        double f = 1.0;
        auto hint = instance.share_hint.find(cand.nodes);
        if (hint != instance.share_hint.end()) f = std::max(f, hint->second);
        auto it = freq.find(cand.nodes);
        if (it != freq.end()) f = std::max(f, static_cast<double>(it->second));
        if (reuse_bias.count(cand.nodes)) return 0.05;
        return 0.05 + static_cast<double>(cand.length()) / f;
    };
    auto allowed = [&](int c) { return t[c] != 0; };
    // the cost is static on purpose: every path facing the same subsequence
    // picks the same pieces, which keeps the installed vocabulary small and
    // independent of path order
    for (int p = 0; p < np; ++p) {
        const Path& path = instance.paths[p];
        auto pls = placements_on_path(path, instance.candidates);
        auto tiling = tile_min_cost(path.length(), pls, instance.m_max, fresh_cost, allowed);
        if (tiling) {
            out.sol.parts[p] = tiling->cands;
        } else {
            out.sol.y[p] = 1;
            ++out.z_fe;
        }
    }
    return out;
}

bool subgradient_update(SubgradientState& state, const SelectionInstance& instance,
                        const std::vector<std::vector<int>>& parts, const std::vector<char>& t,
                        double beta_floor) {
    (void)beta_floor;
    int nc = static_cast<int>(instance.candidates.size());
    long np = static_cast<long>(instance.paths.size());
    std::vector<double> mu(nc, 0.0);
    for (const auto& row : parts)
        for (int c : row) mu[c] += 1.0;
    for (int c = 0; c < nc; ++c) mu[c] -= static_cast<double>(np) * t[c];
    double norm2 = 0;
    for (double m : mu) norm2 += m * m;
    if (norm2 == 0) return false;
    double theta = state.beta * (state.z_up - state.z_lb) / norm2;
    for (int c = 0; c < nc; ++c) state.lambda[c] = std::max(state.lambda[c] + theta * mu[c], 0.0);
    return true;
}

OneRoundResult one_round_selection(const SelectionInstance& instance, const SolverConfig& config,
                                   const std::set<std::vector<NodeId>>& reuse_bias) {
    int np = static_cast<int>(instance.paths.size());
    int nc = static_cast<int>(instance.candidates.size());
    OneRoundResult out;
    out.best.parts.assign(np, {});
    out.best.y.assign(np, 1);
    out.best.t.assign(nc, 0);
    out.z_up = np;
    out.z_lb = 0;
    if (np == 0) {
        out.z_up = 0;
        return out;
    }

    SubgradientState state;
    state.lambda.assign(nc, 1e-3);
    bool have_best = false;
    bool perturbed = false;
    int budget = std::min(std::max(2, np), config.hard_iteration_cap);

    while (state.k < budget && state.epsilon > config.epsilon_star &&
           state.stall < config.stall_limit) {
        auto lv = lagrangian_value(instance, state.lambda);
        auto restored = restore_feasible(instance, lv.t, reuse_bias);
        double z_fe = static_cast<double>(restored.z_fe);
        double prev_up = state.z_up;
        state.z_up = std::min(z_fe, state.z_up);
        if (state.z_up < prev_up || !have_best) {
            out.best = restored.sol;
            have_best = true;
        }
        double prev_lb = state.z_lb;
        state.z_lb = std::max({lv.z_lr, state.z_lb, 0.0});
        if (state.z_lb > prev_lb)
            state.stall = 0;
        else
            ++state.stall;
        if (state.stall >= 4 && state.beta / 2 >= config.beta_floor) state.beta /= 2;
        state.epsilon = state.z_up - state.z_lb;

        bool moved = subgradient_update(state, instance, lv.parts, lv.t, config.beta_floor);

        IterationRecord rec;
        rec.k = state.k;
        rec.z_lr = lv.z_lr;
        rec.z_fe = z_fe;
        rec.z_up = state.z_up;
        rec.z_lb = state.z_lb;
        rec.eps = state.epsilon;
        rec.beta = state.beta;
        rec.stall = state.stall;
        rec.lambda_min = nc ? *std::min_element(state.lambda.begin(), state.lambda.end()) : 0.0;
        out.trace.push_back(rec);

        if (!moved) {
            if (state.epsilon <= config.epsilon_star || perturbed) break;
            // zero subgradient with an open gap: nudge unselected multipliers once
            perturbed = true;
            for (int c = 0; c < nc; ++c)
                if (!lv.t[c]) state.lambda[c] += 1e-6;
        }
        ++state.k;
    }
    out.z_up = state.z_up == std::numeric_limits<double>::infinity() ? np : state.z_up;
    out.z_lb = state.z_lb;
    return out;
}

namespace {

// Sub-paths of a path worth offering as candidates: all contiguous pieces of
// length <= max_len (longest first, capped), plus balanced chunks when the
// path is too long to be tiled from max_len pieces.
std::vector<std::vector<NodeId>> biased_subpaths(const Path& path, int max_len, int m_max,
                                                 int cap) {
    std::vector<std::vector<NodeId>> out;
    int l = path.length();
    int chunk = (l + m_max - 1) / m_max;
    if (chunk > max_len) {
        // balanced decomposition so the path stays coverable with m_max parts
        int pos = 0;
        while (pos < l) {
            int len = std::min(chunk, l - pos);
            out.emplace_back(path.nodes.begin() + pos, path.nodes.begin() + pos + len + 1);
            pos += len;
        }
    }
    // single links always go in; without them a truncated pool can force a
    // path onto private multi-hop segments
    for (int s = 0; s < l; ++s)
        out.emplace_back(path.nodes.begin() + s, path.nodes.begin() + s + 2);
    std::vector<std::vector<NodeId>> pieces;
    for (int len = std::min(l, max_len); len >= 2; --len)
        for (int s = 0; s + len <= l; ++s)
            pieces.emplace_back(path.nodes.begin() + s, path.nodes.begin() + s + len + 1);
    for (auto& p : pieces) {
        if (static_cast<int>(out.size()) >= cap) break;
        out.push_back(std::move(p));
    }
    return out;
}

std::map<NodeId, std::map<NodeId, int>> all_pairs_hops(const Topology& topo) {
    std::map<NodeId, std::map<NodeId, int>> dist;
    for (const auto& s : topo.nodes()) {
        auto& d = dist[s];
        d[s] = 0;
        std::vector<NodeId> frontier{s};
        while (!frontier.empty()) {
            std::vector<NodeId> next;
            for (const auto& v : frontier)
                for (const auto& w : topo.neighbors(v))
                    if (!d.count(w)) {
                        d[w] = d[v] + 1;
                        next.push_back(w);
                    }
            frontier = std::move(next);
        }
    }
    return dist;
}

// pairs (s, t) with a shortest s->t walk running over the whole segment
double sharing_potential(const std::vector<NodeId>& seg,
                         const std::map<NodeId, std::map<NodeId, int>>& dist,
                         const Topology& topo) {
    int k = static_cast<int>(seg.size()) - 1;
    const auto& to_head = dist;  // d(s, seg.front())
    double n = 0;
    for (const auto& s : topo.nodes()) {
        auto hs = to_head.at(s).find(seg.front());
        if (hs == to_head.at(s).end()) continue;
        const auto& from_tail = dist.at(seg.back());
        for (const auto& t : topo.nodes()) {
            auto tt = from_tail.find(t);
            if (tt == from_tail.end()) continue;
            auto st = dist.at(s).find(t);
            if (st == dist.at(s).end()) continue;
            if (hs->second + k + tt->second == st->second) n += 1;
        }
    }
    return n;
}

}  // namespace

SelectionOutcome select_pathlets(const std::vector<Path>& paths, const Topology& topo,
                                 const SolverConfig& config, const CandidateGenParams& gen,
                                 int m_max) {
    SelectionOutcome out;
    int np = static_cast<int>(paths.size());
    out.covered.assign(np, 0);
    out.parts.assign(np, {});

    std::map<NodeId, int> caps;
    for (const auto& v : topo.nodes()) caps[v] = topo.free_capacity(v);
    auto dist = all_pairs_hops(topo);
    std::map<std::vector<NodeId>, int> selected_index;  // node seq -> index in out.selected

    for (int round = 1; round <= config.outer_rounds; ++round) {
        std::vector<int> uncovered;
        for (int p = 0; p < np; ++p)
            if (!out.covered[p]) uncovered.push_back(p);
        if (uncovered.empty()) break;
        out.rounds_used = round;

        // per-round candidate pool, biased to sub-paths of the uncovered paths
        std::set<std::vector<NodeId>> pool;
        for (int p : uncovered)
            for (auto& s : biased_subpaths(paths[p], gen.max_len, m_max, gen.sample_per_pair))
                pool.insert(std::move(s));

        SelectionInstance inst;
        inst.m_max = m_max;
        inst.capacities = caps;
        for (int p : uncovered) inst.paths.push_back(paths[p]);
        for (const auto& s : pool) {
            inst.share_hint[s] = sharing_potential(s, dist, topo);
            Pathlet c;
            c.nodes = s;
            inst.candidates.push_back(std::move(c));
        }

        std::set<std::vector<NodeId>> reuse;
        for (const auto& [seq, idx] : selected_index) reuse.insert(seq);

        auto res = one_round_selection(inst, config, reuse);
        for (auto& rec : res.trace) rec.round = round;
        out.traces.push_back(std::move(res.trace));

        // keep only the pathlets the concatenations actually use
        for (size_t i = 0; i < uncovered.size(); ++i) {
            if (res.best.y[i]) continue;
            int p = uncovered[i];
            out.covered[p] = 1;
            for (int c : res.best.parts[i]) {
                const auto& seq = inst.candidates[c].nodes;
                auto it = selected_index.find(seq);
                int idx;
                if (it == selected_index.end()) {
                    idx = static_cast<int>(out.selected.size());
                    selected_index[seq] = idx;
                    out.selected.push_back(inst.candidates[c]);
                    for (const auto& v : inst.candidates[c].rule_nodes())
                        caps[v] = std::max(0, caps[v] - 1);
                } else {
                    idx = it->second;
                }
                out.parts[p].push_back(idx);
            }
        }
    }
    return out;
}

}  // namespace paco
