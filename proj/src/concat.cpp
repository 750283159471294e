#include "paco/concat.hpp"

#include <algorithm>
#include <map>

#include "paco/selection.hpp"

namespace paco {

std::vector<int> Concatenation::label_list() const {
    std::vector<int> sl;
    for (const auto& p : parts) sl.push_back(p.pid);
    return sl;
}

std::vector<Pathlet> prune_candidates(const std::vector<Pathlet>& selected, const Path& path) {
    std::vector<Pathlet> out;
    for (const auto& s : selected)
        if (is_subpath(s, path)) out.push_back(s);
    std::sort(out.begin(), out.end(), [](const Pathlet& a, const Pathlet& b) {
        if (a.pid != b.pid) return a.pid < b.pid;
        return a.nodes < b.nodes;
    });
    return out;
}

SubsetStream::SubsetStream(int n, int m) : n_(n), m_(m), done_(m > n || m < 1), first_(true) {
    for (int i = 0; i < m_ && !done_; ++i) cur_.push_back(i);
}

std::optional<std::vector<int>> SubsetStream::next() {
    if (done_) return std::nullopt;
    if (first_) {
        first_ = false;
        return cur_;
    }
    // advance to the next m-combination in lexicographic order
    int i = m_ - 1;
    while (i >= 0 && cur_[i] == n_ - m_ + i) --i;
    if (i < 0) {
        done_ = true;
        return std::nullopt;
    }
    ++cur_[i];
    for (int j = i + 1; j < m_; ++j) cur_[j] = cur_[j - 1] + 1;
    return cur_;
}

std::optional<Concatenation> verify_combination(const std::vector<Pathlet>& subset,
                                                const Path& path) {
    if (subset.empty()) return std::nullopt;
    std::vector<Pathlet> ordered = subset;
    auto head_index = [&](const Pathlet& s) {
        auto it = std::find(path.nodes.begin(), path.nodes.end(), s.head());
        return std::distance(path.nodes.begin(), it);
    };
    std::sort(ordered.begin(), ordered.end(), [&](const Pathlet& a, const Pathlet& b) {
        return head_index(a) < head_index(b);
    });
    std::vector<NodeId> flat;
    for (const auto& s : ordered) {
        if (flat.empty())
            flat = s.nodes;
        else {
            if (flat.back() != s.head()) return std::nullopt;
            flat.insert(flat.end(), s.nodes.begin() + 1, s.nodes.end());
        }
    }
    if (flat != path.nodes) return std::nullopt;
    Concatenation c;
    c.path = path;
    c.parts = std::move(ordered);
    return c;
}

Concatenation construct_path(const std::vector<Pathlet>& selected, const Path& path, int m_max,
                             const std::function<int()>& mint_pid) {
    std::vector<Pathlet> pruned = prune_candidates(selected, path);
    // cheap existence probe; also yields the minimal part count, so the
    // first-fit enumeration can start at the right m directly
    auto pls = placements_on_path(path, pruned);
    auto probe = tile_min_cost(path.length(), pls, path.length(), [](int) { return 0.0; },
                               [](int) { return true; });
    if (!probe) throw NotConcatenable("no concatenation for path " + path_to_string(path.nodes));
    int m_min = static_cast<int>(probe->cands.size());

    int n = static_cast<int>(pruned.size());
    for (int m = m_min; m <= path.length(); ++m) {
        SubsetStream stream(n, m);
        while (auto idx = stream.next()) {
            std::vector<Pathlet> subset;
            for (int i : *idx) subset.push_back(pruned[i]);
            if (auto conc = verify_combination(subset, path)) {
                if (static_cast<int>(conc->parts.size()) > m_max)
                    return nest(*conc, m_max, mint_pid);
                return *conc;
            }
        }
    }
    throw NotConcatenable("no concatenation for path " + path_to_string(path.nodes));
}

std::optional<Concatenation> brute_force_concat(const std::vector<Pathlet>& selected,
                                                const Path& path) {
    if (path.length() > 10) throw TooLarge("brute_force_concat guard: l_P > 10");
    std::vector<Pathlet> pruned = prune_candidates(selected, path);
    int n = static_cast<int>(pruned.size());
    for (int m = 1; m <= path.length(); ++m) {
        SubsetStream stream(n, m);
        while (auto idx = stream.next()) {
            std::vector<Pathlet> subset;
            for (int i : *idx) subset.push_back(pruned[i]);
            if (auto conc = verify_combination(subset, path)) return conc;
        }
    }
    return std::nullopt;
}

Concatenation nest(const Concatenation& conc, int m_max, const std::function<int()>& mint_pid) {
    if (static_cast<int>(conc.parts.size()) <= m_max) return conc;
    // runs of consecutive concrete parts; a run of >= 2 becomes representative
    std::vector<std::vector<Pathlet>> runs;
    for (const auto& p : conc.parts) runs.push_back({p});

    // phase 1: pair consecutive singletons, rightmost first
    int i = static_cast<int>(runs.size()) - 2;
    while (static_cast<int>(runs.size()) > m_max && i >= 0) {
        if (runs[i].size() == 1 && runs[i + 1].size() == 1) {
            runs[i].push_back(runs[i + 1][0]);
            runs.erase(runs.begin() + i + 1);
            i -= 2;
        } else {
            i -= 1;
        }
    }
    // phase 2: still over budget, fold the tail runs together
    while (static_cast<int>(runs.size()) > m_max && runs.size() >= 2) {
        auto& a = runs[runs.size() - 2];
        auto& b = runs.back();
        a.insert(a.end(), b.begin(), b.end());
        runs.pop_back();
    }

    Concatenation out;
    out.path = conc.path;
    for (const auto& run : runs) {
        if (run.size() == 1) {
            out.parts.push_back(run[0]);
        } else {
            Pathlet rep;
            rep.kind = PathletKind::Representative;
            rep.expansion = run;
            rep.nodes = run[0].nodes;
            for (size_t j = 1; j < run.size(); ++j)
                rep.nodes.insert(rep.nodes.end(), run[j].nodes.begin() + 1, run[j].nodes.end());
            rep.pid = mint_pid();
            out.parts.push_back(std::move(rep));
        }
    }
    return out;
}

std::vector<Pathlet> flatten_parts(const Concatenation& conc) {
    std::vector<Pathlet> flat;
    for (const auto& p : conc.parts) {
        if (p.kind == PathletKind::Representative)
            flat.insert(flat.end(), p.expansion.begin(), p.expansion.end());
        else
            flat.push_back(p);
    }
    return flat;
}

}  // namespace paco
