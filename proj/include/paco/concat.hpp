#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "paco/net_model.hpp"

namespace paco {

/// A desired path expressed as an ordered chain of pathlets. `label_list`
/// holds the pids pushed at ingress, top of stack first; it is derived from
/// `parts` once pids are assigned.
struct Concatenation {
    Path path;
    std::vector<Pathlet> parts;

    std::vector<int> label_list() const;
};

/// Selected pathlets that are contiguous sub-paths of P.
std::vector<Pathlet> prune_candidates(const std::vector<Pathlet>& selected, const Path& path);

/// Lazily streams all m-subsets of indices [0, n) in lexicographic order.
class SubsetStream {
public:
    SubsetStream(int n, int m);
    /// Next subset, or nullopt when exhausted.
    std::optional<std::vector<int>> next();

private:
    int n_, m_;
    std::vector<int> cur_;
    bool done_;
    bool first_;
};

/// Orders the subset along P and checks that it tiles P exactly.
std::optional<Concatenation> verify_combination(const std::vector<Pathlet>& subset,
                                                const Path& path);

/// Minimum-cardinality concatenation (Theorem-1 optimal); applies nesting if
/// the minimum exceeds m_max. `mint_pid` supplies fresh pids for any
/// representative pathlets created.
Concatenation construct_path(const std::vector<Pathlet>& selected, const Path& path, int m_max,
                             const std::function<int()>& mint_pid);

/// Exhaustive oracle for construct_path; guard l_P <= 10.
std::optional<Concatenation> brute_force_concat(const std::vector<Pathlet>& selected,
                                                const Path& path);

/// Groups consecutive parts into representative pathlets until the ingress
/// label count is at most m_max. One level of nesting only.
Concatenation nest(const Concatenation& conc, int m_max, const std::function<int()>& mint_pid);

/// Original concrete part sequence of a (possibly nested) concatenation.
std::vector<Pathlet> flatten_parts(const Concatenation& conc);

}  // namespace paco
