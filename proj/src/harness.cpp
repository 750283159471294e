#include "paco/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace paco {

SolverConfig ExperimentConfig::solver() const {
    SolverConfig s;
    s.epsilon_star = epsilon_star;
    s.stall_limit = stall_limit;
    s.outer_rounds = rounds;
    s.hard_iteration_cap = hard_iteration_cap;
    s.seed = seed;
    return s;
}

CandidateGenParams ExperimentConfig::candidate_gen() const {
    CandidateGenParams g;
    g.k = k;
    g.max_len = max_len;
    g.sample_per_pair = sample_per_pair;
    return g;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "topology") cfg.topology_file = val;
            else if (key == "m") cfg.m = std::stoi(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "w_protected") cfg.type_weights[0] = std::stod(val);
            else if (key == "w_suspicious") cfg.type_weights[1] = std::stod(val);
            else if (key == "w_bulk") cfg.type_weights[2] = std::stod(val);
            else if (key == "w_time_sensitive") cfg.type_weights[3] = std::stod(val);
            else if (key == "k") cfg.k = std::stoi(val);
            else if (key == "max_len") cfg.max_len = std::stoi(val);
            else if (key == "sample_per_pair") cfg.sample_per_pair = std::stoi(val);
            else if (key == "epsilon_star") cfg.epsilon_star = std::stod(val);
            else if (key == "stall_limit") cfg.stall_limit = std::stoi(val);
            else if (key == "rounds") cfg.rounds = std::stoi(val);
            else if (key == "hard_iteration_cap") cfg.hard_iteration_cap = std::stoi(val);
            else if (key == "capacity_default") cfg.capacity_default = std::stoi(val);
            else if (key == "m_max") cfg.m_max = std::stoi(val);
            else if (key == "pid_space") cfg.pid_space = std::stoi(val);
            else if (key == "out_dir") cfg.out_dir = val;
            else throw ParseError(lineno, "unknown key " + key);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(lineno, "bad value for " + key);
        }
    }
    return cfg;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::vector<std::pair<int, double>> emit_ccdf(const std::vector<int>& label_counts) {
    if (label_counts.empty()) throw EmptyInput("empty label count list");
    int max = *std::max_element(label_counts.begin(), label_counts.end());
    std::vector<std::pair<int, double>> points;
    for (int x = 1; x <= max + 1; ++x) {
        long n = std::count_if(label_counts.begin(), label_counts.end(),
                               [&](int c) { return c >= x; });
        points.push_back({x, static_cast<double>(n) / label_counts.size()});
    }
    return points;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult res;
    res.topo = parse_topology(read_file(config.topology_file));
    res.topo.set_default_capacity(config.capacity_default);

    auto flows = gen_flows(res.topo, config.m, config.seed, config.type_weights);
    res.desired = build_desired_set(res.topo, flows);
    const auto& paths = res.desired.paths;

    res.outcome =
        select_pathlets(paths, res.topo, config.solver(), config.candidate_gen(), config.m_max);

    res.installed = res.outcome.selected;
    assign_pids(res.installed, config.pid_space);
    int max_pid = 0;
    for (const auto& s : res.installed) max_pid = std::max(max_pid, s.pid);
    PidAllocator allocator(config.pid_space);
    allocator.reserve_up_to(max_pid);

    std::vector<Pathlet> concrete = res.installed;  // the construct_path pool
    // (nodes, constituent pids) -> rep pid; pids alone do not identify a rep
    // because non-conflicting concrete pathlets may share a pid
    std::map<std::pair<std::vector<NodeId>, std::vector<int>>, int> rep_registry;
    res.concatenations.resize(paths.size());
    res.per_path.resize(paths.size());

    for (size_t p = 0; p < paths.size(); ++p) {
        auto& ppm = res.per_path[p];
        ppm.hopsr_labels = hop_sr_labels(paths[p]);
        auto mp = middlepoint_concat(res.topo, paths[p], config.m_max);
        ppm.middlepoint_ok = mp.success;
        ppm.middlepoint_labels = mp.labels;
        if (!res.outcome.covered[p]) continue;
        auto conc = construct_path(concrete, paths[p], config.m_max,
                                   [&]() { return allocator.mint(); });
        // deduplicate representatives minted for identical part runs
        for (auto& part : conc.parts) {
            if (part.kind != PathletKind::Representative) continue;
            std::vector<int> pids;
            for (const auto& sub : part.expansion) pids.push_back(sub.pid);
            auto key = std::make_pair(part.nodes, pids);
            auto it = rep_registry.find(key);
            if (it != rep_registry.end()) {
                part.pid = it->second;
            } else {
                rep_registry[key] = part.pid;
                res.installed.push_back(part);
            }
        }
        ppm.concatenated = true;
        ppm.labels_pre = static_cast<int>(flatten_parts(conc).size());
        ppm.labels_post = static_cast<int>(conc.parts.size());
        res.concatenations[p] = std::move(conc);
    }

    // rule synthesis and the end-to-end forwarding check
    for (const auto& s : res.installed)
        for (auto& r : synthesize_pathlet_rules(s, res.topo)) res.rules.rules.push_back(r);
    std::vector<std::pair<std::string, size_t>> packets;  // token, path index
    for (size_t p = 0; p < paths.size(); ++p) {
        if (!res.per_path[p].concatenated) continue;
        FlowSpec f = res.desired.flow_of[p];
        f.fid = f.fid + ":" + std::to_string(p);
        for (auto& r : synthesize_flow_rules(f, res.concatenations[p], res.topo))
            res.rules.rules.push_back(r);
        packets.push_back({f.fid, p});
    }
    res.rules.sort();
    for (const auto& [token, p] : packets) {
        auto trace = simulate_forward(res.topo, res.rules, token, paths[p].head());
        if (trace != paths[p].nodes)
            throw Error("forwarding mismatch for " + token + ": got " + path_to_string(trace) +
                        " expected " + path_to_string(paths[p].nodes));
    }

    // core occupancy: pathlet (pid-match) rules vs per-path intermediate state
    for (const auto& r : res.rules.rules)
        if (r.match_kind == MatchKind::Pid) ++res.paco_core_occupancy[r.node];
    for (const auto& path : paths)
        for (size_t i = 1; i + 1 < path.nodes.size(); ++i)
            ++res.hbh_core_occupancy[path.nodes[i]];
    for (const auto& [v, c] : res.hbh_core_occupancy)
        if (c > 0) res.core_nodes.push_back(v);

    // metrics
    auto& rep = res.report;
    rep.paths_count = paths.size();
    long covered = std::count(res.outcome.covered.begin(), res.outcome.covered.end(), 1);
    rep.success_fraction = paths.empty() ? 0.0 : static_cast<double>(covered) / paths.size();
    auto stats = [&](const std::map<NodeId, int>& occ) {
        SchemeStats st;
        long total = 0;
        for (const auto& v : res.core_nodes) {
            auto it = occ.find(v);
            int c = it == occ.end() ? 0 : it->second;
            st.max_rules = std::max(st.max_rules, c);
            total += c;
        }
        st.avg_rules = res.core_nodes.empty()
                           ? 0.0
                           : static_cast<double>(total) / res.core_nodes.size();
        return st;
    };
    rep.hop_by_hop = stats(res.hbh_core_occupancy);
    rep.paco = stats(res.paco_core_occupancy);
    if (!res.core_nodes.empty())
        rep.r_avgsave = rule_saving(res.paco_core_occupancy, res.hbh_core_occupancy,
                                    res.core_nodes);

    std::vector<int> pre, post, hopsr;
    long mp_ok = 0;
    double post_sum = 0, hopsr_sum = 0;
    for (size_t p = 0; p < paths.size(); ++p) {
        hopsr.push_back(res.per_path[p].hopsr_labels);
        hopsr_sum += res.per_path[p].hopsr_labels;
        if (res.per_path[p].middlepoint_ok) ++mp_ok;
        if (res.per_path[p].concatenated) {
            pre.push_back(res.per_path[p].labels_pre);
            post.push_back(res.per_path[p].labels_post);
            post_sum += res.per_path[p].labels_post;
        }
    }
    rep.middlepoint_success_fraction =
        paths.empty() ? 0.0 : static_cast<double>(mp_ok) / paths.size();
    rep.mean_labels_paco_post = pre.empty() ? 0.0 : post_sum / post.size();
    rep.mean_labels_hopsr = hopsr.empty() ? 0.0 : hopsr_sum / hopsr.size();
    if (!pre.empty()) {
        rep.ccdf_paco_pre = emit_ccdf(pre);
        rep.ccdf_paco_post = emit_ccdf(post);
    }
    if (!hopsr.empty()) rep.ccdf_hopsr = emit_ccdf(hopsr);
    return res;
}

std::string compare_schemes_csv(const MetricsReport& r) {
    std::ostringstream out;
    out << "scheme,max_rules,avg_rules,saving_vs_hbh_pct,success_rate,mean_labels\n";
    out << "HopByHop," << r.hop_by_hop.max_rules << ',' << format_double(r.hop_by_hop.avg_rules)
        << ',' << format_double(0.0) << ',' << format_double(1.0) << ','
        << format_double(r.mean_labels_hopsr) << '\n';
    out << "PACO," << r.paco.max_rules << ',' << format_double(r.paco.avg_rules) << ','
        << format_double(r.r_avgsave) << ',' << format_double(r.success_fraction) << ','
        << format_double(r.mean_labels_paco_post) << '\n';
    out << "HopSR,,," << format_double(0.0) << ',' << format_double(1.0) << ','
        << format_double(r.mean_labels_hopsr) << '\n';
    out << "MiddlepointSR,,," << format_double(0.0) << ','
        << format_double(r.middlepoint_success_fraction) << ",\n";
    return out.str();
}

std::string compare_schemes_text(const MetricsReport& r) {
    std::ostringstream out;
    char buf[256];
    out << "paths: " << r.paths_count << "\n";
    std::snprintf(buf, sizeof(buf), "%-14s %10s %12s %12s %10s %12s\n", "scheme", "max.rules",
                  "avg.rules", "save_vs_hbh", "success", "mean.labels");
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-14s %10d %12.2f %11.2f%% %10.3f %12.3f\n", "HopByHop",
                  r.hop_by_hop.max_rules, r.hop_by_hop.avg_rules, 0.0, 1.0, r.mean_labels_hopsr);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-14s %10d %12.2f %11.2f%% %10.3f %12.3f\n", "PACO",
                  r.paco.max_rules, r.paco.avg_rules, r.r_avgsave, r.success_fraction,
                  r.mean_labels_paco_post);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-14s %10s %12s %12s %10.3f %12.3f\n", "HopSR", "-", "-", "-",
                  1.0, r.mean_labels_hopsr);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-14s %10s %12s %12s %10.3f %12s\n", "MiddlepointSR", "-",
                  "-", "-", r.middlepoint_success_fraction, "-");
    out << buf;
    return out.str();
}

static std::string expansion_tree(const Concatenation& conc) {
    std::string s;
    for (const auto& part : conc.parts) {
        if (part.kind != PathletKind::Representative) continue;
        if (!s.empty()) s += ' ';
        s += std::to_string(part.pid) + "=[";
        for (size_t i = 0; i < part.expansion.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(part.expansion[i].pid);
        }
        s += ']';
    }
    return s;
}

void write_outputs(const ExperimentResult& res, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto open = [&](const std::string& name) {
        std::ofstream f(fs::path(out_dir) / name);
        if (!f) throw Error("cannot write " + name + " in " + out_dir);
        return f;
    };

    {
        auto f = open("per_path.csv");
        f << "index,fid,kind,path,length,concatenated,labels_pre,labels_post,hopsr_labels,"
             "middlepoint_ok,middlepoint_labels\n";
        for (size_t p = 0; p < res.desired.paths.size(); ++p) {
            const auto& m = res.per_path[p];
            f << p << ',' << res.desired.flow_of[p].fid << ','
              << flow_kind_name(res.desired.flow_of[p].kind) << ','
              << path_to_string(res.desired.paths[p].nodes) << ','
              << res.desired.paths[p].length() << ',' << (m.concatenated ? 1 : 0) << ','
              << m.labels_pre << ',' << m.labels_post << ',' << m.hopsr_labels << ','
              << (m.middlepoint_ok ? 1 : 0) << ',' << m.middlepoint_labels << '\n';
        }
    }
    {
        auto f = open("ccdf.csv");
        f << "scheme,x,y\n";
        for (const auto& [x, y] : res.report.ccdf_paco_pre)
            f << "paco_pre," << x << ',' << format_double(y) << '\n';
        for (const auto& [x, y] : res.report.ccdf_paco_post)
            f << "paco_post," << x << ',' << format_double(y) << '\n';
        for (const auto& [x, y] : res.report.ccdf_hopsr)
            f << "hopsr," << x << ',' << format_double(y) << '\n';
    }
    {
        auto f = open("rules.csv");
        f << res.rules.dump_csv();
    }
    {
        auto f = open("occupancy.csv");
        f << "node,paco_core,hbh_core,total_rules,capacity\n";
        auto total = res.rules.occupancy();
        for (const auto& v : res.topo.nodes()) {
            auto get = [&](const std::map<NodeId, int>& m) {
                auto it = m.find(v);
                return it == m.end() ? 0 : it->second;
            };
            f << v << ',' << get(res.paco_core_occupancy) << ',' << get(res.hbh_core_occupancy)
              << ',' << get(total) << ',' << res.topo.free_capacity(v) << '\n';
        }
    }
    {
        auto f = open("trace.csv");
        f << "round,k,Z_LR,z_FE,z_UP,z_LB,eps,beta,stall\n";
        for (const auto& round : res.outcome.traces)
            for (const auto& r : round)
                f << r.round << ',' << r.k << ',' << format_double(r.z_lr) << ','
                  << format_double(r.z_fe) << ',' << format_double(r.z_up) << ','
                  << format_double(r.z_lb) << ',' << format_double(r.eps) << ','
                  << format_double(r.beta) << ',' << r.stall << '\n';
    }
    {
        auto f = open("concat.txt");
        for (size_t p = 0; p < res.desired.paths.size(); ++p) {
            if (!res.per_path[p].concatenated) continue;
            const auto& c = res.concatenations[p];
            f << path_to_string(c.path.nodes) << " | ";
            auto sl = c.label_list();
            for (size_t i = 0; i < sl.size(); ++i) f << (i ? " " : "") << sl[i];
            f << " | " << expansion_tree(c) << '\n';
        }
    }
    {
        auto f = open("selected.txt");
        for (const auto& s : res.installed)
            if (s.kind == PathletKind::Concrete) f << path_to_string(s.nodes) << '\n';
    }
    {
        auto f = open("paths.txt");
        for (const auto& p : res.desired.paths) f << path_to_string(p.nodes) << '\n';
    }
    {
        auto f = open("flows.csv");
        f << "fid,kind,src,dst,waypoint\n";
        for (const auto& fl : res.desired.flow_of)
            f << fl.fid << ',' << flow_kind_name(fl.kind) << ',' << fl.src << ',' << fl.dst << ','
              << (fl.waypoint ? *fl.waypoint : "") << '\n';
    }
    {
        auto f = open("report.csv");
        f << compare_schemes_csv(res.report);
    }
    {
        auto f = open("report.txt");
        f << compare_schemes_text(res.report);
    }
}

std::string extract_subgraph(const Topology& topo, int n, const NodeId& start) {
    if (topo.nodes().empty()) throw Error("empty topology");
    NodeId s = start;
    if (s.empty()) s = *topo.nodes().begin();
    if (!topo.has_node(s)) throw Error("unknown start node " + s);
    std::set<NodeId> keep;
    std::queue<NodeId> q;
    q.push(s);
    keep.insert(s);
    while (!q.empty() && static_cast<int>(keep.size()) < n) {
        NodeId v = q.front();
        q.pop();
        for (const auto& w : topo.neighbors(v)) {
            if (keep.count(w) || static_cast<int>(keep.size()) >= n) continue;
            keep.insert(w);
            q.push(w);
        }
    }
    std::ostringstream out;
    out << "directed\n";
    for (const auto& [link, attr] : topo.links()) {
        if (!keep.count(link.first) || !keep.count(link.second)) continue;
        out << link.first << ' ' << link.second << " 1 " << format_double(attr.latency) << ' '
            << format_double(attr.bandwidth) << '\n';
    }
    return out.str();
}

}  // namespace paco
