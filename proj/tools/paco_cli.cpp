#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "paco/harness.hpp"

namespace {

struct CommonOpts {
    std::string config_file;
    std::string topology;
    std::string out_dir;
    int m = -1;
    long long seed = -1;
    int m_max = -1;
    int pid_space = -1;
    int rounds = -1;
    int k = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_file, "key=value config file");
    cmd->add_option("--topology", o.topology, "edge-list topology file");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--m", o.m, "flows per ordered node pair");
    cmd->add_option("--seed", o.seed, "workload seed");
    cmd->add_option("--m-max", o.m_max, "label stack budget");
    cmd->add_option("--pid-space", o.pid_space, "pathlet id space size");
    cmd->add_option("--rounds", o.rounds, "outer selection rounds");
    cmd->add_option("--k", o.k, "candidate paths per pair");
}

paco::ExperimentConfig resolve(const CommonOpts& o) {
    paco::ExperimentConfig cfg;
    if (!o.config_file.empty()) cfg = paco::load_config(o.config_file);
    if (!o.topology.empty()) cfg.topology_file = o.topology;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.m >= 0) cfg.m = o.m;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (o.m_max >= 0) cfg.m_max = o.m_max;
    if (o.pid_space >= 0) cfg.pid_space = o.pid_space;
    if (o.rounds >= 0) cfg.rounds = o.rounds;
    if (o.k >= 0) cfg.k = o.k;
    if (cfg.topology_file.empty()) throw paco::Error("no topology given (--topology or config)");
    return cfg;
}

void ensure_out(const paco::ExperimentConfig& cfg) {
    if (cfg.out_dir.empty()) throw paco::Error("no output directory given (--out or config)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathlet routing toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string subset_start;
    int subset_nodes = 0;
    std::string subset_out;

    auto* c_subset = app.add_subcommand("gen-topo-subset",
                                        "extract a connected n-node subgraph by BFS");
    c_subset->add_option("--topology", o.topology, "edge-list topology file")->required();
    c_subset->add_option("--nodes", subset_nodes, "subgraph size")->required();
    c_subset->add_option("--start", subset_start, "BFS start node (default: smallest id)");
    c_subset->add_option("--out-file", subset_out, "output topology file")->required();

    auto* c_workload = app.add_subcommand("gen-workload", "emit flows.csv and paths.txt");
    auto* c_select = app.add_subcommand("select", "run pathlet selection; emit selected.txt, trace.csv");
    auto* c_concat = app.add_subcommand("concat", "emit per-path concatenations (concat.txt)");
    auto* c_install = app.add_subcommand("install", "emit rules.csv and occupancy.csv");
    auto* c_simulate = app.add_subcommand("simulate", "replay every concatenated path through the rules");
    auto* c_report = app.add_subcommand("report", "print the scheme comparison table");
    auto* c_run = app.add_subcommand("run", "full pipeline; write all artifacts");
    for (auto* c : {c_workload, c_select, c_concat, c_install, c_simulate, c_report, c_run})
        add_common(c, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_subset->parsed()) {
            auto topo = paco::parse_topology(paco::read_file(o.topology));
            std::ofstream f(subset_out);
            if (!f) throw paco::Error("cannot write " + subset_out);
            f << paco::extract_subgraph(topo, subset_nodes, subset_start);
            std::cout << "wrote " << subset_out << "\n";
            return 0;
        }

        auto cfg = resolve(o);
        // every stage replays the deterministic pipeline up to its own output
        auto res = paco::run_experiment(cfg);

        if (c_report->parsed()) {
            std::cout << paco::compare_schemes_text(res.report);
            return 0;
        }
        if (c_simulate->parsed()) {
            // run_experiment already replayed every path; report the tally
            long n = 0;
            for (const auto& p : res.per_path)
                if (p.concatenated) ++n;
            std::cout << n << "/" << res.desired.paths.size()
                      << " paths forwarded end to end\n";
            return 0;
        }
        ensure_out(cfg);
        paco::write_outputs(res, cfg.out_dir);
        namespace fs = std::filesystem;
        auto keep = [&](std::initializer_list<const char*> names) {
            std::cout << "wrote";
            for (const auto* n : names) std::cout << ' ' << (fs::path(cfg.out_dir) / n).string();
            std::cout << "\n";
        };
        if (c_workload->parsed()) keep({"flows.csv", "paths.txt"});
        else if (c_select->parsed()) keep({"selected.txt", "trace.csv"});
        else if (c_concat->parsed()) keep({"concat.txt"});
        else if (c_install->parsed()) keep({"rules.csv", "occupancy.csv"});
        else {
            std::cout << "wrote artifacts to " << cfg.out_dir << "\n";
            std::cout << paco::compare_schemes_text(res.report);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
