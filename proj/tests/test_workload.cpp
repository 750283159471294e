#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <limits>
#include <set>

#include "paco/harness.hpp"
#include "paco/net_model.hpp"
#include "paco/workload.hpp"

using namespace paco;

namespace {

Topology example7() { return parse_topology(read_file("tests/data/fig1.topo")); }

FlowSpec flow(NodeId src, NodeId dst, FlowKind kind, std::optional<NodeId> wp = {}) {
    FlowSpec f;
    f.fid = src + "-" + dst;
    f.src = std::move(src);
    f.dst = std::move(dst);
    f.kind = kind;
    f.waypoint = std::move(wp);
    return f;
}

double path_latency(const Topology& t, const std::vector<NodeId>& seq) {
    double sum = 0;
    for (size_t i = 0; i + 1 < seq.size(); ++i) sum += t.link_attr(seq[i], seq[i + 1]).latency;
    return sum;
}

}  // namespace

TEST_CASE("gen_flows produces m flows per ordered pair") {
    Topology two = parse_topology("a b\n");
    auto flows = gen_flows(two, 1, 0);
    CHECK(flows.size() == 2);
    Topology t = example7();
    auto f4 = gen_flows(t, 4, 9);
    CHECK(f4.size() == 7 * 6 * 4);
    int a_to_f = 0;
    for (const auto& f : f4) a_to_f += (f.src == "a" && f.dst == "f");
    CHECK(a_to_f == 4);
}

TEST_CASE("gen_flows is deterministic and prefix-stable in m") {
    Topology t = example7();
    auto a = gen_flows(t, 3, 42);
    auto b = gen_flows(t, 3, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].fid == b[i].fid);
        CHECK(a[i].kind == b[i].kind);
        CHECK(a[i].waypoint == b[i].waypoint);
    }
    // the flow multiset for m=2 is contained in the one for m=4
    auto small = gen_flows(t, 2, 42);
    auto large = gen_flows(t, 4, 42);
    std::set<std::string> large_fids;
    for (const auto& f : large) large_fids.insert(f.fid);
    for (const auto& f : small) CHECK(large_fids.count(f.fid) == 1);
}

TEST_CASE("gen_flows honors kind weights") {
    Topology t = example7();
    auto flows = gen_flows(t, 10, 3, {0, 1, 0, 0});
    for (const auto& f : flows) CHECK(f.kind == FlowKind::Suspicious);
    CHECK_THROWS_AS(gen_flows(t, 1, 0, {0, 0, 0, 0}), Error);
}

TEST_CASE("flow invariants: src != dst, waypoint off the endpoints") {
    Topology t = example7();
    for (const auto& f : gen_flows(t, 3, 5)) {
        CHECK(f.src != f.dst);
        if (f.waypoint) {
            CHECK(*f.waypoint != f.src);
            CHECK(*f.waypoint != f.dst);
        }
        if (f.kind != FlowKind::Suspicious) CHECK_FALSE(f.waypoint.has_value());
    }
}

TEST_CASE("time-sensitive policy picks the minimum-latency path, lexicographic ties") {
    Topology t = example7();
    auto r = policy_path(t, flow("a", "f", FlowKind::TimeSensitive));
    REQUIRE(r.paths.size() == 1);
    // all four a->f routes have latency 4; tie-break is lexicographic
    CHECK(r.paths[0].nodes == std::vector<NodeId>{"a", "b", "c", "e", "f"});
    // exhaustive check: no simple path is strictly faster
    double best = std::numeric_limits<double>::infinity();
    for (const auto& seq : simple_paths(t, "a", "f", 6))
        best = std::min(best, path_latency(t, seq));
    CHECK(path_latency(t, r.paths[0].nodes) == doctest::Approx(best));
}

TEST_CASE("protected policy returns a link-disjoint pair") {
    Topology t = example7();
    auto r = policy_path(t, flow("a", "f", FlowKind::Protected));
    REQUIRE(r.paths.size() == 2);
    CHECK_FALSE(r.disjoint_fallback);
    auto la = r.paths[0].links();
    auto lb = r.paths[1].links();
    for (const auto& e : la) CHECK(std::find(lb.begin(), lb.end(), e) == lb.end());
}

TEST_CASE("protected policy falls back to one path on a bridge graph") {
    Topology chain = parse_topology("a b\nb c\n");
    auto r = policy_path(chain, flow("a", "c", FlowKind::Protected));
    REQUIRE(r.paths.size() == 1);
    CHECK(r.disjoint_fallback);
}

TEST_CASE("suspicious policy routes through the waypoint") {
    Topology t = example7();
    auto r = policy_path(t, flow("a", "f", FlowKind::Suspicious, NodeId("d")));
    REQUIRE(r.paths.size() == 1);
    const auto& seq = r.paths[0].nodes;
    CHECK(seq.front() == "a");
    CHECK(seq[1] == "d");  // detour starts with the waypoint hop
    CHECK(std::find(seq.begin(), seq.end(), "d") != seq.end());
    CHECK_NOTHROW(make_path(t, seq));
}

TEST_CASE("bulk policy maximizes the bottleneck bandwidth") {
    // two routes a->c: via b (bandwidth 10) and via d (bandwidth 100)
    Topology t = parse_topology(
        "a b 1 1 10\nb c 1 1 10\na d 1 1 100\nd c 1 1 100\n");
    auto r = policy_path(t, flow("a", "c", FlowKind::Bulk));
    REQUIRE(r.paths.size() == 1);
    CHECK(r.paths[0].nodes == std::vector<NodeId>{"a", "d", "c"});
}

TEST_CASE("policy errors on disconnected endpoints") {
    Topology t = parse_topology("directed\na b\nc d\n");
    CHECK_THROWS_AS(policy_path(t, flow("a", "c", FlowKind::TimeSensitive)), NoPath);
}

TEST_CASE("build_desired_set deduplicates per pair") {
    Topology t = example7();
    std::vector<FlowSpec> flows = {flow("a", "f", FlowKind::TimeSensitive),
                                   flow("a", "f", FlowKind::TimeSensitive)};
    flows[1].fid = "dup";
    auto set = build_desired_set(t, flows);
    CHECK(set.paths.size() == 1);
    CHECK(set.flow_of.size() == 1);
}

TEST_CASE("build_desired_set on the four-flow example yields the four routes") {
    Topology t = example7();
    std::vector<FlowSpec> flows = {
        flow("a", "f", FlowKind::TimeSensitive),          // a b c e f (lex min)
        flow("a", "f", FlowKind::Suspicious, NodeId("d")),  // via d
        flow("a", "f", FlowKind::Protected),              // disjoint pair
    };
    auto set = build_desired_set(t, flows);
    std::set<std::vector<NodeId>> got;
    for (const auto& p : set.paths) got.insert(p.nodes);
    // lexicographic minimum shortest route, the waypoint detour, and at least
    // one more route from the disjoint pair; duplicates collapse
    CHECK(got.count({"a", "b", "c", "e", "f"}) == 1);
    CHECK(got.count({"a", "d", "c", "e", "f"}) == 1);
    CHECK(got.size() >= 3);
    for (const auto& seq : got) {
        CHECK(seq.front() == "a");
        CHECK(seq.back() == "f");
        CHECK_NOTHROW(make_path(t, seq));
    }
}

TEST_CASE("build_desired_set records failures as warnings, not errors") {
    Topology t = parse_topology("directed\na b\nc d\n");
    std::vector<FlowSpec> flows = {flow("a", "c", FlowKind::TimeSensitive),
                                   flow("a", "b", FlowKind::TimeSensitive)};
    DesiredPathSet set;
    CHECK_NOTHROW(set = build_desired_set(t, flows));
    CHECK(set.paths.size() == 1);
    CHECK(set.warnings.size() == 1);
}

TEST_CASE("empty flow list yields empty set") {
    Topology t = example7();
    auto set = build_desired_set(t, {});
    CHECK(set.paths.empty());
    CHECK(set.warnings.empty());
}

TEST_CASE("desired paths always validate and are pairwise distinct per pair") {
    Topology t = example7();
    auto set = build_desired_set(t, gen_flows(t, 3, 13));
    std::set<std::pair<std::pair<NodeId, NodeId>, std::vector<NodeId>>> seen;
    for (const auto& p : set.paths) {
        CHECK_NOTHROW(make_path(t, p.nodes));
        CHECK(seen.insert({{p.head(), p.tail()}, p.nodes}).second);
    }
}

TEST_CASE("mix_seed spreads nearby keys") {
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
    CHECK(mix_seed(1, 0) != mix_seed(0, 1));
    CHECK(mix_seed(7, 9) == mix_seed(7, 9));
}
