#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "paco/harness.hpp"
#include "paco/net_model.hpp"

using namespace paco;

namespace {

// 7-node example graph: two length-2 routes a->c and two length-2 routes c->f.
Topology example7() { return parse_topology(read_file("tests/data/fig1.topo")); }

}  // namespace

TEST_CASE("parse smallest undirected file yields both directions") {
    Topology t = parse_topology("a b 1 10 100\n");
    CHECK(t.nodes().size() == 2);
    CHECK(t.has_link("a", "b"));
    CHECK(t.has_link("b", "a"));
    CHECK(t.link_attr("a", "b").latency == doctest::Approx(10));
    CHECK(t.link_attr("a", "b").bandwidth == doctest::Approx(100));
}

TEST_CASE("parse 7-node directed example") {
    Topology t = example7();
    CHECK(t.nodes().size() == 7);
    CHECK(t.links().size() == 8);
    CHECK(t.has_link("a", "b"));
    CHECK(t.has_link("g", "f"));
    CHECK_FALSE(t.has_link("b", "a"));  // directed mode
}

TEST_CASE("parse rejects self-loops and malformed lines") {
    CHECK_THROWS_AS(parse_topology("a a 1 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_topology("a\n"), ParseError);
    CHECK_THROWS_AS(parse_topology("a b one 1 1\n"), ParseError);
}

TEST_CASE("parse skips comments and blank lines") {
    Topology t = parse_topology("# header comment\n\na b\n");
    CHECK(t.nodes().size() == 2);
    // missing latency/bandwidth columns take the documented defaults
    CHECK(t.link_attr("a", "b").latency == doctest::Approx(1));
    CHECK(t.link_attr("a", "b").bandwidth == doctest::Approx(100));
}

TEST_CASE("make_path accepts valid sequences and derives length") {
    Topology t = example7();
    Path p = make_path(t, {"a", "b", "c", "e", "f"});
    CHECK(p.length() == 4);
    CHECK(p.head() == "a");
    CHECK(p.tail() == "f");
    CHECK(p.links().size() == 4);
    CHECK(make_path(t, {"a", "b"}).length() == 1);
}

TEST_CASE("make_path rejects non-simple and disconnected sequences") {
    Topology t = parse_topology("a b\nb c\n");
    CHECK_THROWS_AS(make_path(t, {"a", "b", "a"}), NotSimple);
    CHECK_THROWS_AS(make_path(t, {"a", "c"}), MissingLink);
}

TEST_CASE("link incidence sums to path length") {
    Topology t = example7();
    Path p = make_path(t, {"a", "d", "c", "g", "f"});
    auto lv = p.links();
    std::set<Link> links(lv.begin(), lv.end());
    CHECK(static_cast<int>(links.size()) == p.length());  // b_{e,P} in {0,1}
}

TEST_CASE("pathlet rule demand covers every node except the last") {
    Pathlet s;
    s.nodes = {"a", "b", "c"};
    CHECK(s.length() == 2);
    CHECK(s.rule_demand("a") == 1);
    CHECK(s.rule_demand("b") == 1);
    CHECK(s.rule_demand("c") == 0);
    CHECK(s.rule_count() == 2);
    auto rn = s.rule_nodes();
    CHECK(rn == std::vector<NodeId>{"a", "b"});
}

TEST_CASE("representative pathlet demands one rule at its start") {
    Pathlet rep;
    rep.nodes = {"c", "e", "f"};
    rep.kind = PathletKind::Representative;
    CHECK(rep.rule_count() == 1);
    CHECK(rep.rule_demand("c") == 1);
    CHECK(rep.rule_demand("e") == 0);
}

TEST_CASE("enumerate_candidates finds both length-2 routes of a diamond pair") {
    Topology t = example7();
    CandidateSet cs = enumerate_candidates(t, 2, 2, 0);
    auto has = [&](std::vector<NodeId> seq) {
        return std::any_of(cs.pathlets.begin(), cs.pathlets.end(),
                           [&](const Pathlet& p) { return p.nodes == seq; });
    };
    CHECK(has({"a", "b", "c"}));
    CHECK(has({"a", "d", "c"}));
    CHECK(has({"c", "e", "f"}));
    CHECK(has({"c", "g", "f"}));
}

TEST_CASE("k=1 max_len=1 yields exactly the links") {
    Topology t = example7();
    CandidateSet cs = enumerate_candidates(t, 1, 1, 0);
    CHECK(cs.pathlets.size() == t.links().size());
    for (const auto& p : cs.pathlets) {
        CHECK(p.length() == 1);
        CHECK(t.has_link(p.nodes[0], p.nodes[1]));
    }
}

TEST_CASE("enumerate_candidates is deterministic and duplicate-free") {
    Topology t = example7();
    CandidateSet a = enumerate_candidates(t, 3, 4, 7);
    CandidateSet b = enumerate_candidates(t, 3, 4, 7);
    REQUIRE(a.pathlets.size() == b.pathlets.size());
    std::set<std::vector<NodeId>> seen;
    for (size_t i = 0; i < a.pathlets.size(); ++i) {
        CHECK(a.pathlets[i].nodes == b.pathlets[i].nodes);
        CHECK(seen.insert(a.pathlets[i].nodes).second);  // no duplicates
    }
}

TEST_CASE("enumerated candidates are valid simple paths") {
    Topology t = example7();
    CandidateSet cs = enumerate_candidates(t, 3, 4, 0);
    for (const auto& p : cs.pathlets) {
        CHECK(p.length() <= 4);
        CHECK_NOTHROW(make_path(t, p.nodes));
    }
}

TEST_CASE("is_subpath checks contiguous subsequences") {
    Topology t = example7();
    Path p = make_path(t, {"a", "b", "c", "e", "f"});
    Pathlet s1, s2, s3;
    s1.nodes = {"c", "e", "f"};
    s2.nodes = {"a", "b", "c", "e", "f"};
    s3.nodes = {"b", "c", "g"};
    CHECK(is_subpath(s1, p));
    CHECK(is_subpath(s2, p));  // improper subpath admitted
    CHECK_FALSE(is_subpath(s3, p));
    Pathlet skip;
    skip.nodes = {"a", "c"};  // subsequence but not contiguous
    CHECK_FALSE(is_subpath(skip, p));
}

TEST_CASE("simple_paths enumerates all routes up to a length bound") {
    Topology t = example7();
    auto all = simple_paths(t, "a", "f", 4);
    CHECK(all.size() == 4);  // the 2x2 diamond combinations
    for (const auto& seq : all) CHECK_NOTHROW(make_path(t, seq));
    auto none = simple_paths(t, "f", "a", 6);
    CHECK(none.empty());  // directed graph, no reverse route
}

TEST_CASE("free capacity defaults and overrides") {
    Topology t = parse_topology("a b\n");
    t.set_default_capacity(2000);
    CHECK(t.free_capacity("a") == 2000);
    t.set_free_capacity("a", 5);
    CHECK(t.free_capacity("a") == 5);
    CHECK_THROWS_AS(t.set_free_capacity("a", -1), Error);
}

TEST_CASE("neighbors are sorted") {
    Topology t = parse_topology("directed\nc g\nc e\nc a\n");
    CHECK(t.neighbors("c") == std::vector<NodeId>{"a", "e", "g"});
}
