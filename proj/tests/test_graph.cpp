#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "pathlab/graph.hpp"

using namespace pathlab;

TEST_CASE("from_edges validates input") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), SchemaError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), SchemaError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), SchemaError);
    CHECK_THROWS_AS(Graph::from_edges(-1, {}), SchemaError);
    Graph g = Graph::from_edges(3, {{2, 0}, {0, 1}});
    g.validate();
    CHECK(g.num_edges() == 2);
    CHECK(g.adj[0] == std::vector<int>{1, 2});
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(1, 2));
}

TEST_CASE("graph6 decodes known strings") {
    // Values fixed from the format definition: 6-bit groups over the
    // column-major upper triangle, offset 63.
    auto k1 = parse_graph6("@");
    REQUIRE(k1.size() == 1);
    CHECK(k1[0].num_nodes == 1);
    CHECK(k1[0].num_edges() == 0);

    auto k3 = parse_graph6("Bw");
    REQUIRE(k3.size() == 1);
    CHECK(k3[0].num_nodes == 3);
    CHECK(k3[0].num_edges() == 3);

    auto star = parse_graph6("D?{");
    REQUIRE(star.size() == 1);
    CHECK(star[0].num_nodes == 5);
    CHECK(star[0].edges() ==
          std::vector<std::pair<int, int>>{{0, 4}, {1, 4}, {2, 4}, {3, 4}});
}

TEST_CASE("graph6 encodes known graphs") {
    CHECK(encode_graph6(make_cycle(5)) == "Dhc");
    CHECK(encode_graph6(Graph::from_edges(1, {})) == "@");
}

TEST_CASE("graph6 round-trips random graphs, including n >= 63") {
    for (int n : {1, 5, 17, 62, 63, 70}) {
        Graph g = make_er_random(n, 0.3, 42 + static_cast<std::uint64_t>(n));
        auto back = parse_graph6(encode_graph6(g));
        REQUIRE(back.size() == 1);
        CHECK(back[0].num_nodes == g.num_nodes);
        CHECK(back[0].edges() == g.edges());
    }
}

TEST_CASE("graph6 rejects malformed input") {
    CHECK_THROWS_AS(parse_graph6("B"), MalformedGraph6);       // truncated bits
    CHECK_THROWS_AS(parse_graph6("B\x1fw"), MalformedGraph6);  // byte below offset
}

TEST_CASE("jsonl dataset round-trip preserves features and labels") {
    Dataset ds;
    ds.name = "tiny";
    ds.task = Task::Classification;
    ds.num_classes = 2;
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}}, "p3");
    g.node_features = {{1.0, 0.5}, {0.0, -1.0}, {2.0, 0.25}};
    g.edge_features[{0, 1}] = {0.75};
    g.edge_features[{1, 2}] = {-0.5};
    g.label = 1.0;
    ds.graphs.push_back(g);
    Dataset back = parse_jsonl_dataset(write_jsonl_dataset(ds));
    REQUIRE(back.graphs.size() == 1);
    const Graph& h = back.graphs[0];
    CHECK(h.edges() == g.edges());
    CHECK(*h.node_features == *g.node_features);
    CHECK(h.edge_features == g.edge_features);
    CHECK(*h.label == 1.0);
    CHECK(back.task == Task::Classification);
    CHECK(back.num_classes == 2);
}

TEST_CASE("permuted relabels nodes consistently") {
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}, "p4");
    g.node_features = {{0.0}, {1.0}, {2.0}, {3.0}};
    g.edge_features[{0, 1}] = {7.0};
    g.edge_features[{1, 2}] = {8.0};
    g.edge_features[{2, 3}] = {9.0};
    std::vector<int> perm = {3, 1, 0, 2};
    Graph h = g.permuted(perm);
    h.validate();
    CHECK(h.has_edge(3, 1));
    CHECK(h.has_edge(1, 0));
    CHECK(h.has_edge(0, 2));
    CHECK(h.num_edges() == 3);
    CHECK((*h.node_features)[3] == std::vector<double>{0.0});
    CHECK(h.edge_features.at({1, 3}) == std::vector<double>{7.0});
}

TEST_CASE("generators produce the documented families") {
    Graph c6 = make_cycle(6);
    CHECK(c6.num_edges() == 6);
    for (int v = 0; v < 6; ++v) CHECK(c6.degree(v) == 2);

    Graph two = make_disjoint_cycles(6, 2);
    CHECK(two.num_edges() == 6);
    CHECK_FALSE(two.has_edge(0, 3));

    CHECK_THROWS_AS(make_cycle(2), InvalidParams);
    CHECK_THROWS_AS(make_disjoint_cycles(6, 4), InvalidParams);
    CHECK_THROWS_AS(make_csl(41, 1), InvalidParams);

    auto [a, b] = wl_hard_pair(3);
    CHECK(a.num_nodes == 6);
    CHECK(b.num_nodes == 6);
    CHECK(a.num_edges() == b.num_edges());
}

TEST_CASE("csl family is ten distinct 4-regular graphs on 41 nodes") {
    auto fam = csl_family();
    REQUIRE(fam.size() == 10);
    std::set<std::string> g6;
    for (std::size_t c = 0; c < fam.size(); ++c) {
        const Graph& g = fam[c];
        CHECK(g.num_nodes == 41);
        for (int v = 0; v < g.num_nodes; ++v) CHECK(g.degree(v) == 4);
        CHECK(*g.label == static_cast<double>(c));
        g6.insert(encode_graph6(g));
    }
    CHECK(g6.size() == 10);  // distinct as labelled graphs

    Dataset ds = csl_dataset();
    CHECK(ds.graphs.size() == 150);
    CHECK(ds.num_classes == 10);
}

TEST_CASE("er generator is deterministic in the seed") {
    Graph a = make_er_random(12, 0.4, 7);
    Graph b = make_er_random(12, 0.4, 7);
    Graph c = make_er_random(12, 0.4, 8);
    CHECK(a.edges() == b.edges());
    CHECK(a.edges() != c.edges());
}

TEST_CASE("srg parameters of the benchmark pair") {
    auto rook = check_srg(make_rook_4x4());
    auto shri = check_srg(make_shrikhande());
    REQUIRE(rook.has_value());
    REQUIRE(shri.has_value());
    std::array<int, 4> expect{16, 6, 2, 2};
    CHECK(*rook == expect);
    CHECK(*shri == expect);
    CHECK(encode_graph6(make_rook_4x4()) != encode_graph6(make_shrikhande()));
    CHECK_FALSE(check_srg(Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}})).has_value());
}
