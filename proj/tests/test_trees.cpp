#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pathlab/trees.hpp"

using namespace pathlab;

namespace {

Graph p3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}, "p3"); }
Graph k3() { return Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}, "k3"); }

}  // namespace

TEST_CASE("wl tree of a cycle node unrolls all walks") {
    Graph g = k3();
    RootedTree t = build_wl_tree(g, 0, 2);
    // root, 2 children, 2 grandchildren each
    CHECK(t.size() == 7);
    CHECK(t.height() == 2);
    CHECK(t.level_sizes() == std::vector<std::size_t>{1, 2, 4});
    CHECK(t.label[0] == 0);
    CHECK(t.parent[0] == -1);
    for (int i = 1; i < t.size(); ++i) CHECK(t.parent[i] < i);
}

TEST_CASE("wl tree node budget throws") {
    Graph g = k3();
    CHECK_THROWS_AS(build_wl_tree(g, 0, 20, 50), BudgetExceeded);
}

TEST_CASE("path tree is the trie of stored paths") {
    Graph g = p3();
    PathSet ps = enumerate_paths(g, PathKind::AP, 2);
    RootedTree center = build_path_tree(ps, 1, 2);
    // from the center: two length-1 paths, no longer simple paths
    CHECK(center.size() == 3);
    CHECK(center.level_sizes() == std::vector<std::size_t>{1, 2});
    RootedTree end = build_path_tree(ps, 0, 2);
    // 0-1 and 0-1-2 share the prefix node
    CHECK(end.size() == 3);
    CHECK(end.level_sizes() == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("exact hashing is invariant under child reordering and injective") {
    // the same shape entered in two sibling orders
    RootedTree a;
    a.label = {0, 1, 2, 3};
    a.parent = {-1, 0, 0, 1};
    a.level = {0, 1, 1, 2};
    RootedTree b;
    b.label = {0, 2, 1, 3};
    b.parent = {-1, 0, 0, 2};
    b.level = {0, 1, 1, 2};
    RootedTree c;  // chain of 4: different shape, same size
    c.label = {0, 1, 2, 3};
    c.parent = {-1, 0, 1, 2};
    c.level = {0, 1, 2, 3};
    TreeHasher exact(TreeHasher::Mode::Exact);
    CHECK(exact.hash(a) == exact.hash(b));
    CHECK(exact.hash(a) != exact.hash(c));
    TreeHasher digest(TreeHasher::Mode::Digest);
    CHECK(digest.hash(a) == digest.hash(b));
    CHECK(digest.hash(a) != digest.hash(c));
    CHECK(digest.hash(a).hex().size() == 32);
}

TEST_CASE("digest and exact modes agree on a seeded corpus") {
    TreeHasher exact(TreeHasher::Mode::Exact);
    TreeHasher digest(TreeHasher::Mode::Digest);
    std::vector<TreeHash> ex, dg;
    for (int i = 0; i < 12; ++i) {
        Graph g = make_er_random(7, 0.35, 700 + static_cast<std::uint64_t>(i));
        PathSet ps = enumerate_paths(g, PathKind::AP, 3);
        for (int v = 0; v < g.num_nodes; ++v) {
            RootedTree t = build_path_tree(ps, v, 3);
            ex.push_back(exact.hash(t));
            dg.push_back(digest.hash(t));
        }
    }
    for (std::size_t i = 0; i < ex.size(); ++i)
        for (std::size_t j = i + 1; j < ex.size(); ++j)
            CHECK((ex[i] == ex[j]) == (dg[i] == dg[j]));
}

TEST_CASE("path trees level-embed into walk trees") {
    for (int i = 0; i < 10; ++i) {
        Graph g = make_er_random(8, 0.4, 210 + static_cast<std::uint64_t>(i));
        for (PathKind kind : {PathKind::SP, PathKind::SPPlus, PathKind::AP}) {
            PathSet ps = enumerate_paths(g, kind, 3);
            for (int v = 0; v < g.num_nodes; ++v) {
                RootedTree pt = build_path_tree(ps, v, 3);
                RootedTree wt = build_wl_tree(g, v, 3);
                CHECK(level_subset_check(pt, wt));
            }
        }
    }
}

TEST_CASE("level_subset_check rejects a non-subtree") {
    Graph g = p3();
    PathSet ps = enumerate_paths(g, PathKind::AP, 2);
    RootedTree pt = build_path_tree(ps, 0, 2);
    RootedTree other = build_wl_tree(k3(), 0, 2);
    CHECK_FALSE(level_subset_check(other, pt));
}

TEST_CASE("redundant-node classification on a triangle walk tree") {
    RootedTree wt = build_wl_tree(k3(), 0, 2);
    auto flags = classify_tree_nodes(wt);
    REQUIRE(flags.size() == static_cast<std::size_t>(wt.size()));
    CHECK_FALSE(flags[0]);
    int redundant = 0;
    for (int i = 0; i < wt.size(); ++i) {
        if (wt.level[i] == 1) CHECK_FALSE(flags[i]);
        if (flags[static_cast<std::size_t>(i)]) ++redundant;
    }
    // at level 2 each child revisits either the root or stays fresh
    CHECK(redundant == 2);
}

TEST_CASE("pruned walk tree equals the all-paths tree") {
    TreeHasher exact(TreeHasher::Mode::Exact);
    for (int i = 0; i < 12; ++i) {
        Graph g = make_er_random(8, 0.4, 530 + static_cast<std::uint64_t>(i));
        PathSet ps = enumerate_paths(g, PathKind::AP, 3);
        for (int v = 0; v < g.num_nodes; ++v)
            for (int k = 1; k <= 3; ++k) {
                RootedTree pruned = prune_redundant(build_wl_tree(g, v, k));
                RootedTree pt = build_path_tree(ps, v, k);
                CHECK(exact.hash(pruned) == exact.hash(pt));
            }
    }
}

TEST_CASE("walk trees separate the center/triangle pair, path trees do not") {
    Graph a = p3();
    Graph b = k3();
    TreeHasher exact(TreeHasher::Mode::Exact);
    // walk trees: equal at height 1, different at height 2
    CHECK(exact.hash(build_wl_tree(a, 1, 1)) == exact.hash(build_wl_tree(b, 0, 1)));
    CHECK(exact.hash(build_wl_tree(a, 1, 2)) != exact.hash(build_wl_tree(b, 0, 2)));
    for (PathKind kind : {PathKind::SP, PathKind::SPPlus}) {
        PathSet pa = enumerate_paths(a, kind, 2);
        PathSet pb = enumerate_paths(b, kind, 2);
        CHECK(exact.hash(build_path_tree(pa, 1, 2)) ==
              exact.hash(build_path_tree(pb, 0, 2)));
    }
}

TEST_CASE("dot output lists every node and edge") {
    RootedTree t = build_wl_tree(k3(), 0, 1);
    std::ostringstream os;
    write_dot(t, os);
    std::string s = os.str();
    CHECK(s.find("digraph") != std::string::npos);
    for (int i = 0; i < t.size(); ++i)
        CHECK(s.find(std::to_string(i)) != std::string::npos);
}
