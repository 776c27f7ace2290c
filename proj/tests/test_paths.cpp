#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracle.hpp"
#include "pathlab/paths.hpp"

using namespace pathlab;

namespace {

std::vector<oracle::Path> stored_paths(const PathSet& ps, int v, int k) {
    std::vector<oracle::Path> out;
    for (std::size_t i = 0; i < ps.path_count(v, k); ++i) {
        auto p = ps.path(v, k, i);
        out.emplace_back(p.begin(), p.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<oracle::Path> oracle_paths(const Graph& g, PathKind kind, int v, int k) {
    switch (kind) {
        case PathKind::SP: return oracle::shortest_paths_single(g, v, k);
        case PathKind::SPPlus: return oracle::shortest_paths_all(g, v, k);
        case PathKind::AP: return oracle::all_paths(g, v, k);
    }
    return {};
}

}  // namespace

TEST_CASE("bfs distances on a path graph") {
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}});
    auto d = bfs_distances(g, 0);
    CHECK(d == std::vector<int>{0, 1, 2, 3, kUnreachable});
}

TEST_CASE("shortest path counts on the 4-cycle") {
    Graph g = make_cycle(4);
    auto c = count_shortest_paths(g, 0);
    CHECK(c == std::vector<long long>{1, 1, 2, 1});
}

TEST_CASE("enumeration matches the naive oracle on seeded er graphs") {
    for (int i = 0; i < 25; ++i) {
        int n = 4 + i % 7;
        double p = 0.2 + 0.05 * static_cast<double>(i % 5);
        Graph g = make_er_random(n, p, 900 + static_cast<std::uint64_t>(i));
        const int K = 4;
        for (PathKind kind : {PathKind::SP, PathKind::SPPlus, PathKind::AP}) {
            PathSet ps = enumerate_paths(g, kind, K);
            for (int v = 0; v < n; ++v)
                for (int k = 1; k <= K; ++k)
                    CHECK(stored_paths(ps, v, k) == oracle_paths(g, kind, v, k));
        }
    }
}

TEST_CASE("spp path counts agree with count_shortest_paths") {
    for (int i = 0; i < 10; ++i) {
        Graph g = make_er_random(9, 0.35, 50 + static_cast<std::uint64_t>(i));
        const int K = 4;
        PathSet ps = enumerate_paths(g, PathKind::SPPlus, K);
        for (int v = 0; v < g.num_nodes; ++v) {
            auto dist = bfs_distances(g, v);
            auto cnt = count_shortest_paths(g, v);
            std::vector<long long> seen(static_cast<std::size_t>(g.num_nodes), 0);
            for (int k = 1; k <= K; ++k)
                for (std::size_t j = 0; j < ps.path_count(v, k); ++j)
                    seen[static_cast<std::size_t>(ps.path(v, k, j).back())]++;
            for (int u = 0; u < g.num_nodes; ++u)
                if (u != v && dist[static_cast<std::size_t>(u)] <= K)
                    CHECK(seen[static_cast<std::size_t>(u)] ==
                          cnt[static_cast<std::size_t>(u)]);
        }
    }
}

TEST_CASE("sp stores exactly one path per reachable target") {
    Graph g = make_cycle(6);
    PathSet ps = enumerate_paths(g, PathKind::SP, 3);
    // node 3 is at distance 3 from node 0 with two shortest paths; the stored
    // one is the lexicographically smaller sequence
    REQUIRE(ps.path_count(0, 3) == 1);
    auto p = ps.path(0, 3, 0);
    CHECK(oracle::Path(p.begin(), p.end()) == oracle::Path{0, 1, 2, 3});
}

TEST_CASE("total and per-length counters") {
    Graph g = make_cycle(5);
    PathSet ps = enumerate_paths(g, PathKind::AP, 2);
    CHECK(ps.count_of_length(1) == 10);  // each edge in both directions
    CHECK(ps.count_of_length(2) == 10);
    CHECK(ps.total_paths() == 20);
}

TEST_CASE("budget is enforced") {
    Graph g = make_er_random(12, 0.8, 3);
    CHECK_THROWS_AS(enumerate_paths(g, PathKind::AP, 6, 100), BudgetExceeded);
}

TEST_CASE("enumeration is identical for any thread count") {
    Graph g = make_er_random(14, 0.4, 11);
    PathSet a = enumerate_paths(g, PathKind::AP, 4, kDefaultPathBudget, 1);
    PathSet b = enumerate_paths(g, PathKind::AP, 4, kDefaultPathBudget, 4);
    CHECK(a.nodes == b.nodes);
    CHECK(a.block_start == b.block_start);
}
