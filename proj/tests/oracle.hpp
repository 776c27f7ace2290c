#pragma once

// Reference oracles for the test suite, written independently of the library's
// enumeration code: plain recursive search over all simple paths followed by
// post-filtering, with no pruning or sharing.

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "pathlab/graph.hpp"

namespace oracle {

using Path = std::vector<int>;

inline std::vector<int> bfs(const pathlab::Graph& g, int source) {
    std::vector<int> dist(static_cast<std::size_t>(g.num_nodes),
                          std::numeric_limits<int>::max());
    std::queue<int> q;
    dist[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.adj[static_cast<std::size_t>(u)])
            if (dist[static_cast<std::size_t>(v)] == std::numeric_limits<int>::max()) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
    }
    return dist;
}

namespace detail {
inline void extend(const pathlab::Graph& g, Path& cur, std::vector<char>& used, int k,
                   std::vector<Path>& out) {
    if (static_cast<int>(cur.size()) == k + 1) {
        out.push_back(cur);
        return;
    }
    for (int nb : g.adj[static_cast<std::size_t>(cur.back())])
        if (!used[static_cast<std::size_t>(nb)]) {
            used[static_cast<std::size_t>(nb)] = 1;
            cur.push_back(nb);
            extend(g, cur, used, k, out);
            cur.pop_back();
            used[static_cast<std::size_t>(nb)] = 0;
        }
}
}  // namespace detail

/// Every simple path of length exactly k starting at v, sorted.
inline std::vector<Path> all_paths(const pathlab::Graph& g, int v, int k) {
    std::vector<Path> out;
    Path cur{v};
    std::vector<char> used(static_cast<std::size_t>(g.num_nodes), 0);
    used[static_cast<std::size_t>(v)] = 1;
    detail::extend(g, cur, used, k, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// All shortest paths of length exactly k from v: the simple paths whose
/// endpoint is at BFS distance exactly k.
inline std::vector<Path> shortest_paths_all(const pathlab::Graph& g, int v, int k) {
    auto dist = bfs(g, v);
    std::vector<Path> out;
    for (const Path& p : all_paths(g, v, k))
        if (dist[static_cast<std::size_t>(p.back())] == k) out.push_back(p);
    return out;
}

/// One shortest path of length exactly k per target, lexicographically
/// smallest node sequence among the candidates.
inline std::vector<Path> shortest_paths_single(const pathlab::Graph& g, int v, int k) {
    std::vector<Path> out;
    const Path* best = nullptr;
    auto flush = [&] {
        if (best) out.push_back(*best);
        best = nullptr;
    };
    std::vector<Path> all = shortest_paths_all(g, v, k);  // sorted by sequence
    std::sort(all.begin(), all.end(), [](const Path& a, const Path& b) {
        return std::make_pair(a.back(), a) < std::make_pair(b.back(), b);
    });
    int target = -1;
    for (const Path& p : all) {
        if (p.back() != target) {
            flush();
            target = p.back();
            best = &p;
        }
    }
    flush();
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
