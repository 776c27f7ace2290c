#include "pathlab/paths.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <thread>

namespace pathlab {

const char* path_kind_name(PathKind k) {
    switch (k) {
        case PathKind::SP: return "sp";
        case PathKind::SPPlus: return "spp";
        case PathKind::AP: return "ap";
    }
    return "?";
}

PathKind path_kind_from_name(const std::string& s) {
    if (s == "sp") return PathKind::SP;
    if (s == "spp") return PathKind::SPPlus;
    if (s == "ap") return PathKind::AP;
    throw InvalidParams("unknown path kind: " + s);
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> d(g.num_nodes, kUnreachable);
    d[source] = 0;
    std::deque<int> q{source};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : g.adj[u])
            if (d[w] == kUnreachable) {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
    }
    return d;
}

std::vector<long long> count_shortest_paths(const Graph& g, int source) {
    std::vector<int> d = bfs_distances(g, source);
    // process nodes in BFS-distance order; c(u) = sum of c over predecessors
    std::vector<int> order;
    order.reserve(g.num_nodes);
    for (int v = 0; v < g.num_nodes; ++v)
        if (d[v] != kUnreachable) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<long long> c(g.num_nodes, 0);
    c[source] = 1;
    for (int u : order) {
        if (u == source) continue;
        for (int w : g.adj[u])
            if (d[w] + 1 == d[u]) c[u] += c[w];
    }
    return c;
}

namespace {

/// Per-source enumeration into per-length buffers, DFS in sorted neighbor
/// order so paths come out in lexicographic order within each length.
struct SourceEnumerator {
    const Graph& g;
    PathKind kind;
    int K;
    std::size_t cap;
    std::vector<int> dist;
    std::vector<char> visited;
    std::vector<std::int32_t> stack;
    std::vector<char> sp_done;                        // SP: target already has its path
    std::vector<std::vector<std::int32_t>> by_len;    // [k-1] flat paths
    std::size_t stored = 0;

    SourceEnumerator(const Graph& g, PathKind kind, int K, std::size_t cap)
        : g(g), kind(kind), K(K), cap(cap) {}

    void run(int source) {
        by_len.assign(K, {});
        visited.assign(g.num_nodes, 0);
        stack.clear();
        if (kind != PathKind::AP) {
            dist = bfs_distances(g, source);
            if (kind == PathKind::SP) sp_done.assign(g.num_nodes, 0);
        }
        visited[source] = 1;
        stack.push_back(source);
        dfs(source);
    }

    void record(int k) {
        if (++stored > cap) throw BudgetExceeded(stored - 1, cap);
        auto& buf = by_len[k - 1];
        buf.insert(buf.end(), stack.begin(), stack.end());
    }

    void dfs(int u) {
        int k = static_cast<int>(stack.size()) - 1;
        if (k > 0) {
            switch (kind) {
                case PathKind::AP:
                    record(k);
                    break;
                case PathKind::SPPlus:
                    record(k);  // DFS is restricted to BFS-DAG edges below
                    break;
                case PathKind::SP:
                    if (!sp_done[u]) {
                        sp_done[u] = 1;
                        record(k);
                    }
                    break;
            }
        }
        if (k == K) return;
        for (int w : g.adj[u]) {
            if (visited[w]) continue;
            if (kind != PathKind::AP && dist[w] != k + 1) continue;
            visited[w] = 1;
            stack.push_back(w);
            dfs(w);
            stack.pop_back();
            visited[w] = 0;
        }
    }
};

}  // namespace

PathSet enumerate_paths(const Graph& g, PathKind kind, int K, std::size_t budget,
                        int threads) {
    if (K < 1) throw InvalidParams("enumerate_paths needs K >= 1");
    if (budget == 0) throw InvalidParams("enumerate_paths needs budget > 0");
    int n = g.num_nodes;
    // per-source buffers, filled independently and merged in source order
    std::vector<std::vector<std::vector<std::int32_t>>> per_source(n);
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&](int begin, int end) {
        try {
            SourceEnumerator e(g, kind, K, budget);
            for (int v = begin; v < end; ++v) {
                e.stored = 0;
                e.run(v);
                per_source[v] = std::move(e.by_len);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!err) err = std::current_exception();
        }
    };
    threads = std::max(1, std::min(threads, n == 0 ? 1 : n));
    if (threads == 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            int begin = static_cast<int>(static_cast<long long>(n) * t / threads);
            int end = static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);

    PathSet ps;
    ps.kind = kind;
    ps.K = K;
    ps.num_nodes = n;
    ps.block_start.assign(static_cast<std::size_t>(n) * K + 1, 0);
    std::size_t total_nodes = 0, total_paths = 0;
    for (int v = 0; v < n; ++v)
        for (int k = 1; k <= K; ++k) {
            std::size_t sz = per_source[v][k - 1].size();
            total_nodes += sz;
            total_paths += sz / (k + 1);
            ps.block_start[ps.block_index(v, k) + 1] = total_nodes;
        }
    if (total_paths > budget) throw BudgetExceeded(total_paths, budget);
    ps.nodes.reserve(total_nodes);
    for (int v = 0; v < n; ++v)
        for (int k = 1; k <= K; ++k) {
            const auto& buf = per_source[v][k - 1];
            ps.nodes.insert(ps.nodes.end(), buf.begin(), buf.end());
        }
    return ps;
}

std::size_t PathSet::total_paths() const {
    std::size_t total = 0;
    for (int v = 0; v < num_nodes; ++v)
        for (int k = 1; k <= K; ++k) total += path_count(v, k);
    return total;
}

std::size_t PathSet::count_of_length(int k) const {
    std::size_t total = 0;
    for (int v = 0; v < num_nodes; ++v) total += path_count(v, k);
    return total;
}

}  // namespace pathlab
