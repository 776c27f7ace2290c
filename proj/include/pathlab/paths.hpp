#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pathlab/graph.hpp"

namespace pathlab {

enum class PathKind { SP, SPPlus, AP };

const char* path_kind_name(PathKind k);
PathKind path_kind_from_name(const std::string& s);  // "sp" | "spp" | "ap"

constexpr int kUnreachable = std::numeric_limits<int>::max();

/// BFS distances from source; unreachable nodes get kUnreachable.
std::vector<int> bfs_distances(const Graph& g, int source);

/// Number of distinct shortest paths from source to every node (0 if unreachable).
std::vector<long long> count_shortest_paths(const Graph& g, int source);

/// Per-source, per-length indexed store of enumerated paths of one kind.
/// Paths of length k occupy k+1 consecutive entries in `nodes`; the block for
/// (source v, length k) is nodes[offset(v,k) .. offset(v,k)+count*(k+1)).
struct PathSet {
    PathKind kind = PathKind::AP;
    int K = 0;
    int num_nodes = 0;
    std::vector<std::int32_t> nodes;
    std::vector<std::size_t> block_start;  // size num_nodes*K + 1, row-major (v, k-1)

    std::size_t block_index(int v, int k) const {
        return static_cast<std::size_t>(v) * K + (k - 1);
    }
    std::size_t path_count(int v, int k) const {
        std::size_t b = block_index(v, k);
        return (block_start[b + 1] - block_start[b]) / (k + 1);
    }
    std::span<const std::int32_t> path(int v, int k, std::size_t i) const {
        return {nodes.data() + block_start[block_index(v, k)] + i * (k + 1),
                static_cast<std::size_t>(k + 1)};
    }
    std::size_t total_paths() const;
    std::size_t count_of_length(int k) const;  // over all sources
};

constexpr std::size_t kDefaultPathBudget = 10'000'000;

/// Enumerate SP / SP+ / AP paths of length 1..K from every source by DFS.
/// Throws BudgetExceeded when the stored path count would exceed the budget.
/// Deterministic for any thread count (per-source blocks merged in order).
PathSet enumerate_paths(const Graph& g, PathKind kind, int K,
                        std::size_t budget = kDefaultPathBudget, int threads = 1);

}  // namespace pathlab
