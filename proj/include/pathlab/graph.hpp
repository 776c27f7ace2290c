#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathlab/errors.hpp"

namespace pathlab {

/// Undirected simple graph. Neighbor lists are sorted and strictly increasing;
/// adjacency is symmetric by construction and self-loops are rejected.
struct Graph {
    int num_nodes = 0;
    std::vector<std::vector<int>> adj;
    std::optional<std::vector<std::vector<double>>> node_features;
    std::map<std::pair<int, int>, std::vector<double>> edge_features;
    std::optional<double> label;
    std::string id;

    static Graph from_edges(int num_nodes, const std::vector<std::pair<int, int>>& edges,
                            std::string id = {});

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;
    int num_edges() const;
    std::vector<std::pair<int, int>> edges() const;  // u < v, sorted

    /// Relabel nodes: node v becomes perm[v]. Features and labels follow.
    Graph permuted(const std::vector<int>& perm) const;

    void validate() const;  // throws SchemaError on broken invariants
};

enum class Task { None, Classification, Regression };

struct Dataset {
    std::vector<Graph> graphs;
    Task task = Task::None;
    int num_classes = 0;
    std::string name;
};

// --- graph6 ---------------------------------------------------------------

/// Parse newline-separated graph6 lines (short form and 4-byte extended form).
std::vector<Graph> parse_graph6(const std::string& bytes);

/// Encode one graph as a graph6 line (no trailing newline).
std::string encode_graph6(const Graph& g);

// --- JSONL dataset --------------------------------------------------------

Dataset parse_jsonl_dataset(const std::string& bytes);
std::string write_jsonl_dataset(const Dataset& ds);

// --- generators -----------------------------------------------------------

Graph make_cycle(int n);
Graph make_disjoint_cycles(int n, int parts);
Graph make_csl(int n, int skip);

/// The ten standard skip values used on 41 nodes.
const std::array<int, 10>& csl_skips();

/// Ten pairwise non-isomorphic 4-regular graphs on 41 nodes, labels 0..9.
std::vector<Graph> csl_family();

/// 150-graph classification dataset: 15 copies per isomorphism class.
Dataset csl_dataset();

Graph make_rook_4x4();
Graph make_shrikhande();
Graph make_er_random(int n, double p, std::uint64_t seed);

/// (C_{2k}, C_k disjoint-union C_k): same degree sequence, 1-WL equivalent.
std::pair<Graph, Graph> wl_hard_pair(int k);

/// Strongly-regular parameters (n, k, lambda, mu) via brute-force counting.
std::optional<std::array<int, 4>> check_srg(const Graph& g);

}  // namespace pathlab
