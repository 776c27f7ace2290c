#include "pathlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace pathlab {

Graph Graph::from_edges(int num_nodes, const std::vector<std::pair<int, int>>& edges,
                        std::string id) {
    if (num_nodes < 0) throw SchemaError("negative node count");
    Graph g;
    g.num_nodes = num_nodes;
    g.id = std::move(id);
    g.adj.assign(num_nodes, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
            throw SchemaError("edge index out of range: (" + std::to_string(u) + "," +
                              std::to_string(v) + ")");
        if (u == v) throw SchemaError("self-loop at node " + std::to_string(u));
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            throw SchemaError("duplicate edge (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ")");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

int Graph::num_edges() const {
    int m = 0;
    for (const auto& nb : adj) m += static_cast<int>(nb.size());
    return m / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < num_nodes; ++u)
        for (int v : adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::permuted(const std::vector<int>& perm) const {
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : edges()) es.emplace_back(perm[u], perm[v]);
    Graph g = from_edges(num_nodes, es, id);
    if (node_features) {
        std::vector<std::vector<double>> nf(num_nodes);
        for (int v = 0; v < num_nodes; ++v) nf[perm[v]] = (*node_features)[v];
        g.node_features = std::move(nf);
    }
    for (const auto& [e, feat] : edge_features) {
        auto key = std::minmax(perm[e.first], perm[e.second]);
        g.edge_features[{key.first, key.second}] = feat;
    }
    g.label = label;
    return g;
}

void Graph::validate() const {
    if (static_cast<int>(adj.size()) != num_nodes) throw SchemaError("adjacency size mismatch");
    for (int u = 0; u < num_nodes; ++u) {
        int prev = -1;
        for (int v : adj[u]) {
            if (v <= prev) throw SchemaError("neighbor list not strictly increasing");
            if (v == u) throw SchemaError("self-loop");
            if (v < 0 || v >= num_nodes) throw SchemaError("neighbor out of range");
            if (!has_edge(v, u)) throw SchemaError("adjacency not symmetric");
            prev = v;
        }
    }
    if (node_features) {
        if (static_cast<int>(node_features->size()) != num_nodes)
            throw SchemaError("node feature count mismatch");
        for (const auto& f : *node_features)
            if (f.size() != node_features->front().size())
                throw SchemaError("node feature dimension mismatch");
    }
    if (!edge_features.empty()) {
        if (static_cast<int>(edge_features.size()) != num_edges())
            throw SchemaError("edge feature count mismatch");
        std::size_t dim = edge_features.begin()->second.size();
        for (const auto& [e, f] : edge_features) {
            if (!has_edge(e.first, e.second)) throw SchemaError("edge feature on non-edge");
            if (f.size() != dim) throw SchemaError("edge feature dimension mismatch");
        }
    }
}

// --- generators -----------------------------------------------------------

Graph make_cycle(int n) {
    if (n < 3) throw InvalidParams("cycle needs n >= 3");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, es, "cycle" + std::to_string(n));
}

Graph make_disjoint_cycles(int n, int parts) {
    if (parts < 1 || n % parts != 0 || n / parts < 3)
        throw InvalidParams("disjoint_cycles needs parts | n and n/parts >= 3");
    int per = n / parts;
    std::vector<std::pair<int, int>> es;
    for (int p = 0; p < parts; ++p) {
        int base = p * per;
        for (int i = 0; i < per; ++i) es.emplace_back(base + i, base + (i + 1) % per);
    }
    return Graph::from_edges(n, es, std::to_string(parts) + "xC" + std::to_string(per));
}

Graph make_csl(int n, int skip) {
    if (skip < 2 || 2 * skip >= n) throw InvalidParams("csl needs 2 <= skip < n/2");
    if (std::gcd(n, skip) != 1) throw InvalidParams("csl skip must be coprime to n");
    std::set<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) {
        int j1 = (i + 1) % n;
        es.insert({std::min(i, j1), std::max(i, j1)});
        int j2 = (i + skip) % n;
        es.insert({std::min(i, j2), std::max(i, j2)});
    }
    return Graph::from_edges(n, {es.begin(), es.end()},
                             "csl" + std::to_string(n) + "_" + std::to_string(skip));
}

const std::array<int, 10>& csl_skips() {
    static const std::array<int, 10> skips = {2, 3, 4, 5, 6, 9, 11, 12, 13, 16};
    return skips;
}

std::vector<Graph> csl_family() {
    std::vector<Graph> fam;
    for (std::size_t c = 0; c < csl_skips().size(); ++c) {
        Graph g = make_csl(41, csl_skips()[c]);
        g.label = static_cast<double>(c);
        fam.push_back(std::move(g));
    }
    return fam;
}

Dataset csl_dataset() {
    Dataset ds;
    ds.name = "csl";
    ds.task = Task::Classification;
    ds.num_classes = 10;
    for (const Graph& g : csl_family()) {
        for (int copy = 0; copy < 15; ++copy) {
            Graph c = g;
            c.id = g.id + "_" + std::to_string(copy);
            ds.graphs.push_back(std::move(c));
        }
    }
    return ds;
}

Graph make_rook_4x4() {
    auto idx = [](int i, int j) { return 4 * i + j; };
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            for (int j2 = j + 1; j2 < 4; ++j2) es.emplace_back(idx(i, j), idx(i, j2));
            for (int i2 = i + 1; i2 < 4; ++i2) es.emplace_back(idx(i, j), idx(i2, j));
        }
    return Graph::from_edges(16, es, "rook4x4");
}

Graph make_shrikhande() {
    // Cayley graph on Z4 x Z4 with connection set +-{(1,0),(0,1),(1,1)}.
    auto idx = [](int i, int j) { return 4 * i + j; };
    const int conn[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
    std::set<std::pair<int, int>> es;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (const auto& d : conn) {
                int u = idx(i, j), v = idx((i + d[0]) % 4, (j + d[1]) % 4);
                auto key = std::minmax(u, v);
                es.insert({key.first, key.second});
            }
    return Graph::from_edges(16, {es.begin(), es.end()}, "shrikhande");
}

Graph make_er_random(int n, double p, std::uint64_t seed) {
    if (n < 0 || p < 0.0 || p > 1.0) throw InvalidParams("er_random needs n >= 0, p in [0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unif(rng) < p) es.emplace_back(u, v);
    return Graph::from_edges(n, es,
                             "er" + std::to_string(n) + "_" + std::to_string(seed));
}

std::pair<Graph, Graph> wl_hard_pair(int k) {
    if (k < 3) throw InvalidParams("wl_hard_pair needs k >= 3");
    return {make_cycle(2 * k), make_disjoint_cycles(2 * k, 2)};
}

std::optional<std::array<int, 4>> check_srg(const Graph& g) {
    int n = g.num_nodes;
    if (n < 2) return std::nullopt;
    int k = g.degree(0);
    for (int v = 1; v < n; ++v)
        if (g.degree(v) != k) return std::nullopt;
    int lambda = -1, mu = -1;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int common = 0;
            const auto& a = g.adj[u];
            const auto& b = g.adj[v];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) ++i;
                else if (a[i] > b[j]) ++j;
                else { ++common; ++i; ++j; }
            }
            int& slot = g.has_edge(u, v) ? lambda : mu;
            if (slot == -1) slot = common;
            else if (slot != common) return std::nullopt;
        }
    // Complete / empty graphs have an undefined lambda or mu; report them as
    // degenerate SRGs with the missing parameter as 0.
    if (lambda == -1) lambda = 0;
    if (mu == -1) mu = 0;
    return std::array<int, 4>{n, k, lambda, mu};
}

}  // namespace pathlab
