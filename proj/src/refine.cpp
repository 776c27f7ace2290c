#include "pathlab/refine.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_set>

namespace pathlab {

namespace {

void put_i32(std::string& s, std::int32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    s.append(b, 4);
}

void put_bytes(std::string& s, const void* p, std::size_t n) {
    s.append(static_cast<const char*>(p), n);
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::int32_t kDummy = -1;

}  // namespace

bool partition_refines(const std::vector<std::int32_t>& a,
                       const std::vector<std::int32_t>& b) {
    if (a.size() != b.size()) throw SizeMismatch("partition size mismatch");
    std::unordered_map<std::int32_t, std::int32_t> rep;
    for (std::size_t v = 0; v < a.size(); ++v) {
        auto it = rep.try_emplace(a[v], b[v]).first;
        if (it->second != b[v]) return false;
    }
    return true;
}

std::int32_t RefineSession::intern(const std::string& key) {
    auto it = table_.try_emplace(key, static_cast<std::int32_t>(table_.size())).first;
    return it->second;
}

std::vector<std::int32_t> RefineSession::init_colors(const Graph& g,
                                                     RefinementConfig::Init init) {
    std::vector<std::int32_t> c(g.num_nodes);
    if (init == RefinementConfig::Init::Uniform || !g.node_features) {
        std::int32_t uniform = intern("I");
        std::fill(c.begin(), c.end(), uniform);
    } else {
        for (int v = 0; v < g.num_nodes; ++v) {
            std::string key = "F";
            const auto& f = (*g.node_features)[v];
            put_bytes(key, f.data(), f.size() * sizeof(double));
            c[v] = intern(key);
        }
    }
    return c;
}

Coloring RefineSession::wl_refine(const Graph& g, int iters,
                                  RefinementConfig::Init init) {
    if (iters < 1) throw InvalidParams("wl_refine needs iters >= 1");
    Coloring out;
    out.colors.push_back(init_colors(g, init));
    for (int it = 1; it <= iters; ++it) {
        const auto& prev = out.colors.back();
        std::vector<std::int32_t> next(g.num_nodes);
        for (int v = 0; v < g.num_nodes; ++v) {
            std::vector<std::int32_t> nb;
            nb.reserve(g.adj[v].size());
            for (int u : g.adj[v]) nb.push_back(prev[u]);
            std::sort(nb.begin(), nb.end());
            std::string key = "W";
            put_i32(key, prev[v]);
            for (std::int32_t c : nb) put_i32(key, c);
            next[v] = intern(key);
        }
        out.colors.push_back(std::move(next));
    }
    return out;
}

Coloring RefineSession::path_refine(const Graph& g, const PathSet& ps,
                                    const RefinementConfig& cfg) {
    if (ps.kind != cfg.kind) throw ConfigMismatch("PathSet kind differs from config kind");
    if (ps.K < cfg.K) throw ConfigMismatch("PathSet K smaller than config K");
    if (ps.num_nodes != g.num_nodes) throw ConfigMismatch("PathSet built for another graph");
    const int n = g.num_nodes;
    const int K = cfg.K;

    std::vector<std::vector<int>> dists;
    if (cfg.distance_annotation) {
        dists.reserve(n);
        for (int v = 0; v < n; ++v) dists.push_back(bfs_distances(g, v));
    }
    std::map<std::pair<int, int>, std::int32_t> edge_id;
    if (cfg.edge_annotation) {
        for (const auto& [e, feat] : g.edge_features) {
            std::string key = "E";
            put_bytes(key, feat.data(), feat.size() * sizeof(double));
            edge_id[e] = intern(key);
        }
    }
    auto edge_of = [&](int a, int b) -> std::int32_t {
        auto key = std::minmax(a, b);
        auto it = edge_id.find({key.first, key.second});
        return it == edge_id.end() ? kDummy : it->second;
    };

    // maximality flags: a stored path of length j is maximal iff it is not a
    // prefix of any stored path of length j+1 from the same source
    std::vector<std::vector<std::vector<char>>> maximal(n);
    for (int v = 0; v < n; ++v) {
        maximal[v].resize(K + 1);
        for (int j = 1; j < K; ++j) {
            std::unordered_set<std::string> prefixes;
            std::size_t cnt1 = ps.path_count(v, j + 1);
            for (std::size_t i = 0; i < cnt1; ++i) {
                auto q = ps.path(v, j + 1, i);
                std::string key;
                for (int t = 0; t <= j; ++t) put_i32(key, q[t]);
                prefixes.insert(std::move(key));
            }
            std::size_t cnt = ps.path_count(v, j);
            maximal[v][j].assign(cnt, 0);
            for (std::size_t i = 0; i < cnt; ++i) {
                auto p = ps.path(v, j, i);
                std::string key;
                for (int t = 0; t <= j; ++t) put_i32(key, p[t]);
                if (!prefixes.count(key)) maximal[v][j][i] = 1;
            }
        }
    }

    Coloring out;
    out.colors.push_back(init_colors(g, cfg.init));
    for (int k = 1; k <= K; ++k) {
        const auto& prev = out.colors.back();
        std::vector<std::int32_t> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::string> seqs;
            auto encode = [&](std::span<const std::int32_t> p, int pad_to) {
                std::string seq;
                int j = static_cast<int>(p.size()) - 1;
                for (int t = 1; t <= j; ++t) {
                    put_i32(seq, prev[p[t]]);
                    if (cfg.distance_annotation) put_i32(seq, dists[v][p[t]]);
                    if (cfg.edge_annotation) put_i32(seq, edge_of(p[t - 1], p[t]));
                }
                for (int t = j; t < pad_to; ++t) {
                    put_i32(seq, kDummy);
                    if (cfg.distance_annotation) put_i32(seq, kDummy);
                    if (cfg.edge_annotation) put_i32(seq, kDummy);
                }
                seqs.push_back(std::move(seq));
            };
            std::size_t cnt = ps.path_count(v, k);
            for (std::size_t i = 0; i < cnt; ++i) encode(ps.path(v, k, i), k);
            if (cfg.dummy_padding) {
                for (int j = 1; j < k; ++j) {
                    std::size_t cj = ps.path_count(v, j);
                    for (std::size_t i = 0; i < cj; ++i)
                        if (maximal[v][j][i]) encode(ps.path(v, j, i), k);
                }
            }
            std::sort(seqs.begin(), seqs.end());
            std::string key = "P";
            put_i32(key, prev[v]);
            put_i32(key, static_cast<std::int32_t>(seqs.size()));
            for (const auto& s : seqs) {
                put_i32(key, static_cast<std::int32_t>(s.size()));
                key += s;
            }
            next[v] = intern(key);
        }
        out.colors.push_back(std::move(next));
    }
    return out;
}

GraphFingerprint RefineSession::fingerprint(const Coloring& c) const {
    GraphFingerprint fp;
    for (const auto& iter_colors : c.colors) {
        std::vector<std::int32_t> sorted = iter_colors;
        std::sort(sorted.begin(), sorted.end());
        std::uint64_t hi = mix64(0x5eedULL + sorted.size());
        std::uint64_t lo = mix64(hi ^ 0x9e3779b97f4a7c15ULL);
        for (std::int32_t id : sorted) {
            hi = mix64(hi ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(id))) +
                 0x165667b19e3779f9ULL;
            lo = mix64(lo + static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)) +
                       (hi >> 32));
        }
        fp.digests.push_back({hi, lo});
    }
    return fp;
}

DistinguishResult distinguish(const Graph& a, const Graph& b, const RefinementConfig& cfg,
                              std::size_t budget, int threads) {
    RefineSession sess;
    PathSet pa = enumerate_paths(a, cfg.kind, cfg.K, budget, threads);
    PathSet pb = enumerate_paths(b, cfg.kind, cfg.K, budget, threads);
    Coloring ca = sess.path_refine(a, pa, cfg);
    Coloring cb = sess.path_refine(b, pb, cfg);
    for (int k = 0; k <= cfg.K; ++k) {
        std::vector<std::int32_t> sa = ca.colors[k];
        std::vector<std::int32_t> sb = cb.colors[k];
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return {true, k};
    }
    return {false, -1};
}

}  // namespace pathlab
