#include "pathlab/nn/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <numeric>
#include <random>
#include <tuple>
#include <unordered_map>

namespace pathlab::nn {

namespace {

constexpr double kBnEps = 1e-5;
constexpr double kBnMomentum = 0.1;
constexpr double kEuclidEps = 1e-12;

void put_i32(std::string& s, std::int32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    s.append(buf, 4);
}

std::string row_key(const Eigen::MatrixXd& m, Eigen::Index r) {
    // row-major byte image of one row
    std::string s(static_cast<std::size_t>(m.cols()) * sizeof(double), '\0');
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        double v = m(r, c);
        std::memcpy(s.data() + static_cast<std::size_t>(c) * sizeof(double), &v, sizeof(double));
    }
    return s;
}

Eigen::MatrixXd relu(const Eigen::MatrixXd& x) { return x.cwiseMax(0.0); }

// X * M computed over the distinct rows of X only.  Identical input rows get
// bit-identical output rows regardless of their position in the batch; a
// direct product does not guarantee that because GEMM panel boundaries leak
// row position into the low bits, which would defeat the content-keyed
// deduplication used elsewhere.
Eigen::MatrixXd dedup_product(const Eigen::MatrixXd& X, const Eigen::MatrixXd& M) {
    const Eigen::Index N = X.rows();
    std::map<std::string, std::pair<int, int>> uniq;  // key -> (canonical id, sample row)
    for (Eigen::Index r = 0; r < N; ++r)
        uniq.try_emplace(row_key(X, r), 0, static_cast<int>(r));
    int next = 0;
    for (auto& [key, v] : uniq) v.first = next++;
    Eigen::MatrixXd U(next, X.cols());
    for (const auto& [key, v] : uniq) U.row(v.first) = X.row(v.second);
    Eigen::MatrixXd P = U * M;
    Eigen::MatrixXd Y(N, M.cols());
    for (Eigen::Index r = 0; r < N; ++r) Y.row(r) = P.row(uniq.at(row_key(X, r)).first);
    return Y;
}

const char* phi_names[] = {"identity", "mlp"};
const char* norm_names[] = {"none", "euclidean", "batch_norm"};
const char* agg_names[] = {"sum", "mean"};
const char* cell_names[] = {"plain", "distance", "edge"};

}  // namespace

std::string ModelConfig::to_json() const {
    nlohmann::json j;
    j["K"] = K;
    j["hidden"] = hidden;
    j["kind"] = path_kind_name(kind);
    j["phi"] = phi_names[static_cast<int>(phi)];
    j["norm"] = norm_names[static_cast<int>(norm)];
    j["readout"] = agg_names[static_cast<int>(readout)];
    j["path_agg"] = agg_names[static_cast<int>(path_agg)];
    j["dropout"] = dropout;
    j["cell"] = cell_names[static_cast<int>(cell)];
    j["in_dim"] = in_dim;
    j["edge_dim"] = edge_dim;
    j["out_dim"] = out_dim;
    j["pred_layers"] = pred_layers;
    return j.dump();
}

ModelConfig ModelConfig::from_json(const std::string& s) {
    nlohmann::json j = nlohmann::json::parse(s);
    ModelConfig c;
    c.K = j.at("K").get<int>();
    c.hidden = j.at("hidden").get<int>();
    c.kind = path_kind_from_name(j.at("kind").get<std::string>());
    auto find = [](const char* const* names, int n, const std::string& v, const char* what) {
        for (int i = 0; i < n; ++i)
            if (v == names[i]) return i;
        throw InvalidParams(std::string("unknown ") + what + ": " + v);
    };
    c.phi = static_cast<Phi>(find(phi_names, 2, j.at("phi").get<std::string>(), "phi"));
    c.norm = static_cast<Norm>(find(norm_names, 3, j.at("norm").get<std::string>(), "norm"));
    c.readout = static_cast<Agg>(find(agg_names, 2, j.at("readout").get<std::string>(), "readout"));
    c.path_agg = static_cast<Agg>(find(agg_names, 2, j.at("path_agg").get<std::string>(), "path_agg"));
    c.dropout = j.at("dropout").get<double>();
    c.cell = static_cast<CellVariant>(find(cell_names, 3, j.at("cell").get<std::string>(), "cell"));
    c.in_dim = j.at("in_dim").get<int>();
    c.edge_dim = j.at("edge_dim").get<int>();
    c.out_dim = j.at("out_dim").get<int>();
    c.pred_layers = j.at("pred_layers").get<int>();
    return c;
}

// --- impl -----------------------------------------------------------------

struct PathNN::Impl {
    ModelConfig cfg;
    CellSpec spec;

    struct UidRec {
        CellTraj traj;
        std::vector<int> member_row;      // global row of the path source v
        std::vector<double> member_mult;  // number of merged paths per member
        // scatter lists: CSR over (member, step) -> (global row, count)
        std::vector<std::size_t> scat_off;
        std::vector<std::pair<int, double>> scat;
    };
    struct LayerCache {
        Eigen::MatrixXd Hin;   // states entering the layer (pre-dropout)
        Eigen::MatrixXd mask;  // dropout mask, or 0x0
        Eigen::MatrixXd Xpre;  // masked states (cell inputs before normalization)
        Eigen::MatrixXd Xn;    // actual cell inputs
        Eigen::VectorXd inv_norm;
        std::vector<UidRec> uids;
        Eigen::VectorXd pcount;
        Eigen::MatrixXd G;     // Hin + aggregated paths (pre-norm)
        Eigen::RowVectorXd bn_mean, bn_var;
        Eigen::MatrixXd Xhat;
        bool bn_train = false;
        Eigen::MatrixXd phi_in, phi_h;
    };

    std::vector<LayerCache> layers;
    Eigen::MatrixXd X0, enc_h, H0, HK, Gemb;
    Eigen::MatrixXd pred_h, pred_mask;
    std::vector<std::pair<int, int>> item_range;  // (row offset, n)
    std::vector<BatchItem> batch;

    std::vector<Eigen::RowVectorXd> run_mean, run_var;

    explicit Impl(ModelConfig c) : cfg(std::move(c)) {
        if (cfg.hidden < 1 || cfg.K < 1 || cfg.out_dim < 1)
            throw InvalidParams("model dimensions must be positive");
        if (cfg.dropout < 0.0 || cfg.dropout >= 1.0) throw InvalidParams("dropout must be in [0,1)");
        if (cfg.pred_layers != 1 && cfg.pred_layers != 2)
            throw InvalidParams("pred_layers must be 1 or 2");
        spec.variant = cfg.cell;
        spec.hidden = cfg.hidden;
        spec.prefix = "cell";
        run_mean.assign(cfg.K, Eigen::RowVectorXd::Zero(cfg.hidden));
        run_var.assign(cfg.K, Eigen::RowVectorXd::Ones(cfg.hidden));
    }
};

PathNN::PathNN(ModelConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}
PathNN::~PathNN() = default;
const ModelConfig& PathNN::config() const { return impl_->cfg; }

void PathNN::init_params(ParamStore& store, std::uint64_t seed) const {
    const ModelConfig& cfg = impl_->cfg;
    int d = cfg.hidden;
    init_uniform(store.add("enc.W1", d, cfg.in_dim).value, seed + 11);
    store.add("enc.b1", d, 1);
    init_uniform(store.add("enc.W2", d, d).value, seed + 12);
    store.add("enc.b2", d, 1);
    cell_init_params(store, impl_->spec, cfg.K, cfg.edge_dim, seed + 100);
    for (int k = 1; k <= cfg.K; ++k) {
        std::string tag = std::to_string(k);
        if (cfg.norm == Norm::BatchNorm) {
            store.add("bn" + tag + ".gamma", d, 1).value.setConstant(1.0);
            store.add("bn" + tag + ".beta", d, 1);
        }
        if (cfg.phi == Phi::Mlp) {
            init_uniform(store.add("phi" + tag + ".W1", d, d).value, seed + 200 + 10 * k);
            store.add("phi" + tag + ".b1", d, 1);
            init_uniform(store.add("phi" + tag + ".W2", d, d).value, seed + 201 + 10 * k);
            store.add("phi" + tag + ".b2", d, 1);
        }
    }
    if (cfg.pred_layers == 1) {
        init_uniform(store.add("pred.W", cfg.out_dim, d).value, seed + 301);
        store.add("pred.b", cfg.out_dim, 1);
    } else {
        init_uniform(store.add("pred.W1", d, d).value, seed + 302);
        store.add("pred.b1", d, 1);
        init_uniform(store.add("pred.W2", cfg.out_dim, d).value, seed + 303);
        store.add("pred.b2", cfg.out_dim, 1);
    }
}

ForwardResult PathNN::forward(ParamStore& store, const std::vector<BatchItem>& batch, bool train,
                              std::uint64_t dropout_seed) {
    Impl& im = *impl_;
    const ModelConfig& cfg = im.cfg;
    const int d = cfg.hidden;
    if (batch.empty()) throw InvalidParams("empty batch");

    im.batch = batch;
    im.item_range.clear();
    int N = 0;
    for (const auto& it : batch) {
        if (!it.graph || !it.paths) throw InvalidParams("batch item missing graph or paths");
        if (it.paths->kind != cfg.kind || it.paths->K < cfg.K ||
            it.paths->num_nodes != it.graph->num_nodes)
            throw ConfigMismatch("path set does not match model configuration");
        im.item_range.emplace_back(N, it.graph->num_nodes);
        N += it.graph->num_nodes;
    }

    // raw node features (all-ones when absent)
    im.X0.resize(N, cfg.in_dim);
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const Graph& g = *batch[b].graph;
        auto [off, n] = im.item_range[b];
        if (g.node_features) {
            if (static_cast<int>(g.node_features->size()) != n)
                throw ShapeMismatch("node feature count mismatch");
            for (int v = 0; v < n; ++v) {
                const auto& f = (*g.node_features)[v];
                if (static_cast<int>(f.size()) != cfg.in_dim)
                    throw ShapeMismatch("node feature dimension mismatch");
                for (int c = 0; c < cfg.in_dim; ++c) im.X0(off + v, c) = f[c];
            }
        } else {
            im.X0.block(off, 0, n, cfg.in_dim).setConstant(1.0);
        }
    }

    // feature encoder
    {
        const auto& W1 = store.at("enc.W1").value;
        const auto& b1 = store.at("enc.b1").value;
        const auto& W2 = store.at("enc.W2").value;
        const auto& b2 = store.at("enc.b2").value;
        im.enc_h =
            relu(dedup_product(im.X0, W1.transpose()).rowwise() + b1.transpose().row(0));
        im.H0 = dedup_product(im.enc_h, W2.transpose()).rowwise() + b2.transpose().row(0);
    }

    // per-item all-pairs distances for the distance variant
    std::vector<std::vector<std::vector<int>>> distm;
    if (cfg.cell == CellVariant::Distance) {
        distm.resize(batch.size());
        for (std::size_t b = 0; b < batch.size(); ++b) {
            const Graph& g = *batch[b].graph;
            distm[b].resize(g.num_nodes);
            for (int v = 0; v < g.num_nodes; ++v) distm[b][v] = bfs_distances(g, v);
        }
    }

    Eigen::MatrixXd H = im.H0;
    im.layers.assign(cfg.K, Impl::LayerCache{});

    for (int k = 1; k <= cfg.K; ++k) {
        Impl::LayerCache& L = im.layers[k - 1];
        L.Hin = H;

        // dropout on the cell-input copy only
        Eigen::MatrixXd Hd = H;
        if (train && cfg.dropout > 0.0) {
            std::mt19937_64 rng(dropout_seed * 0x9e3779b97f4a7c15ULL + static_cast<unsigned>(k));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            double keep = 1.0 - cfg.dropout;
            L.mask.resize(N, d);
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < d; ++c) L.mask(r, c) = unif(rng) < keep ? 1.0 / keep : 0.0;
            Hd = H.cwiseProduct(L.mask);
        }
        L.Xpre = Hd;

        if (cfg.norm == Norm::Euclidean) {
            L.inv_norm.resize(N);
            L.Xn.resize(N, d);
            for (int r = 0; r < N; ++r) {
                double n2 = Hd.row(r).norm();
                L.inv_norm[r] = 1.0 / (n2 + kEuclidEps);
                L.Xn.row(r) = Hd.row(r) * L.inv_norm[r];
            }
        } else {
            L.Xn = Hd;
        }

        // content-canonical state ids shared across the batch
        std::map<std::string, std::int32_t> sidmap;
        for (int r = 0; r < N; ++r) sidmap.try_emplace(row_key(L.Xn, r), 0);
        {
            std::int32_t next = 0;
            for (auto& [key, id] : sidmap) id = next++;
        }
        std::vector<std::int32_t> row_sid(N);
        for (int r = 0; r < N; ++r) row_sid[r] = sidmap.at(row_key(L.Xn, r));
        Eigen::MatrixXd sid_rows(static_cast<Eigen::Index>(sidmap.size()), d);
        for (const auto& [key, id] : sidmap)
            for (int c = 0; c < d; ++c)
                std::memcpy(&sid_rows(id, c), key.data() + static_cast<std::size_t>(c) * sizeof(double),
                            sizeof(double));

        // edge-feature interning (edge variant); id -1 = no incoming edge
        static const std::vector<double> kNoFeatures;
        std::map<std::string, std::int32_t> eidmap;
        std::vector<const std::vector<double>*> eid_raw;
        auto edge_raw = [&](const Graph& g, int u, int v) -> const std::vector<double>* {
            auto mm = std::minmax(u, v);
            auto it = g.edge_features.find({mm.first, mm.second});
            return it != g.edge_features.end() ? &it->second : &kNoFeatures;
        };
        auto raw_bytes = [](const std::vector<double>* raw) {
            return std::string(reinterpret_cast<const char*>(raw->data()),
                               raw->size() * sizeof(double));
        };
        if (cfg.cell == CellVariant::Edge) {
            for (std::size_t b = 0; b < batch.size(); ++b) {
                const Graph& g = *batch[b].graph;
                const PathSet& ps = *batch[b].paths;
                for (int v = 0; v < g.num_nodes; ++v) {
                    std::size_t cnt = ps.path_count(v, k);
                    for (std::size_t i = 0; i < cnt; ++i) {
                        auto p = ps.path(v, k, i);
                        for (int t = 0; t < k; ++t)
                            eidmap.try_emplace(raw_bytes(edge_raw(g, p[t], p[t + 1])), 0);
                    }
                }
            }
            std::int32_t next = 0;
            for (auto& [key, id] : eidmap) id = next++;
            eid_raw.assign(eidmap.size(), nullptr);
        }
        auto edge_lookup = [&](const Graph& g, int u, int v) -> std::int32_t {
            const std::vector<double>* raw = edge_raw(g, u, v);
            std::int32_t id = eidmap.at(raw_bytes(raw));
            eid_raw[static_cast<std::size_t>(id)] = raw;
            return id;
        };

        // pass 1: one annotated reversed-sequence key per path; hashed lookup
        // with insertion-order ids, remapped to content-sorted canonical ids
        std::unordered_map<std::string, std::int32_t> uid_lookup;
        std::vector<std::string> uid_keys;       // by provisional id
        std::vector<std::int32_t> path_uid;      // per stored path, iteration order
        L.pcount = Eigen::VectorXd::Zero(N);
        std::string keybuf;
        for (std::size_t b = 0; b < batch.size(); ++b) {
            const Graph& gb = *batch[b].graph;
            const PathSet& ps = *batch[b].paths;
            auto [off, n] = im.item_range[b];
            for (int v = 0; v < n; ++v) {
                std::size_t cnt = ps.path_count(v, k);
                L.pcount[off + v] = static_cast<double>(cnt);
                for (std::size_t i = 0; i < cnt; ++i) {
                    auto p = ps.path(v, k, i);
                    keybuf.clear();
                    for (int t = 0; t <= k; ++t) {
                        int node = p[k - t];
                        put_i32(keybuf, row_sid[off + node]);
                        if (cfg.cell == CellVariant::Distance)
                            put_i32(keybuf, std::min(distm[b][v][node], cfg.K));
                        if (cfg.cell == CellVariant::Edge)
                            put_i32(keybuf, t == 0 ? -1
                                                   : edge_lookup(gb, p[k - t + 1], p[k - t]));
                    }
                    auto [it, fresh] = uid_lookup.try_emplace(
                        keybuf, static_cast<std::int32_t>(uid_keys.size()));
                    if (fresh) uid_keys.push_back(keybuf);
                    path_uid.push_back(it->second);
                }
            }
        }
        {
            std::vector<std::int32_t> order(uid_keys.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b2) {
                return uid_keys[static_cast<std::size_t>(a)] <
                       uid_keys[static_cast<std::size_t>(b2)];
            });
            std::vector<std::int32_t> remap(uid_keys.size());
            std::vector<std::string> sorted_keys(uid_keys.size());
            for (std::size_t rank = 0; rank < order.size(); ++rank) {
                remap[static_cast<std::size_t>(order[rank])] =
                    static_cast<std::int32_t>(rank);
                sorted_keys[rank] = std::move(uid_keys[static_cast<std::size_t>(order[rank])]);
            }
            uid_keys = std::move(sorted_keys);
            for (auto& u : path_uid) u = remap[static_cast<std::size_t>(u)];
        }
        L.uids.assign(uid_keys.size(), Impl::UidRec{});

        // materialize trajectory inputs from the canonical keys
        const int stride = 4 + (cfg.cell == CellVariant::Distance ? 4 : 0) +
                           (cfg.cell == CellVariant::Edge ? 4 : 0);
        for (std::size_t u = 0; u < L.uids.size(); ++u) {
            Impl::UidRec& U = L.uids[u];
            const char* kp = uid_keys[u].data();
            U.traj.X.resize(k + 1, d);
            if (cfg.cell == CellVariant::Distance) U.traj.dist.resize(k + 1);
            if (cfg.cell == CellVariant::Edge) {
                U.traj.Eenc = Eigen::MatrixXd::Zero(k + 1, d);
                U.traj.Eraw = Eigen::MatrixXd::Zero(k + 1, cfg.edge_dim);
            }
            for (int t = 0; t <= k; ++t) {
                std::int32_t sid;
                std::memcpy(&sid, kp + t * stride, 4);
                U.traj.X.row(t) = sid_rows.row(sid);
                if (cfg.cell == CellVariant::Distance) {
                    std::int32_t dd;
                    std::memcpy(&dd, kp + t * stride + 4, 4);
                    U.traj.dist[t] = dd;
                }
                if (cfg.cell == CellVariant::Edge && t > 0) {
                    std::int32_t e;
                    std::memcpy(&e, kp + t * stride + stride - 4, 4);
                    const auto& raw = *eid_raw[static_cast<std::size_t>(e)];
                    for (int c = 0; c < cfg.edge_dim; ++c)
                        U.traj.Eraw(t, c) = c < static_cast<int>(raw.size()) ? raw[c] : 0.0;
                    U.traj.Eenc.row(t) =
                        (store.at("cell.edge_enc.W").value * U.traj.Eraw.row(t).transpose() +
                         store.at("cell.edge_enc.b").value)
                            .transpose();
                }
            }
        }

        // pass 2: membership and scatter lists from the stored per-path ids
        std::vector<std::unordered_map<int, int>> member_of(L.uids.size());
        std::vector<std::vector<std::array<int, 3>>> scat_tmp(L.uids.size());
        std::size_t pidx = 0;
        for (std::size_t b = 0; b < batch.size(); ++b) {
            const PathSet& ps = *batch[b].paths;
            auto [off, n] = im.item_range[b];
            for (int v = 0; v < n; ++v) {
                std::size_t cnt = ps.path_count(v, k);
                for (std::size_t i = 0; i < cnt; ++i) {
                    auto p = ps.path(v, k, i);
                    std::int32_t uid = path_uid[pidx++];
                    Impl::UidRec& U = L.uids[static_cast<std::size_t>(uid)];
                    int row = off + v;
                    auto [mit, fresh] =
                        member_of[static_cast<std::size_t>(uid)].try_emplace(row, 0);
                    if (fresh) {
                        mit->second = static_cast<int>(U.member_row.size());
                        U.member_row.push_back(row);
                        U.member_mult.push_back(0.0);
                    }
                    int j = mit->second;
                    U.member_mult[static_cast<std::size_t>(j)] += 1.0;
                    auto& st = scat_tmp[static_cast<std::size_t>(uid)];
                    for (int t = 0; t <= k; ++t) st.push_back({j, t, off + p[k - t]});
                }
            }
        }

        // run the shared cell over each unique trajectory, aggregate embeddings
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, d);
        for (std::size_t u = 0; u < L.uids.size(); ++u) {
            Impl::UidRec& U = L.uids[u];
            cell_forward(store, im.spec, U.traj);
            Eigen::RowVectorXd emb = U.traj.H.row(k);
            for (std::size_t j = 0; j < U.member_row.size(); ++j)
                A.row(U.member_row[j]) += U.member_mult[j] * emb;
            // compress scatter triples into CSR with counts
            auto& st = scat_tmp[u];
            std::sort(st.begin(), st.end());
            std::size_t members = U.member_row.size();
            U.scat_off.assign(members * static_cast<std::size_t>(k + 1) + 1, 0);
            U.scat.clear();
            std::size_t idx = 0;
            for (std::size_t slot = 0; slot < members * static_cast<std::size_t>(k + 1); ++slot) {
                int j = static_cast<int>(slot / static_cast<std::size_t>(k + 1));
                int t = static_cast<int>(slot % static_cast<std::size_t>(k + 1));
                U.scat_off[slot] = U.scat.size();
                while (idx < st.size() && st[idx][0] == j && st[idx][1] == t) {
                    int row = st[idx][2];
                    double c = 0.0;
                    while (idx < st.size() && st[idx][0] == j && st[idx][1] == t &&
                           st[idx][2] == row) {
                        c += 1.0;
                        ++idx;
                    }
                    U.scat.emplace_back(row, c);
                }
            }
            U.scat_off.back() = U.scat.size();
        }
        if (cfg.path_agg == Agg::Mean)
            for (int r = 0; r < N; ++r)
                if (L.pcount[r] > 0) A.row(r) /= L.pcount[r];

        L.G = L.Hin + A;

        // normalization on the combined state
        Eigen::MatrixXd Y;
        if (cfg.norm == Norm::BatchNorm) {
            const auto& gamma = store.at("bn" + std::to_string(k) + ".gamma").value;
            const auto& beta = store.at("bn" + std::to_string(k) + ".beta").value;
            L.bn_train = train;
            if (train) {
                // content-sorted accumulation keeps statistics order-canonical
                std::vector<int> order(N);
                std::iota(order.begin(), order.end(), 0);
                std::vector<std::string> keys(N);
                for (int r = 0; r < N; ++r) keys[r] = row_key(L.G, r);
                std::sort(order.begin(), order.end(),
                          [&](int a, int b2) { return keys[a] < keys[b2]; });
                Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(d);
                for (int r : order) mean += L.G.row(r);
                mean /= static_cast<double>(N);
                Eigen::RowVectorXd var = Eigen::RowVectorXd::Zero(d);
                for (int r : order) var += (L.G.row(r) - mean).array().square().matrix();
                var /= static_cast<double>(N);
                L.bn_mean = mean;
                L.bn_var = var;
                im.run_mean[k - 1] = (1.0 - kBnMomentum) * im.run_mean[k - 1] + kBnMomentum * mean;
                im.run_var[k - 1] = (1.0 - kBnMomentum) * im.run_var[k - 1] + kBnMomentum * var;
            } else {
                L.bn_mean = im.run_mean[k - 1];
                L.bn_var = im.run_var[k - 1];
            }
            Eigen::RowVectorXd istd = (L.bn_var.array() + kBnEps).sqrt().inverse();
            L.Xhat = (L.G.rowwise() - L.bn_mean).array().rowwise() * istd.array();
            Y = (L.Xhat.array().rowwise() * gamma.transpose().row(0).array()).matrix().rowwise() +
                beta.transpose().row(0);
        } else {
            Y = L.G;
        }

        if (cfg.phi == Phi::Mlp) {
            std::string tag = std::to_string(k);
            const auto& W1 = store.at("phi" + tag + ".W1").value;
            const auto& b1 = store.at("phi" + tag + ".b1").value;
            const auto& W2 = store.at("phi" + tag + ".W2").value;
            const auto& b2 = store.at("phi" + tag + ".b2").value;
            L.phi_in = Y;
            L.phi_h =
                relu(dedup_product(Y, W1.transpose()).rowwise() + b1.transpose().row(0));
            H = dedup_product(L.phi_h, W2.transpose()).rowwise() + b2.transpose().row(0);
        } else {
            H = Y;
        }
    }

    im.HK = H;

    // readout: content-sorted accumulation per graph
    im.Gemb.resize(static_cast<Eigen::Index>(batch.size()), d);
    for (std::size_t b = 0; b < batch.size(); ++b) {
        auto [off, n] = im.item_range[b];
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::vector<std::string> keys(n);
        for (int v = 0; v < n; ++v) keys[v] = row_key(im.HK, off + v);
        std::sort(order.begin(), order.end(), [&](int a, int b2) { return keys[a] < keys[b2]; });
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d);
        for (int v : order) acc += im.HK.row(off + v);
        if (cfg.readout == Agg::Mean) acc /= static_cast<double>(n);
        im.Gemb.row(static_cast<Eigen::Index>(b)) = acc;
    }

    // prediction head
    ForwardResult out;
    out.graph_embeddings = im.Gemb;
    out.node_states = im.HK;
    if (cfg.pred_layers == 1) {
        const auto& W = store.at("pred.W").value;
        const auto& b = store.at("pred.b").value;
        out.logits = (im.Gemb * W.transpose()).rowwise() + b.transpose().row(0);
        im.pred_h.resize(0, 0);
        im.pred_mask.resize(0, 0);
    } else {
        const auto& W1 = store.at("pred.W1").value;
        const auto& b1 = store.at("pred.b1").value;
        const auto& W2 = store.at("pred.W2").value;
        const auto& b2 = store.at("pred.b2").value;
        im.pred_h = relu((im.Gemb * W1.transpose()).rowwise() + b1.transpose().row(0));
        if (train && cfg.dropout > 0.0) {
            std::mt19937_64 rng(dropout_seed * 0x9e3779b97f4a7c15ULL + 0xabcdULL);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            double keep = 1.0 - cfg.dropout;
            im.pred_mask.resize(im.pred_h.rows(), im.pred_h.cols());
            for (Eigen::Index r = 0; r < im.pred_h.rows(); ++r)
                for (Eigen::Index c = 0; c < im.pred_h.cols(); ++c)
                    im.pred_mask(r, c) = unif(rng) < keep ? 1.0 / keep : 0.0;
            im.pred_h = im.pred_h.cwiseProduct(im.pred_mask);
        } else {
            im.pred_mask.resize(0, 0);
        }
        out.logits = (im.pred_h * W2.transpose()).rowwise() + b2.transpose().row(0);
    }
    if (!out.logits.allFinite()) throw NonFinite("non-finite logits in forward pass");
    return out;
}

void PathNN::backward(ParamStore& store, const Eigen::MatrixXd& dlogits) {
    Impl& im = *impl_;
    const ModelConfig& cfg = im.cfg;
    const int d = cfg.hidden;
    const int N = static_cast<int>(im.HK.rows());
    if (dlogits.rows() != static_cast<Eigen::Index>(im.batch.size()) ||
        dlogits.cols() != cfg.out_dim)
        throw ShapeMismatch("dlogits shape mismatch");

    // prediction head
    Eigen::MatrixXd dGemb;
    if (cfg.pred_layers == 1) {
        Param& W = store.at("pred.W");
        Param& b = store.at("pred.b");
        W.grad.noalias() += dlogits.transpose() * im.Gemb;
        b.grad += dlogits.colwise().sum().transpose();
        dGemb = dlogits * W.value;
    } else {
        Param& W1 = store.at("pred.W1");
        Param& b1 = store.at("pred.b1");
        Param& W2 = store.at("pred.W2");
        Param& b2 = store.at("pred.b2");
        W2.grad.noalias() += dlogits.transpose() * im.pred_h;
        b2.grad += dlogits.colwise().sum().transpose();
        Eigen::MatrixXd dh = dlogits * W2.value;
        if (im.pred_mask.size() > 0) dh = dh.cwiseProduct(im.pred_mask);
        // pred_h already has mask applied; recover pre-mask relu output sign
        Eigen::MatrixXd relu_act = im.pred_mask.size() > 0
                                       ? im.pred_h.cwiseQuotient(im.pred_mask.cwiseMax(1e-300))
                                       : im.pred_h;
        Eigen::MatrixXd dz = dh.cwiseProduct((relu_act.array() > 0.0).cast<double>().matrix());
        W1.grad.noalias() += dz.transpose() * im.Gemb;
        b1.grad += dz.colwise().sum().transpose();
        dGemb = dz * W1.value;
    }

    // readout
    Eigen::MatrixXd dH = Eigen::MatrixXd::Zero(N, d);
    for (std::size_t b = 0; b < im.batch.size(); ++b) {
        auto [off, n] = im.item_range[b];
        Eigen::RowVectorXd g = dGemb.row(static_cast<Eigen::Index>(b));
        if (cfg.readout == Agg::Mean) g /= static_cast<double>(n);
        for (int v = 0; v < n; ++v) dH.row(off + v) = g;
    }

    for (int k = cfg.K; k >= 1; --k) {
        Impl::LayerCache& L = im.layers[static_cast<std::size_t>(k - 1)];
        std::string tag = std::to_string(k);

        Eigen::MatrixXd dY;
        if (cfg.phi == Phi::Mlp) {
            Param& W1 = store.at("phi" + tag + ".W1");
            Param& b1 = store.at("phi" + tag + ".b1");
            Param& W2 = store.at("phi" + tag + ".W2");
            Param& b2 = store.at("phi" + tag + ".b2");
            W2.grad.noalias() += dH.transpose() * L.phi_h;
            b2.grad += dH.colwise().sum().transpose();
            Eigen::MatrixXd dh = dedup_product(dH, W2.value);
            Eigen::MatrixXd dz =
                dh.cwiseProduct((L.phi_h.array() > 0.0).cast<double>().matrix());
            W1.grad.noalias() += dz.transpose() * L.phi_in;
            b1.grad += dz.colwise().sum().transpose();
            dY = dedup_product(dz, W1.value);
        } else {
            dY = dH;
        }

        Eigen::MatrixXd dG;
        if (cfg.norm == Norm::BatchNorm) {
            Param& gamma = store.at("bn" + tag + ".gamma");
            Param& beta = store.at("bn" + tag + ".beta");
            gamma.grad += dY.cwiseProduct(L.Xhat).colwise().sum().transpose();
            beta.grad += dY.colwise().sum().transpose();
            Eigen::MatrixXd dXhat =
                dY.array().rowwise() * gamma.value.transpose().row(0).array();
            Eigen::RowVectorXd istd = (L.bn_var.array() + kBnEps).sqrt().inverse();
            if (L.bn_train) {
                double n = static_cast<double>(N);
                Eigen::RowVectorXd m1 = dXhat.colwise().sum() / n;
                Eigen::RowVectorXd m2 = dXhat.cwiseProduct(L.Xhat).colwise().sum() / n;
                dG = ((dXhat.rowwise() - m1) -
                      (L.Xhat.array().rowwise() * m2.array()).matrix())
                         .array()
                         .rowwise() *
                     istd.array();
            } else {
                dG = dXhat.array().rowwise() * istd.array();
            }
        } else {
            dG = dY;
        }

        Eigen::MatrixXd dHin = dG;  // residual branch
        Eigen::MatrixXd dXn = Eigen::MatrixXd::Zero(N, d);

        std::vector<CellBackward> cbs(L.uids.size());
        std::vector<std::vector<int>> merged_of(L.uids.size());
        for (std::size_t u = 0; u < L.uids.size(); ++u) {
            Impl::UidRec& U = L.uids[u];
            std::size_t members = U.member_row.size();
            // members with identical upstream rows share one backward row
            // (common in symmetric graphs); dedup by row content
            std::vector<Eigen::RowVectorXd> up_rows;
            std::vector<double> up_w;
            std::vector<int> merged(members);
            std::map<std::string, int> up_of;
            for (std::size_t j = 0; j < members; ++j) {
                int row = U.member_row[j];
                double s = cfg.path_agg == Agg::Mean && L.pcount[row] > 0
                               ? 1.0 / L.pcount[row]
                               : 1.0;
                Eigen::RowVectorXd ur = s * dG.row(row);
                std::string key(reinterpret_cast<const char*>(ur.data()),
                                static_cast<std::size_t>(ur.size()) * sizeof(double));
                auto [it, fresh] = up_of.try_emplace(std::move(key), 0);
                if (fresh) {
                    it->second = static_cast<int>(up_rows.size());
                    up_rows.push_back(std::move(ur));
                    up_w.push_back(0.0);
                }
                merged[j] = it->second;
                // upstream gradient of one merged path's embedding; parameter
                // weights carry the path multiplicity
                up_w[static_cast<std::size_t>(it->second)] += U.member_mult[j];
            }
            Eigen::MatrixXd up(static_cast<Eigen::Index>(up_rows.size()), d);
            Eigen::VectorXd wparam(static_cast<Eigen::Index>(up_rows.size()));
            for (std::size_t j = 0; j < up_rows.size(); ++j) {
                up.row(static_cast<Eigen::Index>(j)) = up_rows[j];
                wparam[static_cast<Eigen::Index>(j)] = up_w[j];
            }
            cbs[u] = cell_backward(store, im.spec, U.traj, up, wparam);
            merged_of[u] = std::move(merged);
        }
        // scatter in canonical (row, uid, step, merged-row) order with exact
        // integer count aggregation; nodes receiving the same multiset of
        // contributions then accumulate identical value sequences, keeping
        // their gradients bit-identical for the dedup at the layer below
        struct SEntry {
            int row, uid, t, mj;
            double cnt;
            bool operator<(const SEntry& o) const {
                return std::tie(row, uid, t, mj) < std::tie(o.row, o.uid, o.t, o.mj);
            }
        };
        std::vector<SEntry> entries;
        {
            std::size_t total = 0;
            for (const auto& U : L.uids) total += U.scat.size();
            entries.reserve(total);
        }
        for (std::size_t u = 0; u < L.uids.size(); ++u) {
            const Impl::UidRec& U = L.uids[u];
            const auto& merged = merged_of[u];
            for (std::size_t j = 0; j < U.member_row.size(); ++j)
                for (int t = 0; t <= k; ++t) {
                    std::size_t slot = j * static_cast<std::size_t>(k + 1) +
                                       static_cast<std::size_t>(t);
                    for (std::size_t e = U.scat_off[slot]; e < U.scat_off[slot + 1]; ++e)
                        entries.push_back({U.scat[e].first, static_cast<int>(u), t,
                                           merged[j], U.scat[e].second});
                }
        }
        std::sort(entries.begin(), entries.end());
        for (std::size_t e = 0; e < entries.size();) {
            SEntry cur = entries[e];
            for (++e; e < entries.size() && !(cur < entries[e]); ++e)
                cur.cnt += entries[e].cnt;
            dXn.row(cur.row) +=
                cur.cnt *
                cbs[static_cast<std::size_t>(cur.uid)].dX[static_cast<std::size_t>(cur.t)].row(
                    cur.mj);
        }

        Eigen::MatrixXd dXpre;
        if (cfg.norm == Norm::Euclidean) {
            dXpre.resize(N, d);
            for (int r = 0; r < N; ++r) {
                double inv = L.inv_norm[r];
                double nrm = L.Xpre.row(r).norm();
                Eigen::RowVectorXd g = inv * dXn.row(r);
                if (nrm > 0.0) {
                    double dot = dXn.row(r).dot(L.Xpre.row(r));
                    g -= (dot * inv * inv / nrm) * L.Xpre.row(r);
                }
                dXpre.row(r) = g;
            }
        } else {
            dXpre = dXn;
        }
        if (L.mask.size() > 0) dXpre = dXpre.cwiseProduct(L.mask);
        dHin += dXpre;
        dH = std::move(dHin);
    }

    // feature encoder
    {
        Param& W1 = store.at("enc.W1");
        Param& b1 = store.at("enc.b1");
        Param& W2 = store.at("enc.W2");
        Param& b2 = store.at("enc.b2");
        W2.grad.noalias() += dH.transpose() * im.enc_h;
        b2.grad += dH.colwise().sum().transpose();
        Eigen::MatrixXd dh = dH * W2.value;
        Eigen::MatrixXd dz =
            dh.cwiseProduct((im.enc_h.array() > 0.0).cast<double>().matrix());
        W1.grad.noalias() += dz.transpose() * im.X0;
        b1.grad += dz.colwise().sum().transpose();
    }
}

// --- losses ---------------------------------------------------------------

LossResult loss_and_metrics(const Eigen::MatrixXd& logits, const std::vector<double>& targets,
                            Task task, const std::vector<double>& weights) {
    const Eigen::Index B = logits.rows();
    if (static_cast<Eigen::Index>(targets.size()) != B)
        throw SizeMismatch("targets size mismatch");
    std::vector<double> w = weights.empty() ? std::vector<double>(targets.size(), 1.0) : weights;
    if (static_cast<Eigen::Index>(w.size()) != B) throw SizeMismatch("weights size mismatch");
    double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    if (wsum <= 0.0) throw InvalidParams("non-positive total weight");

    LossResult res;
    res.dlogits = Eigen::MatrixXd::Zero(B, logits.cols());
    if (task == Task::Classification) {
        double correct = 0.0;
        for (Eigen::Index b = 0; b < B; ++b) {
            int y = static_cast<int>(targets[static_cast<std::size_t>(b)]);
            if (y < 0 || y >= logits.cols()) throw InvalidParams("target class out of range");
            Eigen::RowVectorXd z = logits.row(b);
            double m = z.maxCoeff();
            Eigen::RowVectorXd e = (z.array() - m).exp();
            double s = e.sum();
            Eigen::RowVectorXd p = e / s;
            res.loss += w[static_cast<std::size_t>(b)] * (std::log(s) + m - z[y]);
            Eigen::Index arg;
            z.maxCoeff(&arg);
            if (static_cast<int>(arg) == y) correct += w[static_cast<std::size_t>(b)];
            res.dlogits.row(b) = (w[static_cast<std::size_t>(b)] / wsum) * p;
            res.dlogits(b, y) -= w[static_cast<std::size_t>(b)] / wsum;
        }
        res.loss /= wsum;
        res.accuracy = correct / wsum;
    } else if (task == Task::Regression) {
        if (logits.cols() != 1) throw ShapeMismatch("regression expects one output");
        for (Eigen::Index b = 0; b < B; ++b) {
            double diff = logits(b, 0) - targets[static_cast<std::size_t>(b)];
            res.loss += w[static_cast<std::size_t>(b)] * std::abs(diff);
            res.dlogits(b, 0) =
                (w[static_cast<std::size_t>(b)] / wsum) * (diff > 0 ? 1.0 : diff < 0 ? -1.0 : 0.0);
        }
        res.loss /= wsum;
        res.mae = res.loss;
    } else {
        throw InvalidParams("loss requires a classification or regression task");
    }
    return res;
}

// --- gradient check -------------------------------------------------------

GradCheckReport grad_check(const Graph& g_in, const ModelConfig& cfg, std::uint64_t seed,
                           double step, double tol) {
    Graph g = g_in;
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    if (cfg.in_dim > 0 && !g.node_features) {
        std::vector<std::vector<double>> nf(static_cast<std::size_t>(g.num_nodes));
        for (auto& f : nf) {
            f.resize(static_cast<std::size_t>(cfg.in_dim));
            for (auto& x : f) x = unif(rng);
        }
        if (cfg.in_dim > 1) g.node_features = std::move(nf);
    }
    if (cfg.cell == CellVariant::Edge && g.edge_features.empty()) {
        for (auto [u, v] : g.edges()) {
            std::vector<double> f(static_cast<std::size_t>(cfg.edge_dim));
            for (auto& x : f) x = unif(rng);
            g.edge_features[{u, v}] = std::move(f);
        }
    }

    PathSet ps = enumerate_paths(g, cfg.kind, cfg.K);
    PathNN model(cfg);
    ParamStore store;
    model.init_params(store, seed);
    std::vector<BatchItem> batch{{&g, &ps, 1.0}};
    std::vector<double> targets{0.0};

    auto eval_loss = [&]() {
        ForwardResult fr = model.forward(store, batch, /*train=*/false);
        return loss_and_metrics(fr.logits, targets, Task::Classification).loss;
    };

    store.zero_grad();
    ForwardResult fr = model.forward(store, batch, false);
    LossResult lr = loss_and_metrics(fr.logits, targets, Task::Classification);
    model.backward(store, lr.dlogits);
    store.check_finite_grads();

    GradCheckReport rep;
    for (const auto& name : store.names()) {
        Param& p = store.at(name);
        Eigen::MatrixXd analytic = p.grad;
        for (Eigen::Index i = 0; i < p.value.size(); ++i) {
            double orig = p.value.data()[i];
            p.value.data()[i] = orig + step;
            double lp = eval_loss();
            p.value.data()[i] = orig - step;
            double lm = eval_loss();
            p.value.data()[i] = orig;
            double num = (lp - lm) / (2.0 * step);
            double ana = analytic.data()[i];
            ++rep.checked;
            if (std::abs(ana) <= 1e-8 && std::abs(num) <= 1e-8) continue;
            // below the central-difference roundoff floor (~eps*|loss|/step)
            if (std::abs(ana - num) <= 1e-9) continue;
            double rel = std::abs(ana - num) / std::max(std::abs(ana), std::abs(num));
            if (rel > rep.worst_rel) {
                rep.worst_rel = rel;
                rep.worst_param = name;
                rep.worst_coord = static_cast<std::size_t>(i);
            }
            if (rel > tol) {
                rep.passed = false;
                throw GradCheckFailed(name, static_cast<std::size_t>(i), rel);
            }
        }
    }
    return rep;
}

// --- training -------------------------------------------------------------

namespace {

std::string graph_key(const Graph& g) {
    std::string key;
    put_i32(key, g.num_nodes);
    for (auto [u, v] : g.edges()) {
        put_i32(key, u);
        put_i32(key, v);
    }
    if (g.node_features)
        for (const auto& f : *g.node_features)
            key.append(reinterpret_cast<const char*>(f.data()), f.size() * sizeof(double));
    if (g.label) {
        double l = *g.label;
        key.append(reinterpret_cast<const char*>(&l), sizeof(double));
    }
    return key;
}

}  // namespace

TrainResult train(const Dataset& ds, const ModelConfig& cfg, const TrainConfig& tc) {
    if (ds.task != Task::Classification)
        throw InvalidParams("training currently supports classification datasets");
    if (cfg.out_dim != ds.num_classes)
        throw ConfigMismatch("model out_dim must equal the number of classes");
    const int M = static_cast<int>(ds.graphs.size());
    if (M < tc.folds) throw InvalidParams("fewer graphs than folds");

    // shared precomputation
    std::vector<PathSet> paths;
    paths.reserve(static_cast<std::size_t>(M));
    for (const auto& g : ds.graphs)
        paths.push_back(enumerate_paths(g, cfg.kind, cfg.K, tc.budget, tc.threads));
    std::vector<std::string> keys(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) keys[static_cast<std::size_t>(i)] = graph_key(ds.graphs[static_cast<std::size_t>(i)]);

    // stratified round-robin fold assignment
    std::vector<int> fold_of(static_cast<std::size_t>(M), 0);
    {
        std::map<int, std::vector<int>> by_class;
        for (int i = 0; i < M; ++i)
            by_class[static_cast<int>(ds.graphs[static_cast<std::size_t>(i)].label.value_or(0.0))]
                .push_back(i);
        for (auto& [cls, idxs] : by_class)
            for (std::size_t j = 0; j < idxs.size(); ++j)
                fold_of[static_cast<std::size_t>(idxs[j])] = static_cast<int>(j % tc.folds);
    }

    auto evaluate = [&](PathNN& model, ParamStore& store, const std::vector<int>& idxs) {
        double correct = 0.0, total = 0.0;
        for (std::size_t start = 0; start < idxs.size(); start += 64) {
            std::vector<BatchItem> batch;
            std::vector<double> targets;
            for (std::size_t j = start; j < std::min(start + 64, idxs.size()); ++j) {
                int i = idxs[j];
                batch.push_back({&ds.graphs[static_cast<std::size_t>(i)],
                                 &paths[static_cast<std::size_t>(i)], 1.0});
                targets.push_back(ds.graphs[static_cast<std::size_t>(i)].label.value_or(0.0));
            }
            ForwardResult fr = model.forward(store, batch, /*train=*/false);
            LossResult lr = loss_and_metrics(fr.logits, targets, Task::Classification);
            correct += lr.accuracy * static_cast<double>(batch.size());
            total += static_cast<double>(batch.size());
        }
        return total > 0 ? correct / total : 0.0;
    };

    TrainResult result;
    for (int f = 0; f < tc.folds; ++f) {
        std::vector<int> train_idx, test_idx;
        for (int i = 0; i < M; ++i)
            (fold_of[static_cast<std::size_t>(i)] == f ? test_idx : train_idx).push_back(i);

        PathNN model(cfg);
        ParamStore store;
        std::uint64_t fold_seed =
            tc.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(f + 1));
        model.init_params(store, fold_seed);

        double last_loss = 0.0;
        std::mt19937_64 shuffle_rng(fold_seed ^ 0xda3e39cb94b95bdbULL);
        for (int epoch = 0; epoch < tc.epochs; ++epoch) {
            std::vector<int> order = train_idx;
            std::shuffle(order.begin(), order.end(), shuffle_rng);
            double epoch_loss = 0.0;
            int batches = 0;
            for (std::size_t start = 0; start < order.size();
                 start += static_cast<std::size_t>(tc.batch)) {
                std::size_t end = std::min(start + static_cast<std::size_t>(tc.batch), order.size());
                // group identical graphs: one forward, loss weight = copy count
                std::map<std::string, std::pair<int, double>> groups;
                std::vector<std::string> group_order;
                for (std::size_t j = start; j < end; ++j) {
                    int i = order[j];
                    auto [it, fresh] =
                        groups.try_emplace(keys[static_cast<std::size_t>(i)], std::pair{i, 0.0});
                    if (fresh) group_order.push_back(keys[static_cast<std::size_t>(i)]);
                    it->second.second += 1.0;
                }
                std::vector<BatchItem> batch;
                std::vector<double> targets, weights;
                for (const auto& gk : group_order) {
                    auto [i, cnt] = groups.at(gk);
                    batch.push_back({&ds.graphs[static_cast<std::size_t>(i)],
                                     &paths[static_cast<std::size_t>(i)], cnt});
                    targets.push_back(ds.graphs[static_cast<std::size_t>(i)].label.value_or(0.0));
                    weights.push_back(cnt);
                }
                std::uint64_t dropout_seed =
                    fold_seed + 1000003ULL * static_cast<std::uint64_t>(epoch) +
                    static_cast<std::uint64_t>(start);
                store.zero_grad();
                ForwardResult fr = model.forward(store, batch, /*train=*/true, dropout_seed);
                LossResult lr = loss_and_metrics(fr.logits, targets, Task::Classification, weights);
                model.backward(store, lr.dlogits);
                store.check_finite_grads();
                adam_step(store, tc.lr);
                epoch_loss += lr.loss;
                ++batches;
            }
            last_loss = batches > 0 ? epoch_loss / batches : 0.0;
            if (tc.verbose && (epoch + 1) % 20 == 0)
                std::fprintf(stderr, "fold %d epoch %d loss %.6f\n", f, epoch + 1, last_loss);
        }

        FoldMetrics fm;
        fm.final_loss = last_loss;
        fm.train_accuracy = evaluate(model, store, train_idx);
        fm.test_accuracy = evaluate(model, store, test_idx);
        result.folds.push_back(fm);
    }

    double mean = 0.0;
    for (const auto& fm : result.folds) mean += fm.test_accuracy;
    mean /= static_cast<double>(result.folds.size());
    double var = 0.0;
    for (const auto& fm : result.folds) var += (fm.test_accuracy - mean) * (fm.test_accuracy - mean);
    var /= static_cast<double>(result.folds.size());
    result.mean_test_accuracy = mean;
    result.std_test_accuracy = std::sqrt(var);
    return result;
}

}  // namespace pathlab::nn
