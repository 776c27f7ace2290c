#include "pathlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace pathlab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<Graph> er_corpus(std::uint64_t seed, int count, int max_n) {
    std::vector<Graph> out;
    std::mt19937_64 rng(seed ^ 0xc0ffee123ULL);
    std::uniform_int_distribution<int> pick_n(4, max_n);
    std::uniform_real_distribution<double> pick_p(0.2, 0.5);
    for (int i = 0; i < count; ++i) {
        int n = pick_n(rng);
        double p = pick_p(rng);
        Graph g = make_er_random(n, p, rng());
        g.id = "er" + std::to_string(i);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

std::string kind_cfg(PathKind kind, int K, bool dist = false) {
    std::string s = std::string(path_kind_name(kind)) + " K=" + std::to_string(K);
    if (dist) s += " +distance";
    return s;
}

}  // namespace

nn::ModelConfig csl_model_config(PathKind kind, int K) {
    nn::ModelConfig cfg;
    cfg.K = K;
    cfg.hidden = 64;
    cfg.kind = kind;
    cfg.phi = nn::Phi::Identity;
    cfg.norm = nn::Norm::None;
    cfg.readout = nn::Agg::Sum;
    cfg.path_agg = nn::Agg::Sum;
    cfg.dropout = 0.0;
    cfg.cell = nn::CellVariant::Plain;
    cfg.in_dim = 1;
    cfg.out_dim = 10;
    cfg.pred_layers = 1;
    return cfg;
}

SuiteReport run_expressiveness_suite(const HarnessOptions& opt) {
    SuiteReport rep;
    rep.suite = "expressiveness";
    rep.seed = opt.seed;
    rep.threads = opt.threads;
    rep.version = kVersion;

    std::vector<Graph> corpus = er_corpus(opt.seed, 30, 10);

    // tree implication: structurally different walk trees imply structurally
    // different path trees (AP), per node pair within each graph
    {
        auto t0 = Clock::now();
        long long checked = 0, violations = 0;
        const int kMax = 3;
        TreeHasher hasher(TreeHasher::Mode::Exact);
        for (const Graph& g : corpus) {
            PathSet ps = enumerate_paths(g, PathKind::AP, kMax, opt.budget, opt.threads);
            for (int k = 1; k <= kMax; ++k) {
                std::vector<TreeHash> wl(g.num_nodes), ap(g.num_nodes);
                for (int v = 0; v < g.num_nodes; ++v) {
                    wl[v] = hasher.hash(build_wl_tree(g, v, k));
                    ap[v] = hasher.hash(build_path_tree(ps, v, k));
                }
                for (int u = 0; u < g.num_nodes; ++u)
                    for (int v = u + 1; v < g.num_nodes; ++v) {
                        ++checked;
                        if (wl[u] != wl[v] && ap[u] == ap[v]) ++violations;
                    }
            }
        }
        rep.add({"tree-implication", "ap k<=3, 30 er graphs",
                 violations == 0 ? "pass" : "fail", static_cast<double>(violations),
                 std::to_string(checked) + " pairs checked", ms_since(t0)});
    }

    // level containment: every path tree embeds level-wise into the walk tree
    {
        auto t0 = Clock::now();
        long long violations = 0;
        const int kMax = 3;
        for (const Graph& g : corpus) {
            for (PathKind kind : {PathKind::SP, PathKind::SPPlus, PathKind::AP}) {
                PathSet ps = enumerate_paths(g, kind, kMax, opt.budget, opt.threads);
                for (int v = 0; v < g.num_nodes; ++v)
                    for (int k = 1; k <= kMax; ++k)
                        if (!level_subset_check(build_path_tree(ps, v, k),
                                                build_wl_tree(g, v, k)))
                            ++violations;
            }
        }
        rep.add({"level-containment", "all kinds k<=3",
                 violations == 0 ? "pass" : "fail", static_cast<double>(violations), "",
                 ms_since(t0)});
    }

    // pruning equivalence: the incremental subtree of the walk tree is the AP tree
    {
        auto t0 = Clock::now();
        long long violations = 0;
        const int kMax = 3;
        TreeHasher hasher(TreeHasher::Mode::Exact);
        for (const Graph& g : corpus) {
            PathSet ps = enumerate_paths(g, PathKind::AP, kMax, opt.budget, opt.threads);
            for (int v = 0; v < g.num_nodes; ++v)
                for (int k = 1; k <= kMax; ++k)
                    if (hasher.hash(prune_redundant(build_wl_tree(g, v, k))) !=
                        hasher.hash(build_path_tree(ps, v, k)))
                        ++violations;
        }
        rep.add({"pruned-walk-equivalence", "ap k<=3",
                 violations == 0 ? "pass" : "fail", static_cast<double>(violations), "",
                 ms_since(t0)});
    }

    // regression: P3 center vs K3 node — walk trees differ at k=2, shortest-path
    // trees do not, annotated refinement with padding separates them
    {
        auto t0 = Clock::now();
        Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}}, "p3");
        Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}, "k3");
        TreeHasher hasher(TreeHasher::Mode::Exact);
        bool wl_differ = hasher.hash(build_wl_tree(p3, 1, 2)) != hasher.hash(build_wl_tree(k3, 0, 2));
        PathSet ps_p3_sp = enumerate_paths(p3, PathKind::SP, 2);
        PathSet ps_k3_sp = enumerate_paths(k3, PathKind::SP, 2);
        PathSet ps_p3_spp = enumerate_paths(p3, PathKind::SPPlus, 2);
        PathSet ps_k3_spp = enumerate_paths(k3, PathKind::SPPlus, 2);
        bool sp_equal = hasher.hash(build_path_tree(ps_p3_sp, 1, 2)) ==
                        hasher.hash(build_path_tree(ps_k3_sp, 0, 2));
        bool spp_equal = hasher.hash(build_path_tree(ps_p3_spp, 1, 2)) ==
                         hasher.hash(build_path_tree(ps_k3_spp, 0, 2));
        RefineSession session;
        RefinementConfig rc;
        rc.kind = PathKind::SPPlus;
        rc.K = 2;
        rc.dummy_padding = true;
        Coloring cp = session.path_refine(p3, ps_p3_spp, rc);
        Coloring ck = session.path_refine(k3, ps_k3_spp, rc);
        bool refined_differ = cp.colors[2][1] != ck.colors[2][0];
        bool ok = wl_differ && sp_equal && spp_equal && refined_differ;
        rep.add({"center-vs-triangle", "k=2", ok ? "pass" : "fail", std::nullopt,
                 std::string("walk_differ=") + (wl_differ ? "1" : "0") +
                     " sp_equal=" + (sp_equal ? "1" : "0") +
                     " spp_equal=" + (spp_equal ? "1" : "0") +
                     " refine_differ=" + (refined_differ ? "1" : "0"),
                 ms_since(t0)});
    }

    // refinement dominance: annotated path colors refine the 1-WL colors at
    // every iteration, for every kind
    {
        auto t0 = Clock::now();
        long long violations = 0;
        const int kMax = 3;
        for (const Graph& g : corpus) {
            for (PathKind kind : {PathKind::SP, PathKind::SPPlus, PathKind::AP}) {
                RefineSession session;
                Coloring wl = session.wl_refine(g, kMax);
                RefinementConfig rc;
                rc.kind = kind;
                rc.K = kMax;
                rc.dummy_padding = true;
                PathSet ps = enumerate_paths(g, kind, kMax, opt.budget, opt.threads);
                Coloring pr = session.path_refine(g, ps, rc);
                for (int i = 0; i <= kMax; ++i)
                    if (!partition_refines(pr.colors[static_cast<std::size_t>(i)],
                                           wl.colors[static_cast<std::size_t>(i)]))
                        ++violations;
            }
        }
        rep.add({"refinement-dominance", "all kinds k<=3",
                 violations == 0 ? "pass" : "fail", static_cast<double>(violations), "",
                 ms_since(t0)});
    }

    // CSL class separations
    auto csl_sep = [&](PathKind kind, int K, bool dist, const std::string& id, int need) {
        auto t0 = Clock::now();
        std::vector<Graph> fam = csl_family();
        RefinementConfig rc;
        rc.kind = kind;
        rc.K = K;
        rc.distance_annotation = dist;
        rc.dummy_padding = true;
        int separated = 0;
        for (std::size_t a = 0; a < fam.size(); ++a)
            for (std::size_t b = a + 1; b < fam.size(); ++b)
                if (distinguish(fam[a], fam[b], rc, opt.budget, opt.threads).distinguished)
                    ++separated;
        rep.add({id, kind_cfg(kind, K, dist), separated >= need ? "pass" : "fail",
                 static_cast<double>(separated),
                 std::to_string(separated) + "/45 class pairs separated", ms_since(t0)});
    };
    csl_sep(PathKind::SPPlus, 11, false, "csl-spp", 45);
    csl_sep(PathKind::AP, 5, true, "csl-ap", 45);
    csl_sep(PathKind::SP, 11, false, "csl-sp", 36);

    // CSL permutation invariance of fingerprints (SPPlus)
    {
        auto t0 = Clock::now();
        std::mt19937_64 rng(opt.seed ^ 0x5151ULL);
        std::vector<Graph> fam = csl_family();
        RefinementConfig rc;
        rc.kind = PathKind::SPPlus;
        rc.K = 11;
        int violations = 0;
        for (const Graph& g : fam) {
            RefineSession session;
            PathSet ps = enumerate_paths(g, rc.kind, rc.K, opt.budget, opt.threads);
            GraphFingerprint fp = session.fingerprint(session.path_refine(g, ps, rc));
            for (int rep_i = 0; rep_i < 5; ++rep_i) {
                Graph h = g.permuted(random_permutation(g.num_nodes, rng));
                PathSet ph = enumerate_paths(h, rc.kind, rc.K, opt.budget, opt.threads);
                if (!(session.fingerprint(session.path_refine(h, ph, rc)) == fp)) ++violations;
            }
        }
        rep.add({"csl-permutation-invariance", kind_cfg(rc.kind, rc.K),
                 violations == 0 ? "pass" : "fail", static_cast<double>(violations),
                 "5 permutations per class", ms_since(t0)});
    }

    // hard pair: 2k-cycle vs two k-cycles — 1-WL blind, simple paths separate
    {
        auto t0 = Clock::now();
        auto [g1, g2] = wl_hard_pair(3);
        RefineSession session;
        GraphFingerprint w1 = session.fingerprint(session.wl_refine(g1, 3));
        GraphFingerprint w2 = session.fingerprint(session.wl_refine(g2, 3));
        RefinementConfig rc;
        rc.kind = PathKind::AP;
        rc.K = 3;
        DistinguishResult dr = distinguish(g1, g2, rc, opt.budget, opt.threads);
        bool ok = w1 == w2 && dr.distinguished;
        rep.add({"hard-pair", "c6 vs 2xc3, ap k=3", ok ? "pass" : "fail", std::nullopt,
                 std::string("wl_equal=") + (w1 == w2 ? "1" : "0") +
                     " ap_distinguished_at=" + std::to_string(dr.k),
                 ms_since(t0)});
    }

    return rep;
}

SuiteReport run_sr_benchmark(const std::vector<Graph>& graphs, const HarnessOptions& opt) {
    SuiteReport rep;
    rep.suite = "sr-benchmark";
    rep.seed = opt.seed;
    rep.threads = opt.threads;
    rep.version = kVersion;

    std::vector<Graph> gs = graphs;
    if (gs.empty()) {
        gs.push_back(make_rook_4x4());
        gs.push_back(make_shrikhande());
    }

    // 1-WL baseline over all pairs
    {
        auto t0 = Clock::now();
        int indist = 0, pairs = 0;
        for (std::size_t a = 0; a < gs.size(); ++a)
            for (std::size_t b = a + 1; b < gs.size(); ++b) {
                ++pairs;
                RefineSession session;
                GraphFingerprint fa =
                    session.fingerprint(session.wl_refine(gs[a], gs[a].num_nodes));
                GraphFingerprint fb =
                    session.fingerprint(session.wl_refine(gs[b], gs[b].num_nodes));
                if (fa == fb) ++indist;
            }
        rep.add({"wl-baseline", "1-wl", "info", static_cast<double>(indist),
                 std::to_string(indist) + "/" + std::to_string(pairs) + " pairs undistinguished",
                 ms_since(t0)});
    }

    auto all_pairs = [&](bool dist, const std::string& id) {
        auto t0 = Clock::now();
        RefinementConfig rc;
        rc.kind = PathKind::AP;
        rc.K = 4;
        rc.distance_annotation = dist;
        int failures = 0, pairs = 0;
        for (std::size_t a = 0; a < gs.size(); ++a)
            for (std::size_t b = a + 1; b < gs.size(); ++b) {
                ++pairs;
                try {
                    if (!distinguish(gs[a], gs[b], rc, opt.budget, opt.threads).distinguished)
                        ++failures;
                } catch (const BudgetExceeded&) {
                    ++failures;
                }
            }
        double rate = pairs > 0 ? static_cast<double>(failures) / pairs : 0.0;
        rep.add({id, kind_cfg(rc.kind, rc.K, dist), "info", rate,
                 std::to_string(failures) + "/" + std::to_string(pairs) + " pairs undistinguished",
                 ms_since(t0)});
        return rate;
    };
    all_pairs(false, "ap-plain");
    double rate_dist = all_pairs(true, "ap-distance");
    rep.add({"failure-rate", kind_cfg(PathKind::AP, 4, true),
             rate_dist <= 0.2 ? "pass" : "fail", rate_dist, "threshold 0.2", 0.0});
    return rep;
}

SuiteReport run_csl_training(const nn::ModelConfig& cfg, const nn::TrainConfig& tc) {
    SuiteReport rep;
    rep.suite = "csl-training";
    rep.seed = tc.seed;
    rep.threads = tc.threads;
    rep.version = kVersion;
    auto t0 = Clock::now();
    Dataset ds = csl_dataset();
    nn::TrainResult tr = nn::train(ds, cfg, tc);
    for (std::size_t f = 0; f < tr.folds.size(); ++f) {
        const auto& fm = tr.folds[f];
        std::ostringstream d;
        d << "train_acc=" << fm.train_accuracy << " loss=" << fm.final_loss;
        rep.add({"fold" + std::to_string(f), cfg.to_json(), "info", fm.test_accuracy, d.str(),
                 0.0});
    }
    std::ostringstream d;
    d << "mean=" << tr.mean_test_accuracy * 100.0 << " std=" << tr.std_test_accuracy * 100.0;
    rep.add({"summary", cfg.to_json(), tr.mean_test_accuracy == 1.0 ? "pass" : "fail",
             tr.mean_test_accuracy, d.str(), ms_since(t0)});
    return rep;
}

SuiteReport timing_bench(const Dataset& ds, const std::vector<PathKind>& kinds,
                         const std::vector<int>& Ks, const HarnessOptions& opt) {
    SuiteReport rep;
    rep.suite = "timing";
    rep.seed = opt.seed;
    rep.threads = opt.threads;
    rep.version = kVersion;
    for (PathKind kind : kinds) {
        for (int K : Ks) {
            auto t0 = Clock::now();
            double total = 0.0;
            bool exceeded = false;
            for (const Graph& g : ds.graphs) {
                try {
                    total += static_cast<double>(
                        enumerate_paths(g, kind, K, opt.budget, opt.threads).total_paths());
                } catch (const BudgetExceeded&) {
                    exceeded = true;
                }
            }
            double mean =
                ds.graphs.empty() ? 0.0 : total / static_cast<double>(ds.graphs.size());
            rep.add({std::string("paths-") + path_kind_name(kind) + "-k" + std::to_string(K),
                     kind_cfg(kind, K), exceeded ? "info" : "pass", mean,
                     exceeded ? "budget exceeded on some graphs" : "mean paths per graph",
                     ms_since(t0)});
        }
    }
    return rep;
}

}  // namespace pathlab
