#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pathlab/harness.hpp"
#include "pathlab/nn/model.hpp"

namespace {

using namespace pathlab;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    if (path == "-" || path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << bytes;
}

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) out.push_back(std::stoi(tok));
    return out;
}

/// Load graphs from a file (.g6 / .jsonl) or a builtin spec:
/// csl | csl:N:S | cycle:N | rook | shrikhande | hardpair:K | er:N:P100:SEED
Dataset load_graphs(const std::string& spec) {
    Dataset ds;
    if (ends_with(spec, ".g6")) {
        ds.graphs = parse_graph6(read_file(spec));
        ds.name = spec;
        return ds;
    }
    if (ends_with(spec, ".jsonl")) return parse_jsonl_dataset(read_file(spec));
    ds.name = spec;
    if (spec == "csl") return csl_dataset();
    if (spec == "csl-family") {
        ds.graphs = csl_family();
        ds.task = Task::Classification;
        ds.num_classes = 10;
        return ds;
    }
    if (spec == "rook") {
        ds.graphs = {make_rook_4x4()};
        return ds;
    }
    if (spec == "shrikhande") {
        ds.graphs = {make_shrikhande()};
        return ds;
    }
    if (spec == "sr-pair") {
        ds.graphs = {make_rook_4x4(), make_shrikhande()};
        return ds;
    }
    if (spec.rfind("csl:", 0) == 0) {
        auto v = split_ints(spec.substr(4));
        if (v.size() != 2) throw InvalidParams("expected csl:N:S");
        ds.graphs = {make_csl(v[0], v[1])};
        return ds;
    }
    if (spec.rfind("cycle:", 0) == 0) {
        ds.graphs = {make_cycle(std::stoi(spec.substr(6)))};
        return ds;
    }
    if (spec.rfind("hardpair:", 0) == 0) {
        auto [a, b] = wl_hard_pair(std::stoi(spec.substr(9)));
        ds.graphs = {a, b};
        return ds;
    }
    if (spec.rfind("er:", 0) == 0) {
        auto v = split_ints(spec.substr(3));
        if (v.size() != 3) throw InvalidParams("expected er:N:P100:SEED");
        ds.graphs = {make_er_random(v[0], v[1] / 100.0, static_cast<std::uint64_t>(v[2]))};
        return ds;
    }
    throw InvalidParams("unknown graph source: " + spec);
}

int default_threads() {
    if (const char* env = std::getenv("PATHLAB_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

struct GlobalOpts {
    int threads = default_threads();
    std::uint64_t seed = 0;
    std::size_t budget = kDefaultPathBudget;
    HarnessOptions harness() const { return {seed, threads, budget}; }
};

int finish_report(const SuiteReport& rep, const std::string& out, const std::string& fmt) {
    write_file(out, export_report(rep, fmt));
    if (out != "-" && !out.empty())
        std::cout << rep.suite << ": " << rep.passes() << " pass, " << rep.failures()
                  << " fail -> " << out << "\n";
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathlab: bounded-length path toolkit for graph expressiveness experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker threads (env PATHLAB_THREADS)");
    app.add_option("--seed", g.seed, "global random seed");
    app.add_option("--budget", g.budget, "path enumeration budget");

    // convert
    std::string in_path, out_path = "-", fmt = "json";
    auto* convert = app.add_subcommand("convert", "convert between graph6 and jsonl");
    convert->add_option("--in", in_path, "input file or builtin spec")->required();
    convert->add_option("--out", out_path, "output file (.g6 or .jsonl)")->required();

    // paths
    std::string kind_s = "ap";
    int K = 3, node = 0;
    bool dump = false;
    auto* paths = app.add_subcommand("paths", "enumerate bounded-length paths");
    paths->add_option("--in", in_path)->required();
    paths->add_option("--kind", kind_s, "sp | spp | ap");
    paths->add_option("--k", K, "maximum path length");
    paths->add_flag("--dump", dump, "print every path");

    // tree
    std::string tree_type = "path";
    auto* tree = app.add_subcommand("tree", "emit a walk or path tree as DOT");
    tree->add_option("--in", in_path)->required();
    tree->add_option("--node", node, "root node");
    tree->add_option("--k", K, "height");
    tree->add_option("--type", tree_type, "walk | path | pruned");
    tree->add_option("--kind", kind_s, "path kind for path trees");
    tree->add_option("--out", out_path);

    // refine
    bool dist_ann = false, edge_ann = false, no_dummy = false, use_wl = false;
    auto* refine = app.add_subcommand("refine", "color refinement fingerprints");
    refine->add_option("--in", in_path)->required();
    refine->add_option("--kind", kind_s);
    refine->add_option("--k", K, "iterations");
    refine->add_flag("--distance", dist_ann, "distance annotation");
    refine->add_flag("--edge", edge_ann, "edge annotation");
    refine->add_flag("--no-dummy", no_dummy, "disable dummy padding");
    refine->add_flag("--wl", use_wl, "plain 1-WL instead of path refinement");

    // distinguish
    std::string in_b;
    auto* disting = app.add_subcommand("distinguish", "compare two graphs by refinement");
    disting->add_option("--a", in_path)->required();
    disting->add_option("--b", in_b)->required();
    disting->add_option("--kind", kind_s);
    disting->add_option("--k", K);
    disting->add_flag("--distance", dist_ann);
    disting->add_flag("--edge", edge_ann);
    disting->add_flag("--no-dummy", no_dummy);

    // suites
    auto* expr = app.add_subcommand("expressiveness", "run the expressiveness property suite");
    expr->add_option("--out", out_path);
    expr->add_option("--format", fmt, "json | csv | markdown");

    auto* srb = app.add_subcommand("sr-bench", "strongly-regular refinement benchmark");
    srb->add_option("--in", in_path, "graph6 file (default: builtin pair)");
    srb->add_option("--out", out_path);
    srb->add_option("--format", fmt);

    // train
    std::string dataset = "csl", phi_s = "identity", norm_s = "none", cell_s = "plain";
    std::string readout_s = "sum", path_agg_s = "sum";
    int hidden = 64, epochs = 200, batch = 32, folds = 5, pred_layers = 1;
    double lr = 1e-3, dropout = 0.0;
    auto* train_cmd = app.add_subcommand("train", "cross-validated classification training");
    train_cmd->add_option("--dataset", dataset, "csl or a .jsonl file");
    train_cmd->add_option("--kind", kind_s);
    train_cmd->add_option("--k", K);
    train_cmd->add_option("--hidden", hidden);
    train_cmd->add_option("--epochs", epochs);
    train_cmd->add_option("--lr", lr);
    train_cmd->add_option("--batch", batch);
    train_cmd->add_option("--folds", folds);
    train_cmd->add_option("--phi", phi_s, "identity | mlp");
    train_cmd->add_option("--norm", norm_s, "none | euclidean | batch_norm");
    train_cmd->add_option("--cell", cell_s, "plain | distance | edge");
    train_cmd->add_option("--readout", readout_s);
    train_cmd->add_option("--path-agg", path_agg_s);
    train_cmd->add_option("--dropout", dropout);
    train_cmd->add_option("--pred-layers", pred_layers);
    train_cmd->add_option("--out", out_path);
    train_cmd->add_option("--format", fmt);

    // gradcheck
    auto* gc = app.add_subcommand("gradcheck", "finite-difference gradient verification");
    gc->add_option("--variant", cell_s, "plain | distance | edge");
    gc->add_option("--phi", phi_s);
    gc->add_option("--norm", norm_s);
    gc->add_option("--path-agg", path_agg_s);
    gc->add_option("--kind", kind_s);
    gc->add_option("--k", K);
    gc->add_option("--hidden", hidden);

    // timing
    std::string kinds_s = "sp,spp,ap", ks_s = "2,3";
    auto* timing = app.add_subcommand("timing", "path-count and wall-clock benchmark");
    timing->add_option("--dataset", dataset);
    timing->add_option("--kinds", kinds_s, "comma-separated kinds");
    timing->add_option("--ks", ks_s, "comma-separated path lengths");
    timing->add_option("--out", out_path);
    timing->add_option("--format", fmt);

    CLI11_PARSE(app, argc, argv);

    try {
        auto parse_cfg = [&] {
            RefinementConfig rc;
            rc.kind = path_kind_from_name(kind_s);
            rc.K = K;
            rc.distance_annotation = dist_ann;
            rc.edge_annotation = edge_ann;
            rc.dummy_padding = !no_dummy;
            return rc;
        };
        auto model_cfg = [&] {
            nn::ModelConfig cfg = csl_model_config(path_kind_from_name(kind_s), K);
            cfg.hidden = hidden;
            nn::ModelConfig probe = nn::ModelConfig::from_json(
                "{\"K\":1,\"hidden\":1,\"kind\":\"ap\",\"phi\":\"" + phi_s + "\",\"norm\":\"" +
                norm_s + "\",\"readout\":\"" + readout_s + "\",\"path_agg\":\"" + path_agg_s +
                "\",\"dropout\":0.0,\"cell\":\"" + cell_s +
                "\",\"in_dim\":1,\"edge_dim\":0,\"out_dim\":1,\"pred_layers\":1}");
            cfg.phi = probe.phi;
            cfg.norm = probe.norm;
            cfg.readout = probe.readout;
            cfg.path_agg = probe.path_agg;
            cfg.cell = probe.cell;
            cfg.dropout = dropout;
            cfg.pred_layers = pred_layers;
            return cfg;
        };

        if (convert->parsed()) {
            Dataset ds = load_graphs(in_path);
            if (ends_with(out_path, ".g6")) {
                std::string bytes;
                for (const Graph& gr : ds.graphs) bytes += encode_graph6(gr) + "\n";
                write_file(out_path, bytes);
            } else {
                write_file(out_path, write_jsonl_dataset(ds));
            }
            return 0;
        }
        if (paths->parsed()) {
            Dataset ds = load_graphs(in_path);
            PathKind kind = path_kind_from_name(kind_s);
            for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
                const Graph& gr = ds.graphs[i];
                PathSet ps = enumerate_paths(gr, kind, K, g.budget, g.threads);
                std::cout << "graph " << i << " (" << gr.num_nodes << " nodes): "
                          << ps.total_paths() << " paths";
                for (int k = 1; k <= K; ++k) std::cout << " len" << k << "=" << ps.count_of_length(k);
                std::cout << "\n";
                if (dump)
                    for (int v = 0; v < gr.num_nodes; ++v)
                        for (int k = 1; k <= K; ++k)
                            for (std::size_t p = 0; p < ps.path_count(v, k); ++p) {
                                auto sp = ps.path(v, k, p);
                                for (std::size_t t = 0; t < sp.size(); ++t)
                                    std::cout << (t ? "-" : "") << sp[t];
                                std::cout << "\n";
                            }
            }
            return 0;
        }
        if (tree->parsed()) {
            Dataset ds = load_graphs(in_path);
            if (ds.graphs.empty()) throw InvalidParams("no graphs in input");
            const Graph& gr = ds.graphs[0];
            RootedTree t;
            if (tree_type == "walk")
                t = build_wl_tree(gr, node, K);
            else if (tree_type == "pruned")
                t = prune_redundant(build_wl_tree(gr, node, K));
            else {
                PathSet ps = enumerate_paths(gr, path_kind_from_name(kind_s), K, g.budget,
                                             g.threads);
                t = build_path_tree(ps, node, K);
            }
            std::ostringstream os;
            write_dot(t, os);
            write_file(out_path, os.str());
            return 0;
        }
        if (refine->parsed()) {
            Dataset ds = load_graphs(in_path);
            RefineSession session;
            RefinementConfig rc = parse_cfg();
            for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
                const Graph& gr = ds.graphs[i];
                GraphFingerprint fp;
                if (use_wl) {
                    fp = session.fingerprint(session.wl_refine(gr, K));
                } else {
                    PathSet ps = enumerate_paths(gr, rc.kind, rc.K, g.budget, g.threads);
                    fp = session.fingerprint(session.path_refine(gr, ps, rc));
                }
                std::cout << "graph " << i << ":";
                for (const TreeHash& h : fp.digests) std::cout << " " << h.hex();
                std::cout << "\n";
            }
            return 0;
        }
        if (disting->parsed()) {
            Graph a = load_graphs(in_path).graphs.at(0);
            Graph b = load_graphs(in_b).graphs.at(0);
            DistinguishResult dr = distinguish(a, b, parse_cfg(), g.budget, g.threads);
            if (dr.distinguished)
                std::cout << "distinguished at iteration " << dr.k << "\n";
            else
                std::cout << "indistinguishable\n";
            return 0;
        }
        if (expr->parsed()) return finish_report(run_expressiveness_suite(g.harness()), out_path, fmt);
        if (srb->parsed()) {
            std::vector<Graph> gs;
            if (!in_path.empty()) gs = load_graphs(in_path).graphs;
            return finish_report(run_sr_benchmark(gs, g.harness()), out_path, fmt);
        }
        if (train_cmd->parsed()) {
            nn::ModelConfig cfg = model_cfg();
            nn::TrainConfig tc;
            tc.lr = lr;
            tc.epochs = epochs;
            tc.batch = batch;
            tc.seed = g.seed;
            tc.folds = folds;
            tc.budget = g.budget;
            tc.threads = g.threads;
            SuiteReport rep;
            if (dataset == "csl") {
                rep = run_csl_training(cfg, tc);
            } else {
                Dataset ds = parse_jsonl_dataset(read_file(dataset));
                cfg.out_dim = ds.num_classes;
                if (ds.task == Task::Classification && ds.graphs[0].node_features)
                    cfg.in_dim = static_cast<int>((*ds.graphs[0].node_features)[0].size());
                nn::TrainResult tr = nn::train(ds, cfg, tc);
                rep.suite = "training";
                rep.seed = tc.seed;
                rep.threads = tc.threads;
                rep.version = kVersion;
                for (std::size_t f = 0; f < tr.folds.size(); ++f)
                    rep.add({"fold" + std::to_string(f), cfg.to_json(), "info",
                             tr.folds[f].test_accuracy, "", 0.0});
                rep.add({"summary", cfg.to_json(), "info", tr.mean_test_accuracy, "", 0.0});
            }
            return finish_report(rep, out_path, fmt);
        }
        if (gc->parsed()) {
            nn::ModelConfig cfg = model_cfg();
            cfg.K = std::min(K, 3);
            cfg.hidden = std::min(hidden, 8);
            cfg.out_dim = 3;
            cfg.edge_dim = cfg.cell == nn::CellVariant::Edge ? 3 : 0;
            Graph gr = make_er_random(8, 0.4, g.seed + 7);
            nn::GradCheckReport rep = nn::grad_check(gr, cfg, g.seed);
            std::cout << "gradcheck passed: " << rep.checked << " coordinates, worst rel "
                      << rep.worst_rel << " (" << rep.worst_param << "[" << rep.worst_coord
                      << "])\n";
            return 0;
        }
        if (timing->parsed()) {
            Dataset ds = load_graphs(dataset);
            std::vector<PathKind> kinds;
            std::stringstream ss(kinds_s);
            std::string tok;
            while (std::getline(ss, tok, ',')) kinds.push_back(path_kind_from_name(tok));
            std::vector<int> ks;
            std::stringstream ss2(ks_s);
            while (std::getline(ss2, tok, ',')) ks.push_back(std::stoi(tok));
            return finish_report(timing_bench(ds, kinds, ks, g.harness()), out_path, fmt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
