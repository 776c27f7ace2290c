#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <numeric>
#include <random>

#include "pathlab/nn/model.hpp"

using namespace pathlab;
using namespace pathlab::nn;

TEST_CASE("recurrent cell matches a hand-computed scalar trajectory") {
    // d = 1, gate order i,f,g,o; value computed independently from the update
    // equations with these exact weights
    ParamStore store;
    CellSpec spec;
    spec.hidden = 1;
    store.add("cell.Wx", 4, 1).value << 0.1, 0.2, 0.3, 0.4;
    store.add("cell.Wh", 4, 1).value << 0.5, -0.3, 0.2, 0.1;
    store.add("cell.b", 4, 1).value << 0.0, 1.0, 0.0, 0.0;
    CellTraj traj;
    traj.X.resize(2, 1);
    traj.X << 1.0, -0.5;
    cell_forward(store, spec, traj);
    CHECK(traj.H(1, 0) == doctest::Approx(0.019207287119331742).epsilon(1e-14));
    CHECK(traj.C(1, 0) == doctest::Approx(0.042480483591846252).epsilon(1e-14));
}

TEST_CASE("cell parameter registration applies the forget-gate bias") {
    ParamStore store;
    CellSpec spec;
    spec.hidden = 3;
    cell_init_params(store, spec, 4, 0, 5);
    const auto& b = store.at("cell.b").value;
    CHECK(b.block(3, 0, 3, 1).isOnes());
    CHECK(b.block(0, 0, 3, 1).isZero());
    CHECK(b.block(6, 0, 6, 1).isZero());
}

TEST_CASE("adam takes the textbook first step") {
    ParamStore store;
    Param& p = store.add("w", 1, 1);
    p.value(0, 0) = 1.0;
    p.grad(0, 0) = 1.0;
    adam_step(store, 1e-3);
    CHECK(p.value(0, 0) == doctest::Approx(0.99900000001).epsilon(1e-14));
    CHECK(store.step == 1);
}

TEST_CASE("cross entropy on uniform logits is log of the class count") {
    Eigen::MatrixXd logits = Eigen::MatrixXd::Zero(1, 10);
    LossResult r = loss_and_metrics(logits, {3.0}, Task::Classification);
    CHECK(r.loss == doctest::Approx(2.3025850929940459).epsilon(1e-14));
    CHECK(r.dlogits.row(0).sum() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.accuracy == 0.0);  // argmax ties resolve to class 0, target is 3
}

TEST_CASE("loss weights reproduce explicit duplication") {
    Eigen::MatrixXd one(1, 3), two(2, 3);
    one << 0.3, -0.2, 1.1;
    two << 0.3, -0.2, 1.1, 0.3, -0.2, 1.1;
    LossResult a = loss_and_metrics(one, {2.0}, Task::Classification, {2.0});
    LossResult b = loss_and_metrics(two, {2.0, 2.0}, Task::Classification, {1.0, 1.0});
    CHECK(a.loss == doctest::Approx(b.loss).epsilon(1e-14));
    CHECK(a.accuracy == b.accuracy);
    CHECK(a.dlogits.row(0).isApprox(b.dlogits.row(0) + b.dlogits.row(1), 1e-12));
}

TEST_CASE("regression loss is the mean absolute error") {
    Eigen::MatrixXd logits(2, 1);
    logits << 1.5, -0.5;
    LossResult r = loss_and_metrics(logits, {1.0, 0.5}, Task::Regression);
    CHECK(r.mae == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(r.dlogits(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.dlogits(1, 0) == doctest::Approx(-0.5).epsilon(1e-12));
}

namespace {

ModelConfig small_config() {
    ModelConfig cfg;
    cfg.K = 2;
    cfg.hidden = 3;
    cfg.kind = PathKind::SPPlus;
    cfg.out_dim = 2;
    return cfg;
}

}  // namespace

TEST_CASE("forward matches a direct per-path recomputation") {
    Graph g = make_er_random(7, 0.45, 31);
    ModelConfig cfg = small_config();
    const int d = cfg.hidden;
    PathNN model(cfg);
    ParamStore store;
    model.init_params(store, 9);
    PathSet ps = enumerate_paths(g, cfg.kind, cfg.K);
    ForwardResult got = model.forward(store, {{&g, &ps, 1.0}}, false, 0);

    // encoder on all-ones input
    Eigen::MatrixXd X0 = Eigen::MatrixXd::Ones(g.num_nodes, 1);
    Eigen::MatrixXd h1 =
        ((X0 * store.at("enc.W1").value.transpose()).rowwise() +
         store.at("enc.b1").value.transpose().row(0))
            .cwiseMax(0.0);
    Eigen::MatrixXd H = (h1 * store.at("enc.W2").value.transpose()).rowwise() +
                        store.at("enc.b2").value.transpose().row(0);

    CellSpec spec;
    spec.hidden = d;
    for (int k = 1; k <= cfg.K; ++k) {
        Eigen::MatrixXd next = H;
        for (int v = 0; v < g.num_nodes; ++v)
            for (std::size_t i = 0; i < ps.path_count(v, k); ++i) {
                auto p = ps.path(v, k, i);
                CellTraj traj;
                traj.X.resize(k + 1, d);
                for (int t = 0; t <= k; ++t) traj.X.row(t) = H.row(p[k - t]);
                cell_forward(store, spec, traj);
                next.row(v) += traj.H.row(k);
            }
        H = next;
    }
    Eigen::RowVectorXd emb = H.colwise().sum();
    Eigen::RowVectorXd logits =
        emb * store.at("pred.W").value.transpose() +
        store.at("pred.b").value.transpose().row(0);
    CHECK(got.node_states.isApprox(H, 1e-9));
    CHECK(got.logits.row(0).isApprox(logits, 1e-9));
}

TEST_CASE("train and eval forward agree when dropout is off") {
    Graph g = make_er_random(8, 0.4, 17);
    ModelConfig cfg = small_config();
    PathNN model(cfg);
    ParamStore store;
    model.init_params(store, 3);
    PathSet ps = enumerate_paths(g, cfg.kind, cfg.K);
    ForwardResult a = model.forward(store, {{&g, &ps, 1.0}}, true, 42);
    ForwardResult b = model.forward(store, {{&g, &ps, 1.0}}, false, 0);
    CHECK(a.logits == b.logits);
}

TEST_CASE("logits are bit-identical under node relabelling") {
    Graph g = make_er_random(9, 0.4, 23);
    std::vector<int> perm(static_cast<std::size_t>(g.num_nodes));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
    Graph h = g.permuted(perm);
    ModelConfig cfg = small_config();
    PathNN model(cfg);
    ParamStore store;
    model.init_params(store, 4);
    PathSet pg = enumerate_paths(g, cfg.kind, cfg.K);
    PathSet ph = enumerate_paths(h, cfg.kind, cfg.K);
    ForwardResult a = model.forward(store, {{&g, &pg, 1.0}}, false, 0);
    ForwardResult b = model.forward(store, {{&h, &ph, 1.0}}, false, 0);
    CHECK(a.logits == b.logits);
    CHECK(a.graph_embeddings == b.graph_embeddings);
}

TEST_CASE("forward validates the path set against the config") {
    Graph g = make_cycle(5);
    ModelConfig cfg = small_config();
    PathNN model(cfg);
    ParamStore store;
    model.init_params(store, 1);
    PathSet wrong_kind = enumerate_paths(g, PathKind::AP, cfg.K);
    CHECK_THROWS_AS(model.forward(store, {{&g, &wrong_kind, 1.0}}, false, 0),
                    ConfigMismatch);
    PathSet too_short = enumerate_paths(g, cfg.kind, 1);
    CHECK_THROWS_AS(model.forward(store, {{&g, &too_short, 1.0}}, false, 0),
                    ConfigMismatch);
}

TEST_CASE("gradient check passes on representative configurations") {
    Graph g = make_er_random(7, 0.4, 13);
    ModelConfig cfg = small_config();
    CHECK(grad_check(g, cfg, 2).passed);
    cfg.phi = Phi::Mlp;
    cfg.norm = Norm::BatchNorm;
    cfg.path_agg = Agg::Mean;
    cfg.readout = Agg::Mean;
    cfg.cell = CellVariant::Distance;
    CHECK(grad_check(g, cfg, 2).passed);
    cfg.cell = CellVariant::Edge;
    cfg.norm = Norm::Euclidean;
    cfg.edge_dim = 2;
    cfg.pred_layers = 2;
    CHECK(grad_check(g, cfg, 2).passed);
}

TEST_CASE("checkpoints round-trip bit-exactly") {
    ModelConfig cfg = small_config();
    PathNN model(cfg);
    ParamStore store;
    model.init_params(store, 77);
    std::string path = "/tmp/pathlab_test_ckpt.bin";
    save_checkpoint(store, cfg.to_json(), path);
    ParamStore loaded;
    std::string cfg_json = load_checkpoint(loaded, path);
    std::remove(path.c_str());
    CHECK(ModelConfig::from_json(cfg_json).to_json() == cfg.to_json());
    REQUIRE(loaded.names() == store.names());
    for (const auto& name : store.names())
        CHECK(loaded.at(name).value == store.at(name).value);
}

TEST_CASE("adding a layer adds exactly the per-layer parameters") {
    for (Norm norm : {Norm::None, Norm::BatchNorm}) {
        std::size_t count[2];
        for (int extra = 0; extra < 2; ++extra) {
            ModelConfig cfg = small_config();
            cfg.norm = norm;
            cfg.K = 4 + extra;
            ParamStore store;
            PathNN(cfg).init_params(store, 1);
            count[extra] = store.num_parameters();
        }
        // the recurrent cell is shared across layers; with identity phi the
        // only per-layer parameters are the normalization's
        std::size_t per_layer = norm == Norm::BatchNorm
                                    ? 2 * static_cast<std::size_t>(small_config().hidden)
                                    : 0;
        CHECK(count[1] - count[0] == per_layer);
    }
}
