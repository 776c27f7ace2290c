#pragma once

#include <memory>

#include "pathlab/nn/cell.hpp"
#include "pathlab/paths.hpp"

namespace pathlab::nn {

enum class Phi { Identity, Mlp };
enum class Norm { None, Euclidean, BatchNorm };
enum class Agg { Sum, Mean };

struct ModelConfig {
    int K = 2;
    int hidden = 16;
    PathKind kind = PathKind::SPPlus;
    Phi phi = Phi::Identity;
    Norm norm = Norm::None;
    Agg readout = Agg::Sum;
    Agg path_agg = Agg::Sum;
    double dropout = 0.0;
    CellVariant cell = CellVariant::Plain;
    int in_dim = 1;     // node feature dim (1 = all-ones when absent)
    int edge_dim = 0;   // raw edge feature dim (edge variant)
    int out_dim = 1;    // classes or regression outputs
    int pred_layers = 1;

    std::string to_json() const;
    static ModelConfig from_json(const std::string& s);
};

struct BatchItem {
    const Graph* graph = nullptr;
    const PathSet* paths = nullptr;
    double weight = 1.0;  // loss weight (grouped identical graphs)
};

struct ForwardResult {
    Eigen::MatrixXd graph_embeddings;  // B x d
    Eigen::MatrixXd logits;            // B x out_dim
    Eigen::MatrixXd node_states;       // n_total x d, final layer
};

/// From-scratch PathNN: shared recurrent path encoder over reversed paths,
/// residual node update with optional normalization and phi, sum/mean readout.
/// Forward caches everything backward needs; one forward-backward pair per
/// instance at a time.
class PathNN {
public:
    explicit PathNN(ModelConfig cfg);
    ~PathNN();

    const ModelConfig& config() const;
    void init_params(ParamStore& store, std::uint64_t seed) const;

    ForwardResult forward(ParamStore& store, const std::vector<BatchItem>& batch,
                          bool train, std::uint64_t dropout_seed = 0);
    /// Accumulates parameter gradients for upstream dlogits (B x out_dim).
    void backward(ParamStore& store, const Eigen::MatrixXd& dlogits);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// --- losses ---------------------------------------------------------------

struct LossResult {
    double loss = 0.0;
    double accuracy = 0.0;  // classification only
    double mae = 0.0;       // regression only
    Eigen::MatrixXd dlogits;
};

LossResult loss_and_metrics(const Eigen::MatrixXd& logits, const std::vector<double>& targets,
                            Task task, const std::vector<double>& weights = {});

// --- gradient check -------------------------------------------------------

struct GradCheckReport {
    bool passed = true;
    std::string worst_param;
    std::size_t worst_coord = 0;
    double worst_rel = 0.0;
    int checked = 0;
};

/// Central finite differences vs analytic gradients over every parameter
/// coordinate; throws GradCheckFailed on the first violation past tol.
GradCheckReport grad_check(const Graph& g, const ModelConfig& cfg, std::uint64_t seed,
                           double step = 1e-5, double tol = 1e-5);

// --- training -------------------------------------------------------------

struct TrainConfig {
    double lr = 1e-3;
    int epochs = 200;
    int batch = 32;
    std::uint64_t seed = 0;
    int folds = 5;
    std::size_t budget = kDefaultPathBudget;
    int threads = 1;
    bool verbose = false;
};

struct FoldMetrics {
    double test_accuracy = 0.0;
    double train_accuracy = 0.0;
    double final_loss = 0.0;
};

struct TrainResult {
    std::vector<FoldMetrics> folds;
    double mean_test_accuracy = 0.0;
    double std_test_accuracy = 0.0;
};

TrainResult train(const Dataset& ds, const ModelConfig& cfg, const TrainConfig& tc);

}  // namespace pathlab::nn
