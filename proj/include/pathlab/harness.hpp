#pragma once

#include "pathlab/nn/model.hpp"
#include "pathlab/refine.hpp"
#include "pathlab/report.hpp"

namespace pathlab {

inline constexpr const char* kVersion = "0.1.0";

struct HarnessOptions {
    std::uint64_t seed = 0;
    int threads = 1;
    std::size_t budget = kDefaultPathBudget;
};

/// Property suites over a seeded synthetic corpus: tree-expressiveness
/// properties, refinement comparisons, and the CSL / hard-pair separations.
/// A report with zero failures maps to exit code 0.
SuiteReport run_expressiveness_suite(const HarnessOptions& opt);

/// Strongly-regular benchmark: all-pairs refinement verdicts under AP K=4
/// with and without distance annotation, plus the 1-WL baseline. An empty
/// input runs the builtin SR(16,6,2,2) pair.
SuiteReport run_sr_benchmark(const std::vector<Graph>& graphs, const HarnessOptions& opt);

/// Cross-validated training on the CSL dataset.
SuiteReport run_csl_training(const nn::ModelConfig& cfg, const nn::TrainConfig& tc);

/// Wall-clock timings and per-(kind, K) path counts for a dataset.
SuiteReport timing_bench(const Dataset& ds, const std::vector<PathKind>& kinds,
                         const std::vector<int>& Ks, const HarnessOptions& opt);

/// Model configuration used for CSL classification runs.
nn::ModelConfig csl_model_config(PathKind kind, int K);

}  // namespace pathlab
