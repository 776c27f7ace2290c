#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathlab/paths.hpp"
#include "pathlab/trees.hpp"

namespace pathlab {

struct RefinementConfig {
    PathKind kind = PathKind::AP;
    int K = 1;
    bool distance_annotation = false;
    bool edge_annotation = false;
    bool dummy_padding = true;
    enum class Init { Uniform, FromNodeFeatures };
    Init init = Init::Uniform;
};

/// Per-node dense color ids per refinement iteration (iteration 0 = init).
struct Coloring {
    std::vector<std::vector<std::int32_t>> colors;
    int iterations() const { return static_cast<int>(colors.size()) - 1; }
    int num_nodes() const { return colors.empty() ? 0 : static_cast<int>(colors[0].size()); }
};

/// Per-iteration digest of the sorted multiset of node colors. Comparable only
/// within one RefineSession (color ids are session-scoped).
struct GraphFingerprint {
    std::vector<TreeHash> digests;
    bool operator==(const GraphFingerprint&) const = default;
};

/// true iff a's partition is finer-or-equal: a(v)=a(u) implies b(v)=b(u).
bool partition_refines(const std::vector<std::int32_t>& a,
                       const std::vector<std::int32_t>& b);

struct DistinguishResult {
    bool distinguished = false;
    int k = -1;  // smallest iteration at which fingerprints differ
};

/// Shared exact-interning session. Colors produced by refinements within one
/// session are comparable across graphs; id assignment is content-addressed
/// and deterministic for a fixed call order.
class RefineSession {
public:
    Coloring wl_refine(const Graph& g, int iters,
                       RefinementConfig::Init init = RefinementConfig::Init::Uniform);
    Coloring path_refine(const Graph& g, const PathSet& ps, const RefinementConfig& cfg);
    GraphFingerprint fingerprint(const Coloring& c) const;

    std::size_t table_size() const { return table_.size(); }

private:
    std::int32_t intern(const std::string& key);
    std::vector<std::int32_t> init_colors(const Graph& g, RefinementConfig::Init init);
    std::unordered_map<std::string, std::int32_t> table_;
};

/// Enumerates paths for both graphs with cfg and returns the smallest
/// iteration at which the exact fingerprints differ.
DistinguishResult distinguish(const Graph& a, const Graph& b, const RefinementConfig& cfg,
                              std::size_t budget = kDefaultPathBudget, int threads = 1);

}  // namespace pathlab
