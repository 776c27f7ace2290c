#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pathlab/paths.hpp"

namespace pathlab {

/// Rooted tree with one graph-node label per tree node. Node 0 is the root at
/// level 0; every other node has a parent at the previous level.
struct RootedTree {
    std::vector<int> label;
    std::vector<int> parent;  // -1 for root
    std::vector<int> level;

    int size() const { return static_cast<int>(label.size()); }
    int height() const;
    std::vector<std::vector<int>> children() const;
    std::vector<std::size_t> level_sizes() const;
};

/// Walk-unfolding tree: children of a node at level l are all graph neighbors
/// of its label. Grows as b^k; guarded by a node budget.
RootedTree build_wl_tree(const Graph& g, int v, int k,
                         std::size_t node_budget = 1'000'000);

/// Path-Tree of height k from an enumerated path set: the trie of all stored
/// paths of length 1..k from v.
RootedTree build_path_tree(const PathSet& ps, int v, int k);

struct TreeHash {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    auto operator<=>(const TreeHash&) const = default;
    std::string hex() const;
};

/// Canonicalizing tree hasher. Labels are erased: only structure is hashed,
/// invariant under child reordering. Digest mode is a seeded 128-bit hash;
/// exact mode interns canonical codes so equal hash <=> isomorphic tree.
class TreeHasher {
public:
    enum class Mode { Digest, Exact };
    explicit TreeHasher(Mode mode = Mode::Digest) : mode_(mode) {}
    TreeHash hash(const RootedTree& t);
    Mode mode() const { return mode_; }

private:
    Mode mode_;
    std::map<std::vector<std::uint32_t>, std::uint32_t> intern_;
};

/// Lemma-style containment: pt's per-level label multisets are contained in
/// wt's, and every root-to-node label sequence of pt occurs in wt.
bool level_subset_check(const RootedTree& pt, const RootedTree& wt);

/// Per-node flags, true = redundant: the node's label equals an ancestor's
/// label, or an ancestor is redundant.
std::vector<bool> classify_tree_nodes(const RootedTree& wt);

/// The incremental-only subtree (redundant nodes and their subtrees removed).
RootedTree prune_redundant(const RootedTree& wt);

void write_dot(const RootedTree& t, std::ostream& os);

}  // namespace pathlab
