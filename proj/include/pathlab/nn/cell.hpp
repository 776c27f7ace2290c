#pragma once

#include <Eigen/Dense>

#include <vector>

#include "pathlab/nn/params.hpp"

namespace pathlab::nn {

enum class CellVariant { Plain, Distance, Edge };

/// One gated-recurrence trajectory over a single input sequence. Rows of X are
/// the step inputs (already normalized / dropout-masked by the caller); dist
/// holds per-step distance ids for the distance variant; Eenc / Eraw hold the
/// encoded and raw edge features for the edge variant (row 0 is zero: the
/// first step has no incoming edge).
struct CellTraj {
    Eigen::MatrixXd X;       // T x d
    std::vector<int> dist;   // T entries, or empty
    Eigen::MatrixXd Eenc;    // T x d, or 0 x 0
    Eigen::MatrixXd Eraw;    // T x edge_dim, or 0 x 0
    // caches filled by cell_forward:
    Eigen::MatrixXd I, F, G, O, C, H;  // T x d each
};

struct CellSpec {
    CellVariant variant = CellVariant::Plain;
    int hidden = 0;
    std::string prefix = "cell";  // parameter name prefix
};

/// Registers cell parameters: Wx, Wh (4d x d, gate order i,f,g,o), b (4d),
/// Wd + D for the distance variant, We + edge encoder for the edge variant.
void cell_init_params(ParamStore& store, const CellSpec& spec, int max_distance,
                      int edge_dim, std::uint64_t seed);

/// Runs the recurrence, filling traj caches; returns nothing (final hidden
/// state is traj.H.row(T-1)).
void cell_forward(const ParamStore& store, const CellSpec& spec, CellTraj& traj);

struct CellBackward {
    /// dX[t] is r x d: gradient of each upstream row w.r.t. the step-t input.
    std::vector<Eigen::MatrixXd> dX;
};

/// Backward through one cached trajectory for r upstream rows U (r x d, each a
/// gradient w.r.t. the final hidden state). Parameter gradients are
/// accumulated with per-row weights `w` (sum_j w_j * dParam_j); input
/// gradients are returned per row unweighted.
CellBackward cell_backward(ParamStore& store, const CellSpec& spec, const CellTraj& traj,
                           const Eigen::MatrixXd& U, const Eigen::VectorXd& w);

}  // namespace pathlab::nn
