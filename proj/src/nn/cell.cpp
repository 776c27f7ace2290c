#include "pathlab/nn/cell.hpp"

namespace pathlab::nn {

namespace {

Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& x) {
    // stable in both tails
    return (x >= 0.0).select(1.0 / (1.0 + (-x).exp()), x.exp() / (1.0 + x.exp()));
}

}  // namespace

void cell_init_params(ParamStore& store, const CellSpec& spec, int max_distance,
                      int edge_dim, std::uint64_t seed) {
    int d = spec.hidden;
    auto& wx = store.add(spec.prefix + ".Wx", 4 * d, d);
    auto& wh = store.add(spec.prefix + ".Wh", 4 * d, d);
    auto& b = store.add(spec.prefix + ".b", 4 * d, 1);
    init_uniform(wx.value, seed + 1);
    init_uniform(wh.value, seed + 2);
    b.value.block(d, 0, d, 1).setConstant(1.0);  // forget-gate bias
    if (spec.variant == CellVariant::Distance) {
        auto& wd = store.add(spec.prefix + ".Wd", 4 * d, d);
        auto& D = store.add(spec.prefix + ".D", max_distance + 1, d);
        init_uniform(wd.value, seed + 3);
        init_uniform(D.value, seed + 4);
    }
    if (spec.variant == CellVariant::Edge) {
        auto& we = store.add(spec.prefix + ".We", 4 * d, d);
        auto& ew = store.add(spec.prefix + ".edge_enc.W", d, edge_dim);
        store.add(spec.prefix + ".edge_enc.b", d, 1);
        init_uniform(we.value, seed + 5);
        init_uniform(ew.value, seed + 6);
    }
}

void cell_forward(const ParamStore& store, const CellSpec& spec, CellTraj& traj) {
    const int d = spec.hidden;
    const Eigen::Index T = traj.X.rows();
    if (traj.X.cols() != d) throw ShapeMismatch("cell input dimension mismatch");
    const auto& Wx = store.at(spec.prefix + ".Wx").value;
    const auto& Wh = store.at(spec.prefix + ".Wh").value;
    const auto& b = store.at(spec.prefix + ".b").value;
    const Eigen::MatrixXd* Wd = nullptr;
    const Eigen::MatrixXd* D = nullptr;
    const Eigen::MatrixXd* We = nullptr;
    if (spec.variant == CellVariant::Distance) {
        Wd = &store.at(spec.prefix + ".Wd").value;
        D = &store.at(spec.prefix + ".D").value;
        if (static_cast<Eigen::Index>(traj.dist.size()) != T)
            throw ShapeMismatch("distance annotation length mismatch");
    }
    if (spec.variant == CellVariant::Edge) {
        We = &store.at(spec.prefix + ".We").value;
        if (traj.Eenc.rows() != T) throw ShapeMismatch("edge annotation length mismatch");
    }
    traj.I.resize(T, d);
    traj.F.resize(T, d);
    traj.G.resize(T, d);
    traj.O.resize(T, d);
    traj.C.resize(T, d);
    traj.H.resize(T, d);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    for (Eigen::Index t = 0; t < T; ++t) {
        Eigen::VectorXd z = Wx * traj.X.row(t).transpose() + Wh * h + b;
        if (Wd) z.noalias() += *Wd * D->row(traj.dist[t]).transpose();
        if (We) z.noalias() += *We * traj.Eenc.row(t).transpose();
        Eigen::ArrayXd i = sigmoid(z.segment(0, d).array());
        Eigen::ArrayXd f = sigmoid(z.segment(d, d).array());
        Eigen::ArrayXd g = z.segment(2 * d, d).array().tanh();
        Eigen::ArrayXd o = sigmoid(z.segment(3 * d, d).array());
        c = (f * c.array() + i * g).matrix();
        h = (o * c.array().tanh()).matrix();
        traj.I.row(t) = i.transpose();
        traj.F.row(t) = f.transpose();
        traj.G.row(t) = g.transpose();
        traj.O.row(t) = o.transpose();
        traj.C.row(t) = c.transpose();
        traj.H.row(t) = h.transpose();
    }
}

CellBackward cell_backward(ParamStore& store, const CellSpec& spec, const CellTraj& traj,
                           const Eigen::MatrixXd& U, const Eigen::VectorXd& w) {
    const int d = spec.hidden;
    const Eigen::Index T = traj.X.rows();
    const Eigen::Index r = U.rows();
    if (U.cols() != d || w.size() != r) throw ShapeMismatch("cell backward upstream shape");
    const auto& Wx = store.at(spec.prefix + ".Wx").value;
    const auto& Wh = store.at(spec.prefix + ".Wh").value;
    Param* pWx = &store.at(spec.prefix + ".Wx");
    Param* pWh = &store.at(spec.prefix + ".Wh");
    Param* pb = &store.at(spec.prefix + ".b");
    Param* pWd = nullptr;
    Param* pD = nullptr;
    Param* pWe = nullptr;
    Param* pEw = nullptr;
    Param* pEb = nullptr;
    if (spec.variant == CellVariant::Distance) {
        pWd = &store.at(spec.prefix + ".Wd");
        pD = &store.at(spec.prefix + ".D");
    }
    if (spec.variant == CellVariant::Edge) {
        pWe = &store.at(spec.prefix + ".We");
        pEw = &store.at(spec.prefix + ".edge_enc.W");
        pEb = &store.at(spec.prefix + ".edge_enc.b");
    }

    CellBackward out;
    out.dX.assign(T, Eigen::MatrixXd(r, d));
    Eigen::MatrixXd dh = U;                          // r x d
    Eigen::ArrayXXd dc = Eigen::ArrayXXd::Zero(r, d);
    Eigen::MatrixXd dz(r, 4 * d);
    Eigen::ArrayXXd DC(r, d);
    Eigen::MatrixXd Z(T, 4 * d);                     // weighted dz sums, one row per step
    using Row = Eigen::Array<double, 1, Eigen::Dynamic>;
    for (Eigen::Index t = T - 1; t >= 0; --t) {
        Row i = traj.I.row(t).array();
        Row f = traj.F.row(t).array();
        Row g = traj.G.row(t).array();
        Row o = traj.O.row(t).array();
        Row tc = traj.C.row(t).array().tanh();
        Row cprev = t > 0 ? Row(traj.C.row(t - 1).array()) : Row(Row::Zero(d));
        DC = dc + dh.array().rowwise() * (o * (1.0 - tc * tc));
        dz.leftCols(d).array() = DC.rowwise() * (g * i * (1.0 - i));
        dz.middleCols(d, d).array() = DC.rowwise() * (cprev * f * (1.0 - f));
        dz.middleCols(2 * d, d).array() = DC.rowwise() * (i * (1.0 - g * g));
        dz.rightCols(d).array() = dh.array().rowwise() * (tc * o * (1.0 - o));
        dc = DC.rowwise() * f;
        out.dX[t].noalias() = dz * Wx;   // r x d
        dh.noalias() = dz * Wh;          // gradient w.r.t. h_{t-1}
        Z.row(t).noalias() = w.transpose() * dz;     // per-row weighted sum, 1 x 4d
    }
    // parameter gradients, batched over steps
    Eigen::MatrixXd Hprev(T, d);
    Hprev.row(0).setZero();
    if (T > 1) Hprev.bottomRows(T - 1) = traj.H.topRows(T - 1);
    pWx->grad.noalias() += Z.transpose() * traj.X;
    pWh->grad.noalias() += Z.transpose() * Hprev;
    pb->grad += Z.colwise().sum().transpose();
    if (pWd) {
        const auto& D = pD->value;
        for (Eigen::Index t = 0; t < T; ++t) {
            int l = traj.dist[t];
            pWd->grad.noalias() += Z.row(t).transpose() * D.row(l);
            pD->grad.row(l).noalias() += Z.row(t) * pWd->value;
        }
    }
    if (pWe && T > 1) {  // step 0 has no incoming edge
        pWe->grad.noalias() += Z.bottomRows(T - 1).transpose() * traj.Eenc.bottomRows(T - 1);
        Eigen::MatrixXd denc = Z.bottomRows(T - 1) * pWe->value;  // (T-1) x d
        pEw->grad.noalias() += denc.transpose() * traj.Eraw.bottomRows(T - 1);
        pEb->grad += denc.colwise().sum().transpose();
    }
    return out;
}

}  // namespace pathlab::nn
