#include "fvsdg/characteristic.hpp"

#include <fmt/format.h>

#include "fvsdg/error.hpp"
#include "fvsdg/quadrature.hpp"

namespace fvsdg {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

FreezeState interface_freeze(const Discretization& disc, const ModalField& u, int cell, Side side,
                             FreezeAverage kind) {
    const Model& model = disc.model();
    Vec in = disc.face_value(u, cell, side);
    Vec out = disc.exterior_face_value(u, cell, side);
    FreezeState fz;
    fz.kind = kind;
    bool ok = true;
    if (kind == FreezeAverage::Roe && !model.scalar()) {
        try {
            fz.state = model.roe_average(in, out, side_normal(side)).conservative;
            ok = fz.state.allFinite() && model.admissible(fz.state);
        } catch (const Error&) {
            ok = false;
        }
    } else {
        fz.state = 0.5 * (in + out);
        ok = model.admissible(fz.state);
    }
    if (!ok) {
        fz.fallback = true;
        fz.state = 0.5 * (disc.mean(u, cell) + disc.neighbor_mean(u, cell, side));
    }
    return fz;
}

CharTransform char_transform(const Model& model, const Vec& state, Normal n) {
    if (model.scalar()) return {Mat::Identity(1, 1), Mat::Identity(1, 1)};
    EigenStructure es = model.char_eigen(state, n);
    return {es.L, es.R};
}

Eigen::MatrixXd moment_transform(const Eigen::MatrixXd& A, const Mat& L) {
    if (L.cols() != A.rows())
        fail(ErrorKind::Config, fmt::format("moment_transform: L has {} columns, A has {} rows", L.cols(), A.rows()));
    return L * A;
}

Eigen::MatrixXd interp_transform(const Eigen::MatrixXd& A, const Mat& L, const Eigen::MatrixXd& P) {
    if (L.cols() != A.rows() || P.cols() != A.cols() || P.rows() != P.cols())
        fail(ErrorKind::Config, "interp_transform: shape mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(P);
    if (!lu.isInvertible()) fail(ErrorKind::Numerical, "interp_transform: singular sample set");
    Eigen::MatrixXd Y = A * P.transpose();  // components x points
    Eigen::MatrixXd Yc = L * Y;
    return lu.solve(Yc.transpose()).transpose();
}

Eigen::MatrixXd sample_matrix(const Discretization& disc) {
    const int K = disc.K();
    if (auto* d1 = dynamic_cast<const DG1D*>(&disc)) {
        QuadratureRule q = gauss_rule(K + 1);
        Eigen::MatrixXd P(K + 1, K + 1);
        for (int i = 0; i <= K; ++i)
            for (int k = 0; k <= K; ++k) P(i, k) = d1->basis().eval(k, q.points[i], disc.width(0));
        return P;
    }
    auto& d2 = dynamic_cast<const DG2D&>(disc);
    const int nm = d2.basis().size();
    Eigen::MatrixXd P(nm, nm);
    int r = 0;
    for (int j = 0; j <= K; ++j)
        for (int i = 0; i + j <= K; ++i, ++r) {
            double xi = K == 0 ? 0.0 : -0.4 + 0.8 * i / K;
            double eta = K == 0 ? 0.0 : -0.4 + 0.8 * j / K;
            for (int k = 0; k < nm; ++k) P(r, k) = d2.basis().eval(k, xi, eta, disc.width(0), disc.width(1));
        }
    return P;
}

bool limit_in_characteristic(const Discretization& disc, const ModalField& u, int cell, const CellLimiter& lim,
                             const LimiterConfig& cfg, bool limit_all, double* out, int* freeze_fallbacks) {
    const Model& model = disc.model();
    const CellConstraints& cc = lim.constraints();
    const int m = u.m, nm = u.nmodes, ns = disc.sides();
    Eigen::Map<const RowMat> A(u.cell(cell), m, nm);

    double nbbuf[4 * kMaxComp];
    gather_neighbor_means(disc, u, cell, nbbuf);
    Eigen::Map<const RowMat> NB(nbbuf, m, ns);

    RowMat acc = RowMat::Zero(m, nm);
    bool any = false;
    double target[4];
    for (int s = 0; s < ns; ++s) {
        Side side = static_cast<Side>(s);
        FreezeState fz = interface_freeze(disc, u, cell, side, cfg.freeze);
        if (fz.fallback && freeze_fallbacks) ++*freeze_fallbacks;
        CharTransform T = char_transform(model, fz.state, side_normal(side));
        RowMat B = T.L * A;
        RowMat NBc = T.L * NB;
        RowMat Bn = B;
        bool frame = false;
        for (int c = 0; c < m; ++c) {
            bool mod = tvb_targets(cc, B.row(c).data(), NBc.row(c).data(), target);
            if (!(limit_all || mod)) continue;
            lim.limit(B.row(c).data(), target, Bn.row(c).data());
            frame = true;
        }
        if (frame) {
            acc += T.R * Bn;
            any = true;
        } else {
            acc += A;
        }
    }
    if (!any) return false;
    acc /= static_cast<double>(ns);
    for (int c = 0; c < m; ++c) acc(c, 0) = A(c, 0);
    Eigen::Map<RowMat>(out, m, nm) = acc;
    return true;
}

}  // namespace fvsdg
