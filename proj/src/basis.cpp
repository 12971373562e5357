#include "fvsdg/basis.hpp"

#include <cmath>

#include "fvsdg/error.hpp"

namespace fvsdg {

Basis1D::Basis1D(int K) : K_(K) {
    require(K >= 0 && K <= 12, "Basis1D: degree must lie in [0, 12]");
    coef_.assign(K + 1, std::vector<double>(K + 1, 0.0));
    coef_[0][0] = 1.0;
    if (K >= 1) coef_[1][1] = 1.0;
    for (int n = 2; n <= K; ++n) {
        // n P_n = (2n-1) s P_{n-1} - (n-1) P_{n-2}
        for (int j = 0; j <= n; ++j) {
            double v = 0.0;
            if (j >= 1) v += (2 * n - 1) * coef_[n - 1][j - 1];
            v -= (n - 1) * coef_[n - 2][j];
            coef_[n][j] = v / n;
        }
    }
}

double Basis1D::eval(int l, double xi, double dx, int deriv) const {
    if (l < 0 || l > K_) fail(ErrorKind::Config, "Basis1D::eval: mode out of range");
    if (deriv < 0) fail(ErrorKind::Config, "Basis1D::eval: negative derivative order");
    if (deriv > l) return 0.0;
    const double s = 2.0 * xi;
    // Horner on the deriv-th derivative of the monomial expansion
    double v = 0.0;
    for (int j = l; j >= deriv; --j) {
        double c = coef_[l][j];
        for (int q = 0; q < deriv; ++q) c *= (j - q);
        v = v * s + c;
    }
    return std::sqrt((2.0 * l + 1.0) / dx) * std::pow(2.0 / dx, deriv) * v;
}

Eigen::MatrixXd Basis1D::eval(const CellGeometry1D& cell, const std::vector<double>& x, int deriv) const {
    Eigen::MatrixXd out(x.size(), size());
    for (std::size_t q = 0; q < x.size(); ++q) {
        double xi = (x[q] - cell.center) / cell.width;
        if (std::abs(xi) > 0.5 + 1e-12) fail(ErrorKind::Config, "Basis1D::eval: point outside cell");
        for (int l = 0; l < size(); ++l) out(q, l) = eval(l, xi, cell.width, deriv);
    }
    return out;
}

Basis2D::Basis2D(int K) : K_(K), b1_(K) {
    for (int d = 0; d <= K; ++d)
        for (int px = d; px >= 0; --px) modes_.push_back({px, d - px});
}

double Basis2D::eval(int k, double xi, double eta, double dx, double dy, int dxo, int dyo) const {
    const auto [px, py] = modes_[k];
    return b1_.eval(px, xi, dx, dxo) * b1_.eval(py, eta, dy, dyo);
}

Eigen::MatrixXd Basis2D::eval(const CellGeometry2D& cell, const std::vector<std::array<double, 2>>& pts,
                              std::array<int, 2> deriv) const {
    Eigen::MatrixXd out(pts.size(), size());
    for (std::size_t q = 0; q < pts.size(); ++q) {
        double xi = (pts[q][0] - cell.cx) / cell.dx;
        double eta = (pts[q][1] - cell.cy) / cell.dy;
        if (std::abs(xi) > 0.5 + 1e-12 || std::abs(eta) > 0.5 + 1e-12)
            fail(ErrorKind::Config, "Basis2D::eval: point outside cell");
        for (int k = 0; k < size(); ++k) out(q, k) = eval(k, xi, eta, cell.dx, cell.dy, deriv[0], deriv[1]);
    }
    return out;
}

}  // namespace fvsdg
