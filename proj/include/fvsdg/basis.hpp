#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace fvsdg {

struct CellGeometry1D {
    double center = 0.0;
    double width = 1.0;
};

struct CellGeometry2D {
    double cx = 0.0;
    double cy = 0.0;
    double dx = 1.0;
    double dy = 1.0;
};

// Orthonormal scaled Legendre basis on an interval:
// phi_l(x) = sqrt((2l+1)/dx) P_l(2(x-xc)/dx).
class Basis1D {
public:
    explicit Basis1D(int K);

    int degree() const { return K_; }
    int size() const { return K_ + 1; }

    // d-th x-derivative of mode l at reference coordinate xi in [-1/2, 1/2].
    double eval(int l, double xi, double dx, int deriv = 0) const;

    // rows: points (physical), cols: modes
    Eigen::MatrixXd eval(const CellGeometry1D& cell, const std::vector<double>& x, int deriv = 0) const;

private:
    int K_;
    std::vector<std::vector<double>> coef_;  // Legendre monomial coefficients in s = 2 xi
};

// Total-degree tensor basis on a rectangle, (K+1)(K+2)/2 modes ordered by
// total degree, then x-degree descending.
class Basis2D {
public:
    explicit Basis2D(int K);

    int degree() const { return K_; }
    int size() const { return static_cast<int>(modes_.size()); }
    std::array<int, 2> mode(int k) const { return modes_[k]; }
    const Basis1D& line() const { return b1_; }

    double eval(int k, double xi, double eta, double dx, double dy, int dxo = 0, int dyo = 0) const;

    Eigen::MatrixXd eval(const CellGeometry2D& cell, const std::vector<std::array<double, 2>>& pts,
                         std::array<int, 2> deriv = {0, 0}) const;

private:
    int K_;
    Basis1D b1_;
    std::vector<std::array<int, 2>> modes_;
};

}  // namespace fvsdg
