#pragma once

#include <Eigen/Dense>

namespace fvsdg {

// At most four conserved components (2D Euler).
constexpr int kMaxComp = 4;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxComp, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxComp, kMaxComp>;

struct Normal {
    double nx = 1.0;
    double ny = 0.0;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

}  // namespace fvsdg
