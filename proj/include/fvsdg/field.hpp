#pragma once

#include <cmath>
#include <vector>

namespace fvsdg {

// Modal coefficients alpha[cell][component][mode].
struct ModalField {
    ModalField() = default;
    ModalField(int dim_, int ncells_, int m_, int K_)
        : dim(dim_), ncells(ncells_), m(m_), K(K_),
          nmodes(dim_ == 1 ? K_ + 1 : (K_ + 1) * (K_ + 2) / 2),
          data(static_cast<std::size_t>(ncells_) * m_ * nmodes, 0.0) {}

    int dim = 1;
    int ncells = 0;
    int m = 1;
    int K = 0;
    int nmodes = 1;
    double t = 0.0;
    std::vector<double> data;

    int block() const { return m * nmodes; }
    double* cell(int c) { return data.data() + static_cast<std::size_t>(c) * block(); }
    const double* cell(int c) const { return data.data() + static_cast<std::size_t>(c) * block(); }
    double& at(int c, int comp, int mode) { return cell(c)[comp * nmodes + mode]; }
    double at(int c, int comp, int mode) const { return cell(c)[comp * nmodes + mode]; }

    // cell mean from the constant mode, phi_0 = 1/sqrt(|cell|)
    double mean(int c, int comp, double measure) const { return at(c, comp, 0) / std::sqrt(measure); }

    bool same_shape(const ModalField& o) const {
        return dim == o.dim && ncells == o.ncells && m == o.m && K == o.K;
    }
    bool finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

}  // namespace fvsdg
