#include <arm_neon.h>

#include "fvsdg/kernels.hpp"

namespace fvsdg::kernels::neon {

void matvec(const double* A, int rows, int cols, const double* x, double* y) {
    int i = 0;
    for (; i + 2 <= rows; i += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (int j = 0; j < cols; ++j) acc = vfmaq_n_f64(acc, vld1q_f64(A + static_cast<long>(rows) * j + i), x[j]);
        vst1q_f64(y + i, acc);
    }
    for (; i < rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols; ++j) s += A[static_cast<long>(rows) * j + i] * x[j];
        y[i] = s;
    }
}

void matvec_t(const double* A, int rows, int cols, const double* x, double* y) {
    for (int j = 0; j < cols; ++j) {
        const double* col = A + static_cast<long>(rows) * j;
        float64x2_t acc = vdupq_n_f64(0.0);
        int i = 0;
        for (; i + 2 <= rows; i += 2) acc = vfmaq_f64(acc, vld1q_f64(col + i), vld1q_f64(x + i));
        double s = vaddvq_f64(acc);
        for (; i < rows; ++i) s += col[i] * x[i];
        y[j] = s;
    }
}

}  // namespace fvsdg::kernels::neon
