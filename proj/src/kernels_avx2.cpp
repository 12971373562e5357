#include <immintrin.h>

#include "fvsdg/kernels.hpp"

namespace fvsdg::kernels::avx2 {

void matvec(const double* A, int rows, int cols, const double* x, double* y) {
    int i = 0;
    for (; i + 4 <= rows; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (int j = 0; j < cols; ++j)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(A + static_cast<long>(rows) * j + i), _mm256_set1_pd(x[j]), acc);
        _mm256_storeu_pd(y + i, acc);
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
        __m256d acc = _mm256_setzero_pd();
        int i = 0;
        for (; i + 4 <= rows; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(col + i), _mm256_loadu_pd(x + i), acc);
        __m128d lo = _mm256_castpd256_pd128(acc), hi = _mm256_extractf128_pd(acc, 1);
        lo = _mm_add_pd(lo, hi);
        double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
        for (; i < rows; ++i) s += col[i] * x[i];
        y[j] = s;
    }
}

}  // namespace fvsdg::kernels::avx2
