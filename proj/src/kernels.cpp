#include "fvsdg/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fvsdg::kernels {

namespace scalar {

void matvec(const double* A, int rows, int cols, const double* x, double* y) {
    for (int i = 0; i < rows; ++i) y[i] = 0.0;
    for (int j = 0; j < cols; ++j) {
        const double xj = x[j];
        const double* col = A + static_cast<long>(rows) * j;
        for (int i = 0; i < rows; ++i) y[i] += col[i] * xj;
    }
}

void matvec_t(const double* A, int rows, int cols, const double* x, double* y) {
    for (int j = 0; j < cols; ++j) {
        const double* col = A + static_cast<long>(rows) * j;
        double s = 0.0;
        for (int i = 0; i < rows; ++i) s += col[i] * x[i];
        y[j] = s;
    }
}

}  // namespace scalar

#if !defined(FVSDG_HAVE_AVX2)
namespace avx2 {
void matvec(const double* A, int rows, int cols, const double* x, double* y) { scalar::matvec(A, rows, cols, x, y); }
void matvec_t(const double* A, int rows, int cols, const double* x, double* y) {
    scalar::matvec_t(A, rows, cols, x, y);
}
}  // namespace avx2
#endif

#if !defined(FVSDG_HAVE_NEON)
namespace neon {
void matvec(const double* A, int rows, int cols, const double* x, double* y) { scalar::matvec(A, rows, cols, x, y); }
void matvec_t(const double* A, int rows, int cols, const double* x, double* y) {
    scalar::matvec_t(A, rows, cols, x, y);
}
}  // namespace neon
#endif

namespace {

using MatvecFn = void (*)(const double*, int, int, const double*, double*);

struct Dispatch {
    Isa isa = Isa::Scalar;
    MatvecFn mv = scalar::matvec;
    MatvecFn mvt = scalar::matvec_t;
};

void bind(Dispatch& d, Isa isa) {
    d.isa = isa;
    switch (isa) {
        case Isa::AVX2: d.mv = avx2::matvec; d.mvt = avx2::matvec_t; break;
        case Isa::NEON: d.mv = neon::matvec; d.mvt = neon::matvec_t; break;
        case Isa::Scalar: d.mv = scalar::matvec; d.mvt = scalar::matvec_t; break;
    }
}

Dispatch& dispatch() {
    static Dispatch d = [] {
        Dispatch out;
        const char* env = std::getenv("FVSDG_SIMD");
        bool want_scalar = env && std::strcmp(env, "scalar") == 0;
        if (!want_scalar) {
            if (isa_available(Isa::AVX2))
                bind(out, Isa::AVX2);
            else if (isa_available(Isa::NEON))
                bind(out, Isa::NEON);
        }
        return out;
    }();
    return d;
}

}  // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::AVX2: return "avx2";
        case Isa::NEON: return "neon";
    }
    return "?";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::AVX2:
#if defined(FVSDG_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::NEON:
#if defined(FVSDG_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() { return dispatch().isa; }

bool force_isa(Isa isa) {
    if (!isa_available(isa)) return false;
    bind(dispatch(), isa);
    return true;
}

void matvec(const double* A, int rows, int cols, const double* x, double* y) { dispatch().mv(A, rows, cols, x, y); }

void matvec_t(const double* A, int rows, int cols, const double* x, double* y) {
    dispatch().mvt(A, rows, cols, x, y);
}

}  // namespace fvsdg::kernels
