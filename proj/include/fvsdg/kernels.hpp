#pragma once

namespace fvsdg::kernels {

// Dense small matrix-vector kernels for modal <-> quadrature transforms.
// Matrices are column-major with `rows` contiguous entries per column.

enum class Isa { Scalar, AVX2, NEON };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
// Select a variant explicitly; returns false if unavailable on this CPU.
bool force_isa(Isa isa);

// y = A x
void matvec(const double* A, int rows, int cols, const double* x, double* y);
// y = A^T x
void matvec_t(const double* A, int rows, int cols, const double* x, double* y);

namespace scalar {
void matvec(const double* A, int rows, int cols, const double* x, double* y);
void matvec_t(const double* A, int rows, int cols, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
void matvec(const double* A, int rows, int cols, const double* x, double* y);
void matvec_t(const double* A, int rows, int cols, const double* x, double* y);
}  // namespace avx2

namespace neon {
void matvec(const double* A, int rows, int cols, const double* x, double* y);
void matvec_t(const double* A, int rows, int cols, const double* x, double* y);
}  // namespace neon

}  // namespace fvsdg::kernels
