#include "fvsdg/parallel.hpp"

#include <climits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fvsdg {

namespace {
int g_threads = 1;
}

void set_threads(int n) { g_threads = n < 1 ? 1 : n; }

int threads() { return g_threads; }

void parallel_for(int n, const std::function<void(int)>& body) {
    if (g_threads <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    int first_bad = INT_MAX;
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(g_threads)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(fvsdg_parallel_error)
#endif
            if (i < first_bad) {
                first_bad = i;
                err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace fvsdg
