#pragma once

#include <exception>
#include <functional>

namespace fvsdg {

// Number of worker threads for cell loops (1 when OpenMP is unavailable).
void set_threads(int n);
int threads();

// Static-schedule loop over [0, n). The exception from the lowest failing
// index is rethrown after the loop, so errors are thread-count independent.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace fvsdg
