#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace njcalc {

/// Global switch for the OpenMP kernel paths. Defaults to on when built with
/// OpenMP. All parallel kernels merge per-item results in index order, so
/// output is identical to the serial path regardless of schedule.
inline bool& parallel_flag() {
    static bool on = true;
    return on;
}
inline bool parallel_enabled() { return parallel_flag(); }
inline void set_parallel(bool on) { parallel_flag() = on; }
inline int worker_count() {
#ifdef _OPENMP
    return parallel_enabled() ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

/// Runs fn(i) for i in [0, n). Parallel when OpenMP is available and enabled.
/// fn must only write to state owned by index i.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
#ifdef _OPENMP
    if (parallel_enabled() && n > 1) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) fn(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace njcalc
