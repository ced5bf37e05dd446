#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

// Data-parallel map over an index range. Every consumer writes result slot i
// from iteration i only, so the output is identical regardless of scheduling;
// parallel_map_serial is the reference implementation the tests compare
// against.

namespace aoiq {

template <class F>
void parallel_map_serial(std::size_t n, F&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline int hardware_jobs() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// jobs <= 0 means "use all hardware threads"; jobs == 1 is the serial path.
template <class F>
void parallel_map(std::size_t n, int jobs, F&& fn) {
    if (jobs <= 0) jobs = hardware_jobs();
#ifdef _OPENMP
    if (jobs > 1 && n > 1) {
        const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (long long i = 0; i < nn; ++i) fn(static_cast<std::size_t>(i));
        return;
    }
#endif
    parallel_map_serial(n, fn);
}

}  // namespace aoiq
