// Trial pool: independent Monte Carlo trials over private RNG streams,
// merged by trial index so results do not depend on scheduling.
//
// run_trials_serial is the reference implementation; run_trials dispatches
// to the OpenMP pool and must produce identical output for any worker
// count (asserted by tests, compared by the bench target).
#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rgl/rng.hpp"

namespace rgl {

inline int hardware_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class R, class F>
std::vector<R> run_trials_serial(int trials, std::uint64_t master_seed, F&& fn) {
    std::vector<R> out(trials);
    for (int t = 0; t < trials; ++t) out[t] = fn(t, trial_stream(master_seed, std::uint64_t(t)));
    return out;
}

// workers == 0 means "use all hardware threads"; workers == 1 is the serial path.
template <class R, class F>
std::vector<R> run_trials(int trials, int workers, std::uint64_t master_seed, F&& fn) {
    if (workers == 1) return run_trials_serial<R>(trials, master_seed, fn);
#ifdef _OPENMP
    std::vector<R> out(trials);
    if (workers <= 0) workers = hardware_workers();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int t = 0; t < trials; ++t) out[t] = fn(t, trial_stream(master_seed, std::uint64_t(t)));
    return out;
#else
    return run_trials_serial<R>(trials, master_seed, fn);
#endif
}

} // namespace rgl
