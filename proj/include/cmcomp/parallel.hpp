#pragma once

#include <cstdint>
#include <exception>

#include <omp.h>

namespace cmcomp {

// Runs fn(i) for i in [0, count). Each trial writes only its own slot, so the
// result does not depend on jobs. jobs <= 0 means all available threads.
template <class Fn>
void parallel_trials(std::int64_t count, int jobs, Fn &&fn) {
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(cmcomp_trial_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

// Serial reference: same contract, no threads.
template <class Fn>
void serial_trials(std::int64_t count, Fn &&fn) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
}

}  // namespace cmcomp
