#ifndef EIGENCURVE_PARALLEL_HPP
#define EIGENCURVE_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eigencurve {

/// Execution mode for embarrassingly parallel sweeps (rays, parameter grids).
/// serial is the reference path; results must be bitwise identical across
/// modes because every slot is an independent pure computation.
enum class ParallelMode { serial, openmp };

/// Runs f(0) .. f(n-1), each writing only its own output slot.  Exceptions
/// are captured and the first one is rethrown after the loop completes.
template <typename F>
void parallel_for_index(std::size_t n, ParallelMode mode, F&& f) {
#ifdef _OPENMP
    if (mode == ParallelMode::openmp) {
        std::exception_ptr first_error = nullptr;
        std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(n); ++i) {
            try {
                f(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#endif
    (void)mode;
    for (std::size_t i = 0; i < n; ++i) f(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace eigencurve

#endif
