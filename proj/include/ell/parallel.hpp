// Deterministic fan-out over index ranges; AINF_THREADS caps the worker count.
#pragma once

#include <cstddef>
#include <functional>

namespace ell {

unsigned thread_count();

// Runs fn(i) for i in [0, n). Each index is handled by exactly one worker and
// callers write results into slot i, so reductions stay order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace ell
