#pragma once

#include <cstddef>
#include <functional>

namespace sharpquad {

/// Worker count: SHARPQUAD_THREADS if set (clamped to >= 1), else the
/// machine's hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0,n) across workers. Callers write results into
/// index-addressed slots, so the outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace sharpquad
