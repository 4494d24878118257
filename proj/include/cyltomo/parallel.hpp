#pragma once

#include <cstddef>
#include <functional>

namespace cyltomo {

/// Worker count: CYLTOMO_THREADS when set (>= 1), else hardware concurrency.
int thread_count();

/**
 * Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
 * visited exactly once; callers write only to slot i so results do not depend
 * on scheduling.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cyltomo
