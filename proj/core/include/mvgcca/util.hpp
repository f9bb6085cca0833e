#pragma once

#include <functional>

#include "mvgcca/linalg.hpp"

namespace mvgcca {

/// Worker cap for parallel sections: the MVGCCA_THREADS environment
/// variable when set (must be a positive integer), otherwise the
/// hardware concurrency.
int thread_budget();

/// Runs fn(0..count-1) across at most thread_budget() workers. Each
/// index must write only its own output slot; the first exception thrown
/// by any worker is rethrown after all workers finish.
void parallel_for(Index count, const std::function<void(Index)>& fn);

}  // namespace mvgcca
