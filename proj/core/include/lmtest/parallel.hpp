#pragma once

#include <cstddef>
#include <functional>

namespace lmtest {

/// Worker count: LMTEST_THREADS if set (>=1), else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, count) on a small thread pool. Work items must be
/// independent; callers keep determinism by indexing into preallocated
/// storage. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace lmtest
