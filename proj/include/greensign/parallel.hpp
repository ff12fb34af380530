#pragma once
#include <cstddef>
#include <functional>

namespace greensign {

// Worker count: GREENSIGN_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

// Calls body(i) for i in [0, count); static contiguous chunks, so results written
// to per-index slots are independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace greensign
