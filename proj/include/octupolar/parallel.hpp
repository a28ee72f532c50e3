#pragma once

#include <cstddef>
#include <functional>

namespace octo {

// Worker count: hardware concurrency, capped by OCTO_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, n) on worker_count() threads. Each index is
// visited exactly once; callers write results into preallocated slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace octo
