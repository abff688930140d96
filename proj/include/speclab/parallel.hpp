#pragma once

#include <cstddef>
#include <functional>

namespace speclab {

// Worker count: hardware concurrency capped by SPECLAB_THREADS.
unsigned workerCount();

// Runs body(i) for i in [0, n) on up to workerCount() threads. Each index is
// handled exactly once, so results written to per-index slots are
// deterministic regardless of scheduling. The first exception is rethrown.
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace speclab
