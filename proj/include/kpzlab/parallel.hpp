#pragma once

#include <cstdint>
#include <functional>

namespace kpzlab {

// Number of worker threads for a requested count; 0 or less means all cores.
int resolve_threads(int requested);

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// processed exactly once, so results stored by index do not depend on the
// thread count. The first exception thrown by any body is rethrown.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body);

}  // namespace kpzlab
