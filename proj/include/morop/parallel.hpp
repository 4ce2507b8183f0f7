#pragma once

#include <cstddef>
#include <functional>

namespace morop {

/// Runs fn(i) for i in [0, count) on up to `threads` workers with static
/// block partitioning. threads <= 1 runs inline. The first exception thrown
/// by any worker is rethrown after all workers join. fn must not depend on
/// execution order.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace morop
