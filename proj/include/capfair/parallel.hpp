#pragma once

#include <cstddef>
#include <functional>

namespace capfair {

// <=0 means all hardware threads.
int resolve_workers(int requested);

// Runs body(i) for i in [0, count) across workers threads. Work is split
// into contiguous index ranges, so outputs written by index are independent
// of scheduling.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace capfair
