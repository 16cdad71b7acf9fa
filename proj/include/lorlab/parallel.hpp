#pragma once

#include <cstddef>
#include <functional>

namespace lorlab {

/// Worker count: LORLAB_THREADS if set (>= 1), else the hardware concurrency.
std::size_t thread_count();

/// Calls body(i) for every i in [0, n). Work is split into contiguous blocks,
/// so results written by index do not depend on scheduling. The first
/// exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lorlab
