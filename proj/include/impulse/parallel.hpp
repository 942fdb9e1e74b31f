#pragma once

#include <functional>

namespace impulse {

/// Worker count used by row-parallel loops. 0 restores the default
/// (std::thread::hardware_concurrency()).
void set_num_threads(int n);
int num_threads() noexcept;

/// Calls fn(begin, end) on disjoint contiguous row ranges covering [0, rows).
/// Every row is processed exactly once, so any fn that writes only its own
/// rows gives results independent of the worker count.
void parallel_rows(int rows, const std::function<void(int, int)>& fn);

}  // namespace impulse
