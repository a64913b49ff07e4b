#pragma once

#include <cstddef>
#include <functional>

namespace atw {

// Worker count used by the row-parallel kernels. 0 means hardware concurrency.
void set_num_threads(int threads);
int num_threads();

/// Runs body(begin, end) over disjoint contiguous chunks of [0, count).
/// Each index is processed exactly once by exactly one worker, so kernels
/// whose rows are independent produce the same bits for any thread count.
void parallel_rows(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace atw

namespace atw {

/// Keeps freed multi-megabyte raster buffers in the heap instead of returning
/// them to the OS after every operation (glibc only; no-op elsewhere).
/// Process-wide; call once from an executable's entry point.
void retain_large_allocations();

} // namespace atw
