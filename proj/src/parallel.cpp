#include "atw/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace atw {

namespace {
std::atomic<int> g_threads{1};
}

void set_num_threads(int threads)
{
    if (threads <= 0) {
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    g_threads.store(threads);
}

int num_threads() { return g_threads.load(); }

void parallel_rows(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(num_threads()), count);
    if (workers <= 1) {
        if (count > 0) {
            body(0, count);
        }
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin < end) {
            pool.emplace_back([&body, begin, end] { body(begin, end); });
        }
    }
    body(0, std::min(count, chunk));
}

} // namespace atw

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace atw {

void retain_large_allocations()
{
#if defined(__GLIBC__)
    constexpr int kThreshold = 1 << 30;
    mallopt(M_MMAP_THRESHOLD, kThreshold);
    mallopt(M_TRIM_THRESHOLD, kThreshold);
#endif
}

} // namespace atw
