#include "vkg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vkg {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) { g_threads = std::max(1u, n); }
unsigned thread_count() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const unsigned workers = std::min<std::size_t>(g_threads.load(), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock{failure_mutex};
                if (!failure)
                    failure = std::current_exception();
                next = n;
                return;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace vkg
