#include "combforge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace combforge {

namespace {
std::atomic<int> g_thread_cap{0};
thread_local bool g_inside_worker = false;
} // namespace

void set_thread_cap(int cap) { g_thread_cap.store(cap < 0 ? 0 : cap); }

int thread_budget() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("COMB_FORGE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    const int cap = g_thread_cap.load();
    if (cap > 0) n = std::min(n, cap);
    return std::max(n, 1);
}

void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& task) {
    if (count == 0) return;
    // Nested calls (an already-parallel task fanning out again) run inline.
    const int workers =
        g_inside_worker ? 1 : static_cast<int>(std::min<std::size_t>(thread_budget(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = count;

    auto body = [&] {
        g_inside_worker = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                g_inside_worker = false;
                return;
            }
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

} // namespace combforge
