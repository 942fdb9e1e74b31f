#include "impulse/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace impulse {

namespace {

std::atomic<int> g_threads{0};

int default_threads() noexcept {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void set_num_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int num_threads() noexcept {
    const int n = g_threads.load();
    return n > 0 ? n : default_threads();
}

void parallel_rows(int rows, const std::function<void(int, int)>& fn) {
    if (rows <= 0) return;
    const int workers = std::min(num_threads(), rows);
    if (workers <= 1) {
        fn(0, rows);
        return;
    }

    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    threads.reserve(static_cast<std::size_t>(workers));
    const int chunk = (rows + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(rows, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace impulse
