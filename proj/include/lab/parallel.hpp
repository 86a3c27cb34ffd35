#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lab {

// Worker-pool width: LAB_THREADS if set, else 1 (determinism is guaranteed
// either way; parallelism is opt-in).
inline int lab_threads() {
    const char* env = std::getenv("LAB_THREADS");
    if (!env) return 1;
    int t = std::atoi(env);
    return t < 1 ? 1 : t;
}

// Evaluate fn(0), ..., fn(nchunks-1) on a pool and return the results in
// chunk order, so any subsequent combination is schedule-independent.
template <class T, class Fn>
std::vector<T> parallel_chunks(int nchunks, Fn fn) {
    std::vector<T> out(static_cast<size_t>(nchunks));
    int threads = std::min(lab_threads(), nchunks);
    if (threads <= 1) {
        for (int i = 0; i < nchunks; ++i) out[static_cast<size_t>(i)] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error = nullptr;
    std::mutex err_mu;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= nchunks) return;
                try {
                    out[static_cast<size_t>(i)] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace lab
