#include "alfeld/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace alfeld {

namespace {
std::atomic<int> g_threads{1};
}

void set_num_threads(int n) { g_threads = n < 1 ? 1 : n; }

int num_threads() { return g_threads; }

int threads_from_environment(int fallback) {
    const char* env = std::getenv("ALFELD_ELAST_THREADS");
    if (!env) return fallback;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(env, &pos);
        if (pos == std::string(env).size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    return fallback;
}

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(num_threads(), n);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<int> next{begin};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (int i = next++; i < end; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = end;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace alfeld
