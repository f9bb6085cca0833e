#include "mvgcca/util.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mvgcca/errors.hpp"

namespace mvgcca {

int thread_budget() {
    const char* env = std::getenv("MVGCCA_THREADS");
    if (env != nullptr && *env != '\0') {
        int value = 0;
        const auto result = std::from_chars(env, env + std::strlen(env), value);
        if (result.ec != std::errc{} || *result.ptr != '\0' || value < 1) {
            throw ConfigurationError("MVGCCA_THREADS must be a positive integer, got '" +
                                     std::string(env) + "'");
        }
        return value;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(Index count, const std::function<void(Index)>& fn) {
    if (count <= 0) return;
    const int workers = static_cast<int>(
        std::min<Index>(count, static_cast<Index>(thread_budget())));
    if (workers <= 1) {
        for (Index i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<Index> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const Index i = next.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mvgcca
