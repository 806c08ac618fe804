#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace otreg {

template <typename T, typename F>
std::vector<T> parallel_map(long count, F&& f) {
    std::vector<T> out(static_cast<std::size_t>(std::max(0L, count)));
    const long workers =
        std::clamp<long>(static_cast<long>(std::thread::hardware_concurrency()), 1, 16);
    if (workers == 1 || count < 64) {
        for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (long w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long i = w; i < count; i += workers) out[static_cast<std::size_t>(i)] = f(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace otreg
