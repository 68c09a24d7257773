#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace grssd {

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// fn(begin, end, worker) over contiguous chunks of [0, n); rethrows the first exception
template <class Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = default_threads();
    std::size_t workers = std::min<std::size_t>(threads, n == 0 ? 1 : n);
    if (workers <= 1) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex mu;
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t b = w * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, b, e, w] {
            try {
                fn(b, e, static_cast<unsigned>(w));
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}
