#ifndef PRAT_PARALLEL_HPP
#define PRAT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "prat/cancel.hpp"

namespace prat {

constexpr std::size_t scan_chunk = 256;

unsigned default_jobs();

/* out[i] = fn(i) for i < n. Indices are handed out in contiguous chunks;
 * the result does not depend on the number of workers. If any call throws,
 * the exception of the lowest failing chunk is rethrown after all workers
 * stop. */
template <typename R, typename Fn>
std::vector<R> chunked_map(std::size_t n, unsigned jobs, Fn && fn, cancel_token const * cancel = nullptr,
                           std::size_t chunk = scan_chunk)
{
    std::vector<R> out(n);
    std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<std::exception_ptr> errors(nchunks);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto worker = [&]() {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks || stop.load())
                return;
            try {
                std::size_t hi = std::min(n, (c + 1) * chunk);
                for (std::size_t i = c * chunk; i < hi; ++i) {
                    check_cancel(cancel);
                    out[i] = fn(i);
                }
            } catch (...) {
                errors[c] = std::current_exception();
                stop.store(true);
            }
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(nchunks, 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto & t : pool)
            t.join();
    }
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace prat

#endif
