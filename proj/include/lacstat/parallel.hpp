#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace lacstat {

// Chunked parallel map with a reduction in fixed chunk order. Chunk
// boundaries depend only on (total, chunk), never on the worker count, so
// results are identical for any number of threads.
template <typename Partial, typename Fn>
std::vector<Partial> parallel_chunks(long total, long chunk, int threads, Fn&& fn) {
    long nchunks = total <= 0 ? 0 : (total + chunk - 1) / chunk;
    std::vector<Partial> partials(static_cast<size_t>(nchunks));
    if (nchunks == 0) return partials;
    if (threads <= 1 || nchunks == 1) {
        for (long c = 0; c < nchunks; ++c)
            partials[static_cast<size_t>(c)] = fn(c * chunk, std::min(total, (c + 1) * chunk));
        return partials;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            long c = next.fetch_add(1);
            if (c >= nchunks) return;
            partials[static_cast<size_t>(c)] = fn(c * chunk, std::min(total, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    int nw = std::min<long>(threads, nchunks);
    pool.reserve(static_cast<size_t>(nw));
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return partials;
}

}  // namespace lacstat
