#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace parcov {

// Deterministic parallel map-reduce: the index range is cut into fixed
// chunks, workers pick chunks dynamically, and the per-chunk results
// combine in chunk order — the outcome is independent of thread count
// and scheduling.
template <class Acc, class ChunkFn, class Combine>
Acc parallel_reduce(std::int64_t begin, std::int64_t end, std::int64_t chunk_size, int threads,
                    ChunkFn chunk_fn, Combine combine, Acc init) {
    if (end <= begin) return init;
    const std::int64_t n_chunks = (end - begin + chunk_size - 1) / chunk_size;
    std::vector<Acc> results(static_cast<std::size_t>(n_chunks));
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) return;
            const std::int64_t lo = begin + c * chunk_size;
            const std::int64_t hi = std::min(end, lo + chunk_size);
            results[static_cast<std::size_t>(c)] = chunk_fn(lo, hi);
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    Acc acc = std::move(init);
    for (auto& r : results) acc = combine(std::move(acc), std::move(r));
    return acc;
}

}  // namespace parcov
