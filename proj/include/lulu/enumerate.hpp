#pragma once

// Exhaustive 0/1-assignment counting shared by the distribution and event
// calculus modules. The assignment space is split into disjoint index blocks;
// blocks may be evaluated on worker threads, and the per-block tallies are
// summed in block order, so the result is identical regardless of thread
// count.

#include <atomic>
#include <bit>
#include <cstdint>
#include <thread>
#include <vector>

namespace lulu::detail {

// counts[j] = number of masks m in [0, 2^width) with popcount j and pred(m).
template <class Pred>
std::vector<std::uint64_t> counts_by_popcount(int width, const Pred& pred) {
    const std::uint64_t total = 1ull << width;
    const int block_bits = width > 20 ? width - 6 : width;  // 64 blocks when large
    const std::uint64_t block = 1ull << block_bits;
    const std::size_t nblocks = static_cast<std::size_t>(total >> block_bits);

    std::vector<std::vector<std::uint64_t>> partial(
        nblocks, std::vector<std::uint64_t>(static_cast<std::size_t>(width) + 1, 0));

    auto run_block = [&](std::size_t b) {
        auto& counts = partial[b];
        const std::uint64_t lo = b * block, hi = lo + block;
        for (std::uint64_t m = lo; m < hi; ++m)
            if (pred(m)) ++counts[static_cast<std::size_t>(std::popcount(m))];
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (nblocks == 1 || hw <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        const std::size_t nthreads = std::min<std::size_t>(hw, 4);
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
                    run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(width) + 1, 0);
    for (const auto& p : partial)
        for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += p[j];
    return counts;
}

} // namespace lulu::detail
