#include "vlim/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace vlim {

namespace {
constexpr std::int64_t kBlock = 4096;
}

int thread_count() {
    if (const char* env = std::getenv("VLIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return int(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    const int nt = std::min<std::int64_t>(thread_count(), (n + kBlock - 1) / kBlock);
    if (nt <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t b = next.fetch_add(1);
            const std::int64_t lo = b * kBlock;
            if (lo >= n) return;
            const std::int64_t hi = std::min(n, lo + kBlock);
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)>& term) {
    if (n <= 0) return 0.0;
    const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(std::size_t(nblocks), 0.0);
    parallel_for(nblocks, [&](std::int64_t b) {
        const std::int64_t lo = b * kBlock;
        const std::int64_t hi = std::min(n, lo + kBlock);
        double acc = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
        partial[std::size_t(b)] = acc;
    });
    double total = 0.0;
    for (double p : partial) total += p;  // serial, block order
    return total;
}

} // namespace vlim
