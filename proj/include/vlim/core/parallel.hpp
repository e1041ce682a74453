#pragma once
#include <cstdint>
#include <functional>
#include <vector>

namespace vlim {

// Worker count: VLIM_THREADS if set (>=1), else hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0,n). Work is split into fixed-size blocks whose
// assignment to indices never depends on the worker count, so any per-index
// output is identical for 1 or N threads.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

// Block-ordered sum of term(i) over [0,n): partial sums are accumulated per
// fixed block and then reduced serially in block order. Deterministic for any
// worker count, unlike a racing atomic accumulation.
double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)>& term);

} // namespace vlim
