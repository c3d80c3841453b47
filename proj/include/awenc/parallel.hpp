#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace awenc::num {

/// Worker cap: AWENC_THREADS when set (min 1), else hardware concurrency.
std::size_t max_threads();

/// Runs fn(begin, end) over disjoint chunks of [0, n), possibly on several
/// threads. Chunks write to disjoint output slots; results do not depend on
/// the thread count.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

/// Pairwise (tree) summation: deterministic regardless of how the terms
/// were produced.
double pairwise_sum(std::span<const double> v);

}  // namespace awenc::num
