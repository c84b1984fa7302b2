// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_PARALLEL_HPP
#define ETASCAN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace etascan {

/// Sets the worker-thread count for parallel_for_index. 0 restores the
/// hardware default. Thread count never changes results: tasks write to
/// index-addressed slots and callers merge in index order.
void set_parallelism(unsigned threads);

unsigned effective_parallelism();

/// Invokes fn(i) for every i in [0, n), possibly from several threads.
/// fn must only write to state owned by index i. The first exception thrown
/// by any task is rethrown on the calling thread after all tasks finish.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace etascan

#endif  // ETASCAN_PARALLEL_HPP
