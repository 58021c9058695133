// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>

namespace nudf {

// Parallelism cap. 0 = hardware concurrency. Settable via NUDF_THREADS or --threads.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, n). Work is split into fixed-size chunks whose layout
// does not depend on the thread count, and each index writes only its own slot,
// so results are identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Chunked variant: fn(begin, end) over disjoint ranges.
void parallel_chunks(std::size_t n, std::size_t chunk, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace nudf
