// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace twlp {

// Worker count: TWLP_THREADS env var, else hardware concurrency.
int thread_count();

// Override (1 for deterministic single-thread runs); 0 restores the default.
void set_thread_count(int n);

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; every
// reduction built on top stores per-index partials and folds them in index
// order, so results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace twlp
