// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace edgediff::detail {

/// Runs fn(index, worker) for index in [0, count). Indices are dealt
/// round-robin so the index -> worker assignment depends only on `workers`.
/// The first exception thrown by any worker is rethrown on the caller.
template<class Fn>
void parallel_for(int count, int workers, Fn&& fn)
{
    workers = std::clamp(workers, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            fn(i, 0);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < count; i += workers)
                        fn(i, w);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            });
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace edgediff::detail
