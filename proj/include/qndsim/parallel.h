// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QNDSIM_PARALLEL_H
#define QNDSIM_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qndsim {

inline int resolve_workers(int workers) {
    if (workers > 0) {
        return workers;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(k) for k in [0, n) on up to `workers` threads. Work items are claimed
/// dynamically, so body must write only to slot k of its outputs. The first exception
/// thrown by any item is rethrown after all threads join.
template <typename Body>
void parallel_for(size_t n, int workers, Body body) {
    size_t threads = std::min<size_t>(resolve_workers(workers), n);
    if (threads <= 1) {
        for (size_t k = 0; k < n; k++) {
            body(k);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (size_t k = next++; k < n; k = next++) {
            try {
                body(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (size_t t = 0; t < threads; t++) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace qndsim

#endif
