// Copyright 2026 The pulsefid Authors
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

#ifndef PULSEFID_PARALLEL_H
#define PULSEFID_PARALLEL_H

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace pulsefid {

/// Worker count to use when the caller passes 0.
inline unsigned default_workers() {
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, n) on `workers` threads and returns the
/// results indexed by i. Each worker owns one contiguous block of indices
/// and writes only its own slots, so the output does not depend on the
/// worker count or on scheduling. The first exception thrown by any worker
/// is rethrown on the calling thread.
template <typename Fn>
std::vector<double> map_samples(uint64_t n, unsigned workers, Fn &&fn) {
    std::vector<double> out(n);
    if (workers == 0) {
        workers = default_workers();
    }
    uint64_t used = std::min<uint64_t>(workers, std::max<uint64_t>(n, 1));
    if (used <= 1) {
        for (uint64_t i = 0; i < n; i++) {
            out[i] = fn(i);
        }
        return out;
    }
    std::vector<std::exception_ptr> errors(used);
    {
        std::vector<std::jthread> threads;
        threads.reserve(used);
        for (uint64_t w = 0; w < used; w++) {
            uint64_t begin = n * w / used;
            uint64_t end = n * (w + 1) / used;
            threads.emplace_back([&, w, begin, end] {
                try {
                    for (uint64_t i = begin; i < end; i++) {
                        out[i] = fn(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

}  // namespace pulsefid

#endif
