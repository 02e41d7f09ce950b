// Copyright 2026 The hlpe Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace hlpe::kernels {

/// Reference loop: calls fn(i) for i = 0..n-1 in order.
template <class Fn>
void for_each_serial(std::size_t n, Fn&& fn) {
    for (std::size_t i = 0; i < n; ++i) {
        fn(i);
    }
}

/// Same iteration space under OpenMP. fn(i) must only write state owned by
/// index i. The first exception thrown by any worker is rethrown here.
template <class Fn>
void for_each_parallel(std::size_t n, Fn&& fn) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace hlpe::kernels
