/*
 Copyright 2026 The hocbf Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef HOCBF_PARALLEL_HPP
#define HOCBF_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>

namespace hocbf {

/// Serial execution is the reference path the OpenMP kernels are tested against.
enum class Execution { serial, parallel };

/// Runs fn(i) for i in [0, n). Exceptions thrown by fn are captured inside the
/// parallel region and the one from the lowest index is rethrown afterwards.
template <typename Fn>
void parallel_for(std::size_t n, Execution exec, Fn&& fn) {
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::size_t error_index = n;
    std::mutex guard;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (static_cast<std::size_t>(i) < error_index) {
                error_index = static_cast<std::size_t>(i);
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace hocbf

#endif  // HOCBF_PARALLEL_HPP
