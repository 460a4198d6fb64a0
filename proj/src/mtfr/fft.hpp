/* Copyright (C) 2026 The mtfr Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace mtfr {

// Unnormalized in-place DFT of n contiguous samples; sign -1 forward, +1 inverse.
// Thread-safe: plans are created under a lock and executed with the new-array interface.
void dft_inplace(std::complex<double>* data, std::size_t n, bool inverse);

// Unnormalized DFT along one axis of a row-major array with the given shape.
void dft_axis(std::complex<double>* data, const std::vector<std::size_t>& shape, int axis, bool inverse);

// Number of worker threads: hardware concurrency capped by MTFR_THREADS.
unsigned thread_count();

// Calls fn(begin, end) on disjoint chunks covering [0, n); chunking is independent of timing.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mtfr
