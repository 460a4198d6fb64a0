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

#include <cstdint>
#include <random>

#include "mtfr/linalg.hpp"

namespace mtfr {

using Rng = std::mt19937_64;

RMat random_real(int rows, int cols, Rng& rng, double lo = -1.0, double hi = 1.0);
RMat random_symmetric(int n, Rng& rng, double scale = 1.0);
RMat random_orthogonal(int n, Rng& rng);
// Haar-distributed unitary via QR of a complex Ginibre matrix.
CMat random_unitary(int n, Rng& rng);
// Symmetric positive definite with eigenvalues in [lo, hi].
RMat random_spd(int n, Rng& rng, double lo, double hi);

}  // namespace mtfr
