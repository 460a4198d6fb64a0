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
#include "mtfr/random.hpp"

namespace mtfr {

RMat random_real(int rows, int cols, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  RMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

RMat random_symmetric(int n, Rng& rng, double scale) {
  RMat a = random_real(n, n, rng, -scale, scale);
  return 0.5 * (a + a.transpose());
}

RMat random_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> g;
  RMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<RMat> qr(a);
  RMat q = qr.householderQ();
  RMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

CMat random_unitary(int n, Rng& rng) {
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    double m = std::abs(r(j, j));
    if (m > 0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

RMat random_spd(int n, Rng& rng, double lo, double hi) {
  RMat o = random_orthogonal(n, rng);
  std::uniform_real_distribution<double> u(lo, hi);
  RVec ev(n);
  for (int i = 0; i < n; ++i) ev(i) = u(rng);
  RMat s = o * ev.asDiagonal() * o.transpose();
  return (0.5 * (s + s.transpose())).eval();
}

}  // namespace mtfr
