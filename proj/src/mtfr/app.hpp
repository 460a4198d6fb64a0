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
#include <string>
#include <vector>

#include "mtfr/field_io.hpp"
#include "mtfr/serialize.hpp"

namespace mtfr {

struct RunOptions {
  Tolerances tol;
  std::uint64_t seed = 0;
  int tau_scan = 64;
};

// "256@16", "256x128@16" (also accepts the multiplication sign); one count repeats over all axes.
struct GridSpec {
  std::vector<std::size_t> points;
  double extent = 0.0;
  std::vector<Axis> axes(int dims) const;
};
GridSpec parse_grid_spec(const std::string& spec);

// Pre-Iwasawa factors, generator word and reconstruction errors.
Json run_factor(const SymplecticMatrix& m, const RunOptions& opt);

struct VerifyResult {
  Json report;
  bool pass = false;
};

// Seeded random Gaussians f, g and points in the ball of radius `radius`.
VerifyResult run_verify_gaussians(const Certificate& cert, std::size_t points, double radius, const RunOptions& opt);
// Both sides on the grid at `points` seeded grid points where |W| >= 1e-3 of its peak.
VerifyResult run_verify_fields(const Certificate& cert, const SampledField& f, const SampledField& g,
                               std::size_t points, const RunOptions& opt);

struct CounterexampleResult {
  Counterexample ce;
  SampledField tfr;
  double mass_outside = 0.0;
  Json report;
};

CounterexampleResult run_counterexample(const Certificate& cert, const Axis& axis, const RunOptions& opt);

// kind: beurling | hardy | gs | nazarov; params are validated and unknown keys rejected.
Json run_check(const std::string& kind, const Json& params, const RunOptions& opt);

}  // namespace mtfr
