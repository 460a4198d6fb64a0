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

#include <string>
#include <vector>

#include "mtfr/grid.hpp"

namespace mtfr {

// Little-endian: "MTFR", version u32, n u32, per axis (points u64, extent f64), then (re, im) f64 pairs.
std::string encode_field(const SampledField& f);
SampledField decode_field(const std::string& bytes, const GridConfig& cfg = {});

// Writes to a temporary file next to path and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

void write_field(const std::string& path, const SampledField& f);
SampledField read_field(const std::string& path, const GridConfig& cfg = {});

// Columns t0[, t1], re, im, abs for 1-D and 2-D fields.
std::string field_csv(const SampledField& f);
// 2-D slice through axes a and b with the remaining indices fixed (entries for a and b are ignored).
SampledField field_slice(const SampledField& f, int a, int b, const std::vector<std::size_t>& fixed);

}  // namespace mtfr
