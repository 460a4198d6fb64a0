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

#include <json.hpp>

#include "mtfr/certify.hpp"
#include "mtfr/upcheck.hpp"

namespace mtfr {

using Json = nlohmann::json;

// Parses text; malformed input throws InvalidInput with the parser message.
Json parse_json(const std::string& text);
// Two-space indented dump; floats use the shortest representation that round-trips.
std::string dump_json(const Json& j);

// {"n": rows, "rows": [[...], ...]}.
Json real_matrix_to_json(const RMat& m);
RMat real_matrix_from_json(const Json& j);
// {"n": half-dimension, "rows": 2n x 2n}.
Json symplectic_to_json(const SymplecticMatrix& m);
SymplecticMatrix symplectic_from_json(const Json& j, const Tolerances& tol = {});
// {"n": rows, "re": [[...]], "im": [[...]]}.
Json complex_matrix_to_json(const CMat& m);
CMat complex_matrix_from_json(const Json& j);
Json complex_to_json(cd z);
cd complex_from_json(const Json& j);

Json letter_to_json(const Letter& l);
Letter letter_from_json(const Json& j, int n);
Json word_to_json(const GeneratorWord& w);
GeneratorWord word_from_json(const Json& j, int n);

// {"n", "M_re", "M_im", "b_re", "b_im", "logamp"}.
Json gaussian_to_json(const GeneralizedGaussian& g);
GeneralizedGaussian gaussian_from_json(const Json& j);

Json pre_iwasawa_to_json(const PreIwasawa& p);
PreIwasawa pre_iwasawa_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json identity_report_to_json(const IdentityReport& r);
Json report_to_json(const UPReport& r);
// Columns R, value, ratio.
std::string sweep_csv(const Sweep& s);
Json hardy_fit_to_json(const HardyFit& f);
Json shape_to_json(const Shape& s);
Shape shape_from_json(const Json& j);
Json nazarov_report_to_json(const NazarovReport& r);
Json nazarov_stages_to_json(const NazarovStages& s);
Json cross_section_to_json(const CrossSectionReport& r);

}  // namespace mtfr
