// Copyright 2026 The extremap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON serialization of superoperators, certificates and classification
// reports. Complex numbers are [re, im] pairs; matrices are arrays of rows.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "extremap/structure.hpp"

namespace extremap::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

json to_json(cdouble z);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
cdouble complex_from_json(const json& j, const std::string& field);
CVector vector_from_json(const json& j, const std::string& field);
CMatrix matrix_from_json(const json& j, const std::string& field);

// Throws ParseError with line and column for malformed JSON and with the
// offending field for schema violations.
Superoperator parse_superoperator(std::string_view text);
Superoperator load_superoperator(const std::string& path);
json superoperator_to_json(const Superoperator& psi);
Superoperator superoperator_from_json(const json& doc);

json to_json(const BlockCertificate& cert);
BlockCertificate certificate_from_json(const json& j, const std::string& field = "certificate");
json to_json(const Witness& w);
json to_json(const BlockVerdict& v);
json to_json(const GlobalCertificate& cert);
json to_json(const PureWitness& w);

json extremal_report(const GlobalClassification& c, double tol, std::uint64_t seed);
json pure_report(const PureClassification& c, double tol, std::uint64_t seed);
json jordan_report(const JordanReport& r, double tol, std::uint64_t seed);

// Rebuilds every certified output block of a report and returns the largest
// gap between the recomputed and the stated residual.
double replay_report(const Superoperator& psi, const json& report);

}  // namespace extremap::io
