// Copyright 2026 The OQRW Authors
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

// Serialization of results. Matrices are row-major [[[re, im], ...], ...];
// doubles are written in shortest round-trip form.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "oqrw/distribution.hpp"
#include "oqrw/lattice.hpp"
#include "oqrw/limit.hpp"
#include "oqrw/qop.hpp"
#include "oqrw/trajectory.hpp"

namespace oqrw {

using Json = nlohmann::json;

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

Json to_json(const Mat2& m);
/// Throws ParameterError on shape or type mismatch.
Mat2 mat2_from_json(const Json& j);

/// CSV with header `x,p`, rows in increasing x.
void write_csv(std::ostream& os, const Distribution& d);
/// Throws ParameterError on a malformed header, row, or duplicate site.
Distribution read_csv(std::istream& is);

Json to_json(const Distribution& d);
Json to_json(const LatticeState& s);
Json to_json(const SampleReport& r);
Json to_json(const CltParams& c);
Json to_json(const InvariantReport& r);
Json to_json(const ComparisonReport& r);

}  // namespace oqrw
