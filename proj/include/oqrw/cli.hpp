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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oqrw/qop.hpp"

namespace oqrw {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// "a,b" (diag(a, b)), "mixed", "plus" or "minus". Throws ValidationError.
DensityMat parse_state(std::string_view text);

/// Runs the `oqrw` tool. `args` excludes the program name. Returns the
/// process exit code: 0 ok, 2 bad input, 3 numerical guard tripped.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oqrw
