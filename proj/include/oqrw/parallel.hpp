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

#include <cstddef>
#include <functional>

namespace oqrw {

/// Worker count: OQRW_THREADS if set and positive, else hardware concurrency.
std::size_t thread_budget();

/// Splits [0, count) into contiguous chunks and runs `body(begin, end)` on
/// each. Chunks write disjoint outputs, so results do not depend on the
/// number of workers. Runs inline when `count < min_parallel` or the budget
/// is one thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_parallel = 64);

}  // namespace oqrw
