// Copyright 2026 The casmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace casmat {

// Worker count: CASMAT_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

// Splits [begin, end) into contiguous chunks and runs body(chunk_begin,
// chunk_end) on up to thread_count() threads. Chunks never overlap, so
// bodies writing to disjoint outputs stay deterministic.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace casmat
