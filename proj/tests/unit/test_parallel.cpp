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

#include <atomic>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"

using namespace casmat;

TEST_SUITE("parallel") {
  TEST_CASE("parallel_for covers the range exactly once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(0, hits.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) hits[i]++;
    });
    for (const auto& h : hits) CHECK(h.load() == 1);
    parallel_for(5, 5, [](std::size_t, std::size_t) { FAIL("empty range"); });
    CHECK(thread_count() >= 1);
  }

  TEST_CASE("exceptions propagate") {
    CHECK_THROWS_AS(parallel_for(0, 100, [](std::size_t lo, std::size_t) {
                      if (lo == 0) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
  }
}
