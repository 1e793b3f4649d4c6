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

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "casmat/bma.hpp"

namespace casmat {

// Least-squares coefficients against a kernel family. Disjoint 0/1 indicator
// families are projected by cell averages; anything else goes through a
// column-pivoted QR of the flattened family.
class SpanProjector {
 public:
  // Throws Error naming dependent members when the family is rank deficient.
  explicit SpanProjector(std::span<const Kernel> basis);
  ~SpanProjector();

  std::vector<Complex> coefficients(const Kernel& target) const;

  const std::optional<std::vector<Label>>& partition() const noexcept { return partition_; }

 private:
  struct Dense;
  std::size_t members_ = 0;
  std::optional<std::vector<Label>> partition_;
  std::vector<std::size_t> cell_sizes_;
  std::unique_ptr<Dense> dense_;
};

}  // namespace casmat
