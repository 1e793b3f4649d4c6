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

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace casmat {

using Complex = std::complex<double>;

// Per-node point descriptors carried alongside a quadrature. Row-major,
// `dim` values per node; empty when the space has no geometry.
struct Coordinates {
  std::size_t dim = 0;
  std::vector<double> values;

  bool empty() const noexcept { return dim == 0; }
  std::span<const double> point(std::size_t node) const {
    return {values.data() + node * dim, dim};
  }
};

// A finite node set with strictly positive weights standing in for a compact
// space X with its Radon measure. Copies share the same immutable storage and
// compare equal under same_space(); two separately built quadratures never
// do, even when their weights coincide.
class MeasureSpace {
 public:
  // Throws Error naming the first non-positive or non-finite weight.
  static MeasureSpace make_quadrature(std::vector<double> weights,
                                      Coordinates coordinates = {});

  // Counting measure on n points.
  static MeasureSpace counting(std::size_t n);

  std::size_t size() const noexcept { return impl_->weights.size(); }
  std::span<const double> weights() const noexcept { return impl_->weights; }
  double weight(std::size_t node) const { return impl_->weights[node]; }
  double total_mass() const noexcept { return impl_->total_mass; }
  const Coordinates& coordinates() const noexcept { return impl_->coordinates; }

  // True when every weight is exactly 1.
  bool is_counting() const noexcept { return impl_->counting; }

  friend bool same_space(const MeasureSpace& a, const MeasureSpace& b) noexcept {
    return a.impl_ == b.impl_;
  }

 private:
  struct Impl {
    std::vector<double> weights;
    Coordinates coordinates;
    double total_mass = 0.0;
    bool counting = false;
  };

  explicit MeasureSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

// Σ_y w_y f(y).
Complex integrate(std::span<const Complex> f, const MeasureSpace& space);
double integrate(std::span<const double> f, const MeasureSpace& space);

// Σ_{x,y} w_x w_y F(x,y) for a row-major node_count x node_count table.
Complex product_integrate(std::span<const Complex> table, const MeasureSpace& space);

}  // namespace casmat
