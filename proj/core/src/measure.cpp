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

#include "casmat/measure.hpp"

#include <cmath>
#include <string>

#include "casmat/error.hpp"

namespace casmat {

MeasureSpace MeasureSpace::make_quadrature(std::vector<double> weights, Coordinates coordinates) {
  if (weights.empty()) throw Error("quadrature needs at least one node");
  long double total = 0.0L;
  bool counting = true;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw Error("quadrature weight " + std::to_string(i) + " is not strictly positive and finite");
    }
    counting = counting && w == 1.0;
    total += w;
  }
  if (!coordinates.empty() && coordinates.values.size() != coordinates.dim * weights.size()) {
    throw Error("coordinate payload does not match node count");
  }
  auto impl = std::make_shared<Impl>();
  impl->weights = std::move(weights);
  impl->coordinates = std::move(coordinates);
  impl->total_mass = static_cast<double>(total);
  impl->counting = counting;
  return MeasureSpace(std::move(impl));
}

MeasureSpace MeasureSpace::counting(std::size_t n) {
  return make_quadrature(std::vector<double>(n, 1.0));
}

Complex integrate(std::span<const Complex> f, const MeasureSpace& space) {
  if (f.size() != space.size()) throw Error("integrand length does not match node count");
  long double re = 0.0L, im = 0.0L;
  const auto w = space.weights();
  for (std::size_t y = 0; y < f.size(); ++y) {
    re += static_cast<long double>(w[y] * f[y].real());
    im += static_cast<long double>(w[y] * f[y].imag());
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

double integrate(std::span<const double> f, const MeasureSpace& space) {
  if (f.size() != space.size()) throw Error("integrand length does not match node count");
  long double acc = 0.0L;
  const auto w = space.weights();
  for (std::size_t y = 0; y < f.size(); ++y) acc += static_cast<long double>(w[y] * f[y]);
  return static_cast<double>(acc);
}

Complex product_integrate(std::span<const Complex> table, const MeasureSpace& space) {
  const std::size_t n = space.size();
  if (table.size() != n * n) throw Error("pair table is not node_count x node_count");
  const auto w = space.weights();
  long double re = 0.0L, im = 0.0L;
  for (std::size_t x = 0; x < n; ++x) {
    long double row_re = 0.0L, row_im = 0.0L;
    for (std::size_t y = 0; y < n; ++y) {
      const Complex v = table[x * n + y];
      row_re += static_cast<long double>(w[y] * v.real());
      row_im += static_cast<long double>(w[y] * v.imag());
    }
    re += static_cast<long double>(w[x]) * row_re;
    im += static_cast<long double>(w[x]) * row_im;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace casmat
