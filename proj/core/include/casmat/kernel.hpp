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
#include <span>
#include <vector>

#include "casmat/measure.hpp"

namespace casmat {

// A complex function on node pairs, the discretized element of C(X x X).
// Entries are stored row-major: (x, y) lives at x * n + y.
class Kernel {
 public:
  // Zero kernel over `space`.
  explicit Kernel(MeasureSpace space);
  // Throws Error on a size mismatch or a non-finite entry.
  Kernel(MeasureSpace space, std::vector<Complex> entries);

  static Kernel constant(const MeasureSpace& space, Complex value);
  // J, the constant-one kernel.
  static Kernel ones(const MeasureSpace& space) { return constant(space, 1.0); }
  // Indicator of the diagonal.
  static Kernel diagonal(const MeasureSpace& space);
  static Kernel from_function(const MeasureSpace& space,
                              const std::function<Complex(std::size_t, std::size_t)>& fn);

  std::size_t size() const noexcept { return n_; }
  const MeasureSpace& space() const noexcept { return space_; }

  Complex operator()(std::size_t x, std::size_t y) const { return entries_[x * n_ + y]; }
  Complex& operator()(std::size_t x, std::size_t y) { return entries_[x * n_ + y]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> row(std::size_t x) const { return {entries_.data() + x * n_, n_}; }

  Kernel& operator+=(const Kernel& other);
  Kernel& operator-=(const Kernel& other);
  Kernel& operator*=(Complex scale);

  friend Kernel operator+(Kernel a, const Kernel& b) { return a += b; }
  friend Kernel operator-(Kernel a, const Kernel& b) { return a -= b; }
  friend Kernel operator*(Complex s, Kernel a) { return a *= s; }

 private:
  MeasureSpace space_;
  std::size_t n_;
  std::vector<Complex> entries_;
};

// (A ∘ B)(x, z) = Σ_y w_y A(x, y) B(y, z), accumulated in long double with a
// fixed y order so that transpose and conjugation commute with it exactly.
Kernel matmul(const Kernel& a, const Kernel& b);

Kernel hadamard(const Kernel& a, const Kernel& b);
Kernel transpose(const Kernel& a);
Kernel conjugate(const Kernel& a);
double sup_norm(const Kernel& a);
// sup |A - B| without materializing the difference.
double sup_distance(const Kernel& a, const Kernel& b);

// x ↦ Σ_y w_y A(x, y); equals any column of A ∘ J.
std::vector<Complex> row_integrals(const Kernel& a);

struct IdentityReport {
  // [member][probe] residuals ‖I_N ∘ A − A‖_∞ and ‖A ∘ I_N − A‖_∞.
  std::vector<std::vector<double>> left;
  std::vector<std::vector<double>> right;
  // Per probe: both residual sequences non-increasing along the family.
  std::vector<bool> non_increasing;
  // Per probe: both residual sequences strictly decreasing.
  std::vector<bool> strictly_decreasing;
  double tolerance = 0.0;
  double final_max_residual = 0.0;
  bool final_below_tolerance = false;

  bool all_non_increasing() const;
};

// Residual table for a candidate approximate identity family (ordered coarse
// to fine) against a set of probe kernels.
IdentityReport check_approximate_identity(std::span<const Kernel> family,
                                          std::span<const Kernel> probes,
                                          const MeasureSpace& space, double tolerance);

void require_same_space(const Kernel& a, const Kernel& b);
void require_same_space(const Kernel& a, const MeasureSpace& space);

}  // namespace casmat
