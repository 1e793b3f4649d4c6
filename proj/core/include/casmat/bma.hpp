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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casmat/kernel.hpp"
#include "casmat/scheme.hpp"

namespace casmat {

class SpanProjector;

struct SpanProjection {
  std::vector<Complex> coefficients;
  // ‖target - Σ c_i A_i‖_∞
  double residual = 0.0;
};

inline constexpr double kDefaultClosureTolerance = 1e-9;

// A candidate Bose–Mesner algebra given by a linearly independent spanning
// family. Construction rejects families that are not a unital •-closed and
// conjugate-closed subspace within closure_tolerance.
class AlgebraBasis {
 public:
  explicit AlgebraBasis(std::vector<Kernel> basis,
                        double closure_tolerance = kDefaultClosureTolerance);

  const MeasureSpace& space() const noexcept { return basis_.front().space(); }
  std::span<const Kernel> members() const noexcept { return basis_; }
  const Kernel& member(std::size_t i) const { return basis_[i]; }
  std::size_t size() const noexcept { return basis_.size(); }
  bool contains_J() const noexcept { return contains_j_; }
  double closure_tolerance() const noexcept { return closure_tolerance_; }

  // Least-squares expansion in the basis.
  SpanProjection project(const Kernel& target) const;
  // residual <= closure_tolerance * (1 + ‖target‖_∞)
  bool in_span(const Kernel& target) const;
  bool in_span(const Kernel& target, double tolerance) const;

  // When every member is a 0/1 indicator with pairwise disjoint supports,
  // the member index of each pair (kNoLabel where no member is 1).
  const std::optional<std::vector<Label>>& indicator_partition() const noexcept {
    return partition_;
  }

 private:
  std::vector<Kernel> basis_;
  double closure_tolerance_;
  bool contains_j_ = false;
  std::optional<std::vector<Label>> partition_;
  std::shared_ptr<const SpanProjector> projector_;
};

struct StructureConstants {
  std::size_t dim = 0;
  // tensor[(i * dim + j) * dim + k]: coefficient of A_k in A_i ∘ A_j.
  std::vector<Complex> tensor;
  // max sup-norm expansion error over all products.
  double residual = 0.0;
  // max ‖A_i ∘ A_j - A_j ∘ A_i‖_∞, computed from the same products.
  double commutator = 0.0;

  Complex operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return tensor[(i * dim + j) * dim + k];
  }
};

StructureConstants structure_constants(const AlgebraBasis& algebra);

struct BmaReport {
  double tolerance = 0.0;
  std::string probe_policy;
  IdentityReport bma1a;
  double bma1b_deviation = 0.0;
  double bma2_residual = 0.0;
  double bma3_residual = 0.0;
  bool bma3_ok = false;
  double commutative_residual = 0.0;
  bool commutative = false;
  double symmetric_residual = 0.0;
  bool symmetric_ok = false;

  bool bma1a_ok() const noexcept { return bma1a.final_below_tolerance; }
  bool bma1b_ok() const noexcept { return bma1b_deviation <= tolerance; }
  bool bma2_ok() const noexcept { return bma2_residual <= tolerance; }
  // BMA1-BMA3; BMA4/BMA5 are properties.
  bool passed() const noexcept { return bma1a_ok() && bma1b_ok() && bma2_ok() && bma3_ok; }
};

// Throws Error if an identity_family member lies outside the span.
BmaReport verify_bma(const AlgebraBasis& algebra, std::span<const Kernel> identity_family,
                     std::span<const Kernel> probes, double tolerance);

// I_N = μ(X) / (2 ∫ R^*h dμ⊗μ) · (R^*h + (R^*h)^⊤) with R^*h(x,y) = bump[R(x,y)].
// Throws Error if bump(i_0) != 1, the bump leaves the neighborhood, the
// normalizer vanishes, or some row fails to integrate to 1 within 1e-10.
Kernel build_approximate_identity(const Scheme& scheme, const LabelSet& neighborhood,
                                  std::span<const double> bump);

// Labels carrying positive bump weight.
LabelSet bump_support(std::span<const double> bump);

}  // namespace casmat
