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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "casmat/error.hpp"
#include "casmat/scheme.hpp"

namespace casmat {

struct KappaEntry {
  std::size_t node = 0;
  double mass = 0.0;
};

// Markov kernel κ(x, i) on a scheme's nodes together with the Haar weights
// μ_I on labels.
class HypergroupData {
 public:
  // kappa is indexed by x * label_count + i. Throws Error unless every κ(x,i)
  // is a probability vector supported on {y : R(x,y) = i}, κ(x, i_0) = δ_x,
  // and haar_weights are positive and involution invariant.
  HypergroupData(Scheme scheme, std::vector<std::vector<KappaEntry>> kappa,
                 std::vector<double> haar_weights);

  const Scheme& scheme() const noexcept { return scheme_; }
  std::size_t label_count() const noexcept { return scheme_.label_count(); }
  Label transpose(Label i) const { return scheme_.labels().transpose(i); }
  Label identity() const { return *scheme_.labels().identity(); }

  std::span<const KappaEntry> kappa(std::size_t x, Label i) const {
    return kappa_[x * label_count() + i];
  }
  std::span<const double> haar_weights() const noexcept { return haar_; }
  double haar_total() const noexcept;

 private:
  Scheme scheme_;
  std::vector<std::vector<KappaEntry>> kappa_;
  std::vector<double> haar_;
};

// κ(x, i) = μ_X restricted to the row fiber and normalized; μ_I({i}) is the
// row-fiber mass (the valency under counting measure). Throws Error if some
// row fiber is empty or row masses vary across x by more than tolerance.
HypergroupData kernel_of_scheme(const Scheme& scheme, double tolerance = 1e-9);

class ConvolutionError : public Error {
 public:
  ConvolutionError(Label i, Label j, double spread, const std::string& what)
      : Error(what), i_(i), j_(j), spread_(spread) {}
  Label left() const noexcept { return i_; }
  Label right() const noexcept { return j_; }
  double spread() const noexcept { return spread_; }

 private:
  Label i_, j_;
  double spread_;
};

struct PointMassConvolution {
  // Probability weights over labels.
  std::vector<double> measure;
  // max sup-distance between representatives' measures.
  double spread = 0.0;
  std::size_t representatives = 0;
};

// δ_i * δ_j as the pushforward of κ(z, j) under y ↦ R(x, y), averaged over
// up to 8 representatives (x, z) of the i fiber. Throws ConvolutionError if
// the representatives disagree by more than tolerance.
PointMassConvolution convolve_point_masses(const HypergroupData& hg, Label i, Label j,
                                           double tolerance = 1e-9);

// Full table: table[(i * L + j) * L + k] = (δ_i * δ_j)({k}).
struct ConvolutionTable {
  std::size_t labels = 0;
  std::vector<double> table;
  double max_spread = 0.0;

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return table[(i * labels + j) * labels + k];
  }
};

ConvolutionTable convolution_table(const HypergroupData& hg, double tolerance = 1e-9);

// (f * g)(i) = Σ_{i'} μ_I(i') · ∫ f d(δ_i * δ_{i'}) · g(i'^⊤).
std::vector<Complex> convolve_functions(const HypergroupData& hg, std::span<const Complex> f,
                                        std::span<const Complex> g, double tolerance = 1e-9);
std::vector<Complex> convolve_functions(const ConvolutionTable& table, const HypergroupData& hg,
                                        std::span<const Complex> f, std::span<const Complex> g);

struct LabelFunctionPair {
  std::vector<Complex> f;
  std::vector<Complex> g;
};

std::vector<LabelFunctionPair> random_label_function_pairs(std::size_t labels, std::size_t count,
                                                           std::uint64_t seed);
std::vector<std::vector<Complex>> random_node_functions(std::size_t nodes, std::size_t count,
                                                        std::uint64_t seed);

struct HypergroupOptions {
  double tolerance = 1e-12;
  // Gates the commutativity residual; the residual is reported either way.
  bool declared_commutative = false;
};

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool gating = true;
  std::size_t samples = 0;

  bool ok() const noexcept { return residual <= tolerance; }
};

struct HypergroupReport {
  std::vector<IdentityResidual> residuals;
  std::vector<double> haar_weights;
  // μ_I(I); the normalization is reported, not asserted.
  double haar_total = 0.0;
  // CAS4 deviation of the underlying scheme over singletons.
  double scheme_cas4_deviation = 0.0;

  const IdentityResidual* find(const std::string& name) const;
  bool passed() const noexcept;
};

// Residual names: "pullback_convolution", "T1", "T2", "anti_automorphism",
// "convolution_identity", "commutativity".
HypergroupReport verify_strong_cas(const HypergroupData& hg, std::span<const LabelFunctionPair> probes,
                                   std::span<const std::vector<Complex>> test_functions,
                                   const HypergroupOptions& options = {});

}  // namespace casmat
