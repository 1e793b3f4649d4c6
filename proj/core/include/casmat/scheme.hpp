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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "casmat/measure.hpp"

namespace casmat {

using Label = std::uint32_t;
inline constexpr Label kNoLabel = std::numeric_limits<Label>::max();

using NodePair = std::pair<std::size_t, std::size_t>;

// Interval of a continuum quantity (angle, inner product, squared distance)
// that a label was binned from. Informational; the relation table is the
// source of truth.
struct BinInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_lo = true;
  bool closed_hi = false;

  double midpoint() const noexcept { return 0.5 * (lo + hi); }

  friend bool operator==(const BinInterval&, const BinInterval&) = default;
};

// The label space I: labels are 0..size()-1 with an involution i ↦ i^⊤ and an
// optional identity label i_0.
class LabelSpace {
 public:
  // Throws Error unless the involution is a bijective involution that fixes
  // the identity label and the bins are pairwise disjoint.
  LabelSpace(std::vector<Label> involution, std::optional<Label> identity,
             std::vector<std::optional<BinInterval>> bins = {});

  // `count` labels with the identity involution.
  static LabelSpace symmetric(std::size_t count, std::optional<Label> identity);

  std::size_t size() const noexcept { return involution_.size(); }
  Label transpose(Label i) const { return involution_[i]; }
  std::span<const Label> involution() const noexcept { return involution_; }
  std::optional<Label> identity() const noexcept { return identity_; }
  bool has_bins() const noexcept { return !bins_.empty(); }
  const std::optional<BinInterval>& bin(Label i) const { return bins_[i]; }
  std::span<const std::optional<BinInterval>> bins() const noexcept { return bins_; }

  // i^⊤ = i for every label.
  bool involution_is_identity() const noexcept;

  friend bool operator==(const LabelSpace&, const LabelSpace&) = default;

 private:
  std::vector<Label> involution_;
  std::optional<Label> identity_;
  std::vector<std::optional<BinInterval>> bins_;
};

// Quotient map R: X x X -> I discretized as a label table over node pairs.
// The constructor checks shapes and label ranges only; the axioms are the
// business of verify_cas so that broken inputs can be reported rather than
// refused.
class Scheme {
 public:
  Scheme(MeasureSpace space, LabelSpace labels, std::vector<Label> relation);

  const MeasureSpace& space() const noexcept { return space_; }
  const LabelSpace& labels() const noexcept { return labels_; }
  std::size_t node_count() const noexcept { return space_.size(); }
  std::size_t label_count() const noexcept { return labels_.size(); }

  Label operator()(std::size_t x, std::size_t y) const { return relation_[x * node_count() + y]; }
  std::span<const Label> relation() const noexcept { return relation_; }
  std::span<const Label> row(std::size_t x) const {
    return {relation_.data() + x * node_count(), node_count()};
  }

 private:
  MeasureSpace space_;
  LabelSpace labels_;
  std::vector<Label> relation_;
};

// A subset of labels, used as a generating "Borel set" W.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::size_t label_count) : mask_(label_count, 0) {}
  LabelSet(std::size_t label_count, std::initializer_list<Label> members);

  static LabelSet singleton(std::size_t label_count, Label i);
  static LabelSet all(std::size_t label_count);

  std::size_t universe() const noexcept { return mask_.size(); }
  bool contains(Label i) const { return i < mask_.size() && mask_[i] != 0; }
  void insert(Label i) { mask_.at(i) = 1; }
  std::vector<Label> members() const;
  bool empty() const;

  // Image under the label involution.
  LabelSet transposed(const LabelSpace& labels) const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<unsigned char> mask_;
};

struct BorelFamily {
  std::string descriptor;
  std::vector<LabelSet> sets;

  static BorelFamily singletons(std::size_t label_count);
  // Singletons plus every two-element set.
  static BorelFamily pairs(std::size_t label_count);
};

// All pairs with R(x, y) = i, row-major. Throws Error for an unknown label or
// an empty fiber (R not surjective).
std::vector<NodePair> fiber(const Scheme& scheme, Label i);

// Joint profile of a single pair: H[a * L + b] = Σ_y w_y [R(x,y)=a][R(y,z)=b].
std::vector<double> intersection_profile(const Scheme& scheme, std::size_t x, std::size_t z);

// Row masses V[x * L + i] = μ({y : R(x, y) = i}).
std::vector<double> row_masses(const Scheme& scheme);

struct IntersectionNumber {
  double value = 0.0;      // mean over the fiber of k
  double deviation = 0.0;  // max - min over the fiber of k
};

// p_{W,W'}^k evaluated at every pair of the k fiber. Throws Error on an empty
// fiber or label-universe mismatch.
IntersectionNumber intersection_number(const Scheme& scheme, const LabelSet& w,
                                       const LabelSet& w_prime, Label k);

inline constexpr std::uint64_t kDefaultSeed = 0x00C0FFEE5EEDULL;

struct CasOptions {
  // Absolute tolerance in units of μ_X.
  double tolerance = 0.0;
  // Off-diagonal pairs allowed in the identity fiber.
  std::size_t diagonal_slack = 0;
  // 0 examines every pair of every fiber; otherwise each fiber is sampled
  // (seeded) and each sampled pair's transpose is examined too.
  std::size_t max_pairs_per_label = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_witnesses = 8;
};

struct Witness {
  std::string check;
  std::vector<NodePair> pairs;
  std::string detail;
};

struct CasReport {
  double tolerance = 0.0;
  std::string borel_family_descriptor;
  std::size_t pairs_examined = 0;
  bool sampled = false;

  bool surjective = true;
  std::vector<Label> missing_labels;

  bool cas1_ok = false;
  std::size_t offdiagonal_in_identity_fiber = 0;
  bool cas3_ok = false;

  double cas2_max_deviation = 0.0;
  // cas2_max_deviation / μ_X(X).
  double cas2_relative_deviation = 0.0;
  bool cas2_ok = false;

  double cas4_max_deviation = 0.0;
  // max |p_{W,W'}^k - p_{W'^⊤,W^⊤}^{k^⊤}|.
  double transpose_identity_deviation = 0.0;
  // max_{x,i} |μ(row_x(i)) μ(X) - (μ⊗μ)(R^{-1}(i))|.
  double pushforward_deviation = 0.0;
  bool pushforward_ok = false;
  // max_i (max_x - min_x) μ(row_x(i)).
  double row_valency_deviation = 0.0;

  bool symmetric = false;
  bool commutative = false;

  std::vector<Witness> witnesses;

  // Axioms CAS1-CAS3 hold; commutativity and symmetry are properties, not
  // requirements.
  bool passed() const noexcept;
};

CasReport verify_cas(const Scheme& scheme, const BorelFamily& family, const CasOptions& options = {});

}  // namespace casmat
