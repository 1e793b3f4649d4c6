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
#include <optional>
#include <vector>

#include "casmat/bma.hpp"
#include "casmat/error.hpp"
#include "casmat/scheme.hpp"

namespace casmat {

// Joint level sets of an algebra's basis: the evaluation characters
// (x, y) ↦ (A ↦ A(x, y)) grouped by value.
struct CharacterPartition {
  std::size_t node_count = 0;
  // Cell id of each pair, row-major. Cells are numbered by their
  // lexicographically smallest member pair.
  std::vector<Label> cell_of_pair;
  std::size_t cell_count = 0;
  // Basis evaluations at each cell's smallest pair.
  std::vector<std::vector<Complex>> representative_values;
  std::vector<NodePair> first_pair;
  std::vector<std::size_t> cell_sizes;
};

// Exact grouping for indicator bases, tolerance-ball union-find otherwise.
CharacterPartition character_partition(const AlgebraBasis& algebra, double grouping_tolerance);

class CorrespondenceError : public Error {
 public:
  enum class Kind {
    diagonal_contaminated,  // an off-diagonal pair shares the diagonal's cell
    diagonal_split,         // diagonal pairs fall into different cells
    involution_ill_defined  // transpose does not map cells to cells
  };

  CorrespondenceError(Kind kind, NodePair witness, const std::string& what)
      : Error(what), kind_(kind), witness_(witness) {}

  Kind kind() const noexcept { return kind_; }
  NodePair witness() const noexcept { return witness_; }

 private:
  Kind kind_;
  NodePair witness_;
};

const char* to_string(CorrespondenceError::Kind kind);

// 𝔄_R: the adjacency-indicator basis {A_i}, A_i(x, y) = [R(x, y) = i].
AlgebraBasis algebra_of_scheme(const Scheme& scheme);

// R_𝔄 over the algebra's space. Labels are the character cells, the
// involution is induced by transpose and i_0 is the diagonal's cell.
Scheme scheme_of_algebra(const AlgebraBasis& algebra, double grouping_tolerance);

struct RoundtripReport {
  std::size_t original_labels = 0;
  std::size_t recovered_labels = 0;
  bool partition_match = false;
  bool involution_match = false;
  bool identity_match = false;
  // 𝔄_{R_𝔄} and 𝔄_R agree member-for-member under the bijection.
  bool algebra_match = false;
  // bijection[i] = recovered label of original label i (kNoLabel if none).
  std::vector<Label> bijection;
  std::vector<std::size_t> cell_sizes;
  std::optional<NodePair> mismatch;
  std::string failure;

  bool passed() const noexcept {
    return partition_match && involution_match && identity_match && algebra_match;
  }
};

RoundtripReport roundtrip_check(const Scheme& scheme, double grouping_tolerance);

}  // namespace casmat
