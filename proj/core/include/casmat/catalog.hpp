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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "casmat/measure.hpp"
#include "casmat/scheme.hpp"

namespace casmat {

inline constexpr std::size_t kMaxHammingNodes = 4096;
inline constexpr std::size_t kMaxGroupActionDegree = 4096;
inline constexpr std::uint64_t kDefaultSphereSeed = 20260915ULL;

// Translation scheme of Z_n: R(x, y) = (y - x) mod n.
Scheme cyclic_scheme(std::size_t n);

// Hamming scheme H(d, q): R(x, y) = number of differing coordinates.
Scheme hamming_scheme(std::size_t d, std::size_t q);

using Permutation = std::vector<std::size_t>;

// Orbitals of the group generated by `generators` acting diagonally on pairs.
// Orbit labels are numbered by their smallest pair, so the diagonal is 0.
// Throws Error if the action is not transitive.
Scheme group_action_scheme(std::span<const Permutation> generators);

std::vector<Permutation> symmetric_group_generators(std::size_t m);
std::vector<Permutation> cyclic_group_generators(std::size_t m);
std::vector<Permutation> dihedral_group_generators(std::size_t m);

// Uniform grid on the circle, weights 2π/n_nodes, coordinates = angle. The
// grid is cut into n_bins cells of n_nodes / n_bins consecutive nodes and a
// pair is labelled by the angular difference of its cells: the cell offset
// a = c(y) - c(x) mod n_bins (signed, involution a ↦ -a) or min(a, n_bins - a)
// (unsigned, symmetric). Label a carries the bin [(2a-1)π/B, (2a+1)π/B) of
// width 2π/B centred at its nominal angle. Label 0 is i_0; its fiber holds
// the n_nodes (n_nodes / n_bins - 1) off-diagonal same-cell pairs, which
// verify_cas accepts through diagonal_slack.
Scheme circle_scheme(std::size_t n_nodes, std::size_t n_bins, bool signed_bins);

// Triangular bump 1 - d/width on the circular distance d between a bin's
// centre and 0; 1 on the diagonal label.
std::vector<double> circle_hat_bump(const Scheme& circle, double width);

// `count` pseudorandom unit vectors from a fixed-seed mt19937_64, equal
// weights 4π/count.
MeasureSpace random_sphere_quadrature(std::size_t count, std::uint64_t seed = kDefaultSphereSeed);

// Binning of ⟨x, y⟩ over [-1, 1] into n_bins half-open bins (last closed).
// The diagonal gets label 0 and empty bins are dropped. Nodes must carry 3-d
// unit coordinates (1e-9).
Scheme sphere_scheme(const MeasureSpace& nodes, std::size_t n_bins);
Scheme sphere_scheme(std::size_t count, std::size_t n_bins, std::uint64_t seed = kDefaultSphereSeed);

// Delsarte-space scheme from a metric table: labels are bins of d². With
// n_bins == 0 each distinct d² value is its own label; otherwise (0, max]
// is split into n_bins half-open bins [a, b), last closed, where max defaults
// to the largest d². Label 0 is the diagonal; empty bins are dropped.
Scheme delsarte_scheme(std::span<const double> metric, std::vector<double> weights,
                       std::size_t n_bins, std::optional<double> max_squared = std::nullopt);

// Graph metric of the Hamming graph H(d, q).
std::vector<double> hamming_metric(std::size_t d, std::size_t q);
// Chordal metric |x - y| of 3-d node coordinates.
std::vector<double> chordal_metric(const MeasureSpace& nodes);

enum class RecipeKind { cyclic, hamming, group_action, circle, sphere, delsarte };

const char* to_string(RecipeKind kind);
std::optional<RecipeKind> parse_recipe_kind(std::string_view name);

// Kind plus key=value parameters:
//   cyclic        n
//   hamming       d q
//   group_action  group=symmetric|cyclic|dihedral m | gens=0,1,2;1,2,0
//   circle        nodes bins signed=0|1
//   sphere        nodes bins [seed]
//   delsarte      metric=hamming d q [bins] | metric=sphere nodes bins [seed]
struct SchemeRecipe {
  RecipeKind kind = RecipeKind::cyclic;
  std::map<std::string, std::string> params;

  std::string to_string() const;
  static SchemeRecipe parse(std::string_view text);
};

Scheme materialize(const SchemeRecipe& recipe);

}  // namespace casmat
