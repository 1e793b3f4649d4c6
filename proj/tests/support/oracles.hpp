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

// Brute-force reference computations. They work on plain tables and share no
// code paths with the library beyond the standard library.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Table = std::vector<std::uint32_t>;  // row-major n x n relation
using Cx = std::complex<double>;

Table cyclic(std::size_t n);
// Hamming distance computed from explicit coordinate vectors.
Table hamming(std::size_t d, std::size_t q);
// Shortest-path distances of a graph given by adjacency lists (BFS).
Table graph_distance(const std::vector<std::vector<std::size_t>>& adjacency);
// Adjacency lists of the d-cube, neighbours by single bit flips.
std::vector<std::vector<std::size_t>> cube_graph(std::size_t d);

// Orbitals of the group generated by `gens`: the group is enumerated
// element by element and pairs are merged by applying every element.
// Labels are numbered in order of first appearance (row-major).
Table orbitals(const std::vector<std::vector<std::size_t>>& gens);

struct Intersection {
  std::size_t labels = 0;
  // p[(i * L + j) * L + k], value at the first pair of fiber k.
  std::vector<double> p;
  // max over (i, j, k) of (max - min) over fiber k.
  double max_deviation = 0.0;

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return p[(i * labels + j) * labels + k];
  }
};

// Triple loop over (x, z, y) for singleton label sets.
Intersection intersection_numbers(const Table& rel, const std::vector<double>& w, std::size_t labels);

std::vector<Cx> matmul(const std::vector<Cx>& a, const std::vector<Cx>& b, const std::vector<double>& w);

// Same pair partition up to renaming; fills bijection[label of a] = label of b.
bool same_partition(const Table& a, const Table& b, std::vector<std::uint32_t>* bijection = nullptr);

// Monte Carlo estimate of the area of the cap {u : u_z >= t} on S^2.
double cap_area_monte_carlo(double t, std::size_t samples, std::uint64_t seed);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace oracle
