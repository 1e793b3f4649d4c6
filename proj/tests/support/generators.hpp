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

// Seeded generators for property tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "casmat/casmat.hpp"

namespace gen {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline casmat::MeasureSpace weights(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> w(n);
  for (auto& v : w) v = uniform(rng, 0.1, 2.0);
  return casmat::MeasureSpace::make_quadrature(std::move(w));
}

inline casmat::Kernel kernel(std::mt19937_64& rng, const casmat::MeasureSpace& space) {
  return casmat::Kernel::from_function(space, [&](std::size_t, std::size_t) {
    return casmat::Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  });
}

inline std::vector<casmat::Complex> vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<casmat::Complex> v(n);
  for (auto& c : v) c = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
  return v;
}

inline casmat::Permutation permutation(std::mt19937_64& rng, std::size_t m) {
  casmat::Permutation p(m);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Random generator set whose group is transitive: a random m-cycle
// conjugate plus one or two random permutations.
inline std::vector<casmat::Permutation> transitive_generators(std::mt19937_64& rng, std::size_t m) {
  const casmat::Permutation relabel = permutation(rng, m);
  casmat::Permutation cycle(m);
  for (std::size_t i = 0; i < m; ++i) cycle[relabel[i]] = relabel[(i + 1) % m];
  std::vector<casmat::Permutation> gens{cycle};
  const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  for (std::size_t e = 0; e < extra; ++e) gens.push_back(permutation(rng, m));
  return gens;
}

// Random surjective labeling with a dedicated diagonal label 0 and
// `labels - 1` off-diagonal labels, counting measure, symmetric involution
// declared (the relation need not honour it).
inline casmat::Scheme random_relabeling(std::mt19937_64& rng, std::size_t n, std::size_t labels) {
  std::vector<casmat::Label> rel(n * n, 0);
  std::vector<std::size_t> off;
  for (std::size_t p = 0; p < n * n; ++p) {
    if (p / n != p % n) off.push_back(p);
  }
  std::shuffle(off.begin(), off.end(), rng);
  for (std::size_t i = 0; i < off.size(); ++i) {
    rel[off[i]] = static_cast<casmat::Label>(i < labels - 1 ? i + 1
                                                            : std::uniform_int_distribution<std::size_t>(1, labels - 1)(rng));
  }
  return casmat::Scheme(casmat::MeasureSpace::counting(n), casmat::LabelSpace::symmetric(labels, 0), std::move(rel));
}

}  // namespace gen
