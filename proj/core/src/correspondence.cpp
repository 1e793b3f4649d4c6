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

#include "casmat/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace casmat {

const char* to_string(CorrespondenceError::Kind kind) {
  switch (kind) {
    case CorrespondenceError::Kind::diagonal_contaminated: return "diagonal_contaminated";
    case CorrespondenceError::Kind::diagonal_split: return "diagonal_split";
    case CorrespondenceError::Kind::involution_ill_defined: return "involution_ill_defined";
  }
  return "unknown";
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Relabels arbitrary group ids so that cells are numbered in order of their
// first (lexicographically smallest, row-major) pair.
CharacterPartition finish_partition(const AlgebraBasis& algebra, const std::vector<std::size_t>& group) {
  const std::size_t n = algebra.space().size();
  CharacterPartition cp;
  cp.node_count = n;
  cp.cell_of_pair.assign(n * n, kNoLabel);
  std::vector<Label> renumber(group.size(), kNoLabel);
  for (std::size_t p = 0; p < n * n; ++p) {
    Label& id = renumber[group[p]];
    if (id == kNoLabel) {
      id = static_cast<Label>(cp.cell_count++);
      cp.first_pair.emplace_back(p / n, p % n);
      cp.cell_sizes.push_back(0);
      std::vector<Complex> values;
      values.reserve(algebra.size());
      for (const Kernel& k : algebra.members()) values.push_back(k.entries()[p]);
      cp.representative_values.push_back(std::move(values));
    }
    cp.cell_of_pair[p] = id;
    ++cp.cell_sizes[id];
  }
  return cp;
}

}  // namespace

CharacterPartition character_partition(const AlgebraBasis& algebra, double grouping_tolerance) {
  const std::size_t n = algebra.space().size();
  const std::size_t pairs = n * n;
  std::vector<std::size_t> group(pairs);

  if (const auto& cells = algebra.indicator_partition()) {
    // Each pair lies in exactly one indicator support, so the joint level set
    // is the member index itself.
    for (std::size_t p = 0; p < pairs; ++p) group[p] = (*cells)[p];
    return finish_partition(algebra, group);
  }

  const std::size_t m = algebra.size();
  // Sort along a fixed projection of the evaluation vector and only compare
  // pairs whose projections are within reach of each other.
  std::vector<double> coeff_re(m), coeff_im(m);
  double reach = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    coeff_re[i] = 1.0 / (1.0 + 0.618 * static_cast<double>(i));
    coeff_im[i] = 0.5 / (1.0 + 0.414 * static_cast<double>(i));
    reach += coeff_re[i] + coeff_im[i];
  }
  std::vector<double> key(pairs, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto e = algebra.member(i).entries();
    for (std::size_t p = 0; p < pairs; ++p) key[p] += coeff_re[i] * e[p].real() + coeff_im[i] * e[p].imag();
  }
  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

  auto close = [&](std::size_t a, std::size_t b) {
    for (const Kernel& k : algebra.members()) {
      if (std::abs(k.entries()[a] - k.entries()[b]) > grouping_tolerance) return false;
    }
    return true;
  };
  DisjointSets sets(pairs);
  const double window = grouping_tolerance * reach;
  for (std::size_t s = 0; s < pairs; ++s) {
    for (std::size_t t = s + 1; t < pairs && key[order[t]] - key[order[s]] <= window; ++t) {
      if (close(order[s], order[t])) sets.unite(order[s], order[t]);
    }
  }
  for (std::size_t p = 0; p < pairs; ++p) group[p] = sets.find(p);
  return finish_partition(algebra, group);
}

AlgebraBasis algebra_of_scheme(const Scheme& scheme) {
  const std::size_t n = scheme.node_count();
  std::vector<Kernel> basis(scheme.label_count(), Kernel(scheme.space()));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) basis[scheme(x, y)](x, y) = 1.0;
  }
  return AlgebraBasis(std::move(basis));
}

Scheme scheme_of_algebra(const AlgebraBasis& algebra, double grouping_tolerance) {
  const auto cp = character_partition(algebra, grouping_tolerance);
  const std::size_t n = cp.node_count;
  const Label diagonal = cp.cell_of_pair[0];
  for (std::size_t x = 0; x < n; ++x) {
    if (cp.cell_of_pair[x * n + x] != diagonal) {
      throw CorrespondenceError(CorrespondenceError::Kind::diagonal_split, {x, x},
                                "diagonal pair (" + std::to_string(x) + "," + std::to_string(x) +
                                    ") is separated from (0,0)");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && cp.cell_of_pair[x * n + y] == diagonal) {
        throw CorrespondenceError(CorrespondenceError::Kind::diagonal_contaminated, {x, y},
                                  "off-diagonal pair (" + std::to_string(x) + "," + std::to_string(y) +
                                      ") is not separated from the diagonal");
      }
    }
  }

  std::vector<Label> involution(cp.cell_count, kNoLabel);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Label c = cp.cell_of_pair[x * n + y];
      const Label t = cp.cell_of_pair[y * n + x];
      if (involution[c] == kNoLabel) involution[c] = t;
      if (involution[c] != t) {
        throw CorrespondenceError(CorrespondenceError::Kind::involution_ill_defined, {x, y},
                                  "transpose splits cell " + std::to_string(c) + " at pair (" + std::to_string(x) +
                                      "," + std::to_string(y) + ")");
      }
    }
  }
  for (std::size_t c = 0; c < cp.cell_count; ++c) {
    if (involution[involution[c]] != c) {
      throw CorrespondenceError(CorrespondenceError::Kind::involution_ill_defined, cp.first_pair[c],
                                "transpose-induced map is not an involution at cell " + std::to_string(c));
    }
  }
  return Scheme(algebra.space(), LabelSpace(std::move(involution), diagonal), cp.cell_of_pair);
}

RoundtripReport roundtrip_check(const Scheme& scheme, double grouping_tolerance) {
  RoundtripReport report;
  report.original_labels = scheme.label_count();
  const AlgebraBasis algebra = algebra_of_scheme(scheme);
  std::optional<Scheme> recovered;
  try {
    recovered = scheme_of_algebra(algebra, grouping_tolerance);
  } catch (const CorrespondenceError& e) {
    report.failure = std::string(to_string(e.kind())) + ": " + e.what();
    report.mismatch = e.witness();
    return report;
  }
  const Scheme& r = *recovered;
  const std::size_t n = scheme.node_count();
  report.recovered_labels = r.label_count();
  report.bijection.assign(scheme.label_count(), kNoLabel);
  std::vector<Label> inverse(r.label_count(), kNoLabel);
  report.partition_match = true;
  for (std::size_t x = 0; x < n && report.partition_match; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Label a = scheme(x, y);
      const Label b = r(x, y);
      if (report.bijection[a] == kNoLabel) report.bijection[a] = b;
      if (inverse[b] == kNoLabel) inverse[b] = a;
      if (report.bijection[a] != b || inverse[b] != a) {
        report.partition_match = false;
        report.mismatch = NodePair{x, y};
        report.failure = "pair partitions differ";
        break;
      }
    }
  }
  report.cell_sizes.assign(r.label_count(), 0);
  for (Label v : r.relation()) ++report.cell_sizes[v];
  if (!report.partition_match) return report;

  report.involution_match = true;
  for (std::size_t a = 0; a < scheme.label_count(); ++a) {
    if (report.bijection[scheme.labels().transpose(static_cast<Label>(a))] !=
        r.labels().transpose(report.bijection[a])) {
      report.involution_match = false;
    }
  }
  const auto i0 = scheme.labels().identity();
  report.identity_match = i0 && r.labels().identity() && report.bijection[*i0] == *r.labels().identity();

  const AlgebraBasis back = algebra_of_scheme(r);
  report.algebra_match = back.size() == algebra.size();
  for (std::size_t a = 0; a < algebra.size() && report.algebra_match; ++a) {
    const auto lhs = algebra.member(a).entries();
    const auto rhs = back.member(report.bijection[a]).entries();
    report.algebra_match = std::equal(lhs.begin(), lhs.end(), rhs.begin());
  }
  return report;
}

}  // namespace casmat
