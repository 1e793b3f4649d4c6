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

#include "casmat/bma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casmat/error.hpp"
#include "casmat/parallel.hpp"
#include "span_projector.hpp"

namespace casmat {

AlgebraBasis::AlgebraBasis(std::vector<Kernel> basis, double closure_tolerance)
    : basis_(std::move(basis)), closure_tolerance_(closure_tolerance) {
  if (basis_.empty()) throw Error("algebra basis is empty");
  for (const Kernel& k : basis_) require_same_space(k, basis_.front().space());
  projector_ = std::make_shared<SpanProjector>(basis_);
  partition_ = projector_->partition();

  if (partition_) {
    contains_j_ = std::none_of(partition_->begin(), partition_->end(), [](Label c) { return c == kNoLabel; });
  } else {
    contains_j_ = in_span(Kernel::ones(space()));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!in_span(conjugate(basis_[i]))) {
        throw Error("basis is not closed under conjugation at member " + std::to_string(i));
      }
      for (std::size_t j = i; j < basis_.size(); ++j) {
        if (!in_span(hadamard(basis_[i], basis_[j]))) {
          throw Error("basis is not closed under the Hadamard product at members " + std::to_string(i) + ", " +
                      std::to_string(j));
        }
      }
    }
  }
  if (!contains_j_) throw Error("J is not in the span: the algebra is not unital");
}

SpanProjection AlgebraBasis::project(const Kernel& target) const {
  require_same_space(target, space());
  SpanProjection out;
  out.coefficients = projector_->coefficients(target);
  const auto e = target.entries();
  double residual = 0.0;
  if (partition_) {
    for (std::size_t p = 0; p < e.size(); ++p) {
      const Label c = (*partition_)[p];
      const Complex fit = c == kNoLabel ? Complex{} : out.coefficients[c];
      residual = std::max(residual, std::abs(e[p] - fit));
    }
  } else {
    std::vector<Complex> fit(e.size(), Complex{});
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto b = basis_[i].entries();
      for (std::size_t p = 0; p < e.size(); ++p) fit[p] += out.coefficients[i] * b[p];
    }
    for (std::size_t p = 0; p < e.size(); ++p) residual = std::max(residual, std::abs(e[p] - fit[p]));
  }
  out.residual = residual;
  return out;
}

bool AlgebraBasis::in_span(const Kernel& target) const { return in_span(target, closure_tolerance_); }

bool AlgebraBasis::in_span(const Kernel& target, double tolerance) const {
  return project(target).residual <= tolerance * (1.0 + sup_norm(target));
}

namespace {

struct ProductAccumulator {
  std::size_t dim = 0;
  std::vector<long double> sum;  // [k][i][j]
  std::vector<double> lo, hi;
  std::vector<std::size_t> count;  // per k
  double commutator = 0.0;

  explicit ProductAccumulator(std::size_t m)
      : dim(m), sum(m * m * m, 0.0L), lo(m * m * m, INFINITY), hi(m * m * m, -INFINITY), count(m, 0) {}

  void merge(const ProductAccumulator& other) {
    for (std::size_t c = 0; c < sum.size(); ++c) {
      sum[c] += other.sum[c];
      lo[c] = std::min(lo[c], other.lo[c]);
      hi[c] = std::max(hi[c], other.hi[c]);
    }
    for (std::size_t k = 0; k < dim; ++k) count[k] += other.count[k];
    commutator = std::max(commutator, other.commutator);
  }
};

// All products A_i ∘ A_j of a partition basis at once: at each pair (x, z) the
// joint profile Σ_y w_y [P(x,y)=i][P(y,z)=j] is the (i, j) product entry.
StructureConstants indicator_structure_constants(const AlgebraBasis& algebra, const std::vector<Label>& cells) {
  const std::size_t m = algebra.size();
  const std::size_t n = algebra.space().size();
  const auto w = algebra.space().weights();
  std::vector<Label> columns(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) columns[y * n + x] = cells[x * n + y];
  }

  constexpr std::size_t kRowsPerBlock = 8;
  const std::size_t blocks = (n + kRowsPerBlock - 1) / kRowsPerBlock;
  const std::size_t wave = std::max<std::size_t>(1, thread_count());
  ProductAccumulator total(m);
  for (std::size_t first = 0; first < blocks; first += wave) {
    const std::size_t count = std::min(wave, blocks - first);
    std::vector<ProductAccumulator> accs(count, ProductAccumulator(m));
    parallel_for(0, count, [&](std::size_t lo_block, std::size_t hi_block) {
      std::vector<double> h(m * m);
      for (std::size_t b = lo_block; b < hi_block; ++b) {
        ProductAccumulator& acc = accs[b];
        const std::size_t x_end = std::min(n, (first + b + 1) * kRowsPerBlock);
        for (std::size_t x = (first + b) * kRowsPerBlock; x < x_end; ++x) {
          const Label* row = cells.data() + x * n;
          for (std::size_t z = 0; z < n; ++z) {
            std::fill(h.begin(), h.end(), 0.0);
            const Label* col = columns.data() + z * n;
            for (std::size_t y = 0; y < n; ++y) h[row[y] * m + col[y]] += w[y];
            const Label k = row[z];
            ++acc.count[k];
            const std::size_t base = k * m * m;
            for (std::size_t c = 0; c < m * m; ++c) {
              acc.sum[base + c] += h[c];
              acc.lo[base + c] = std::min(acc.lo[base + c], h[c]);
              acc.hi[base + c] = std::max(acc.hi[base + c], h[c]);
            }
            for (std::size_t i = 0; i < m; ++i) {
              for (std::size_t j = i + 1; j < m; ++j) {
                acc.commutator = std::max(acc.commutator, std::fabs(h[i * m + j] - h[j * m + i]));
              }
            }
          }
        }
      }
    });
    for (const auto& acc : accs) total.merge(acc);
  }

  StructureConstants sc;
  sc.dim = m;
  sc.tensor.assign(m * m * m, Complex{});
  sc.commutator = total.commutator;
  for (std::size_t k = 0; k < m; ++k) {
    if (total.count[k] == 0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t c = k * m * m + i * m + j;
        const double mean = static_cast<double>(total.sum[c] / static_cast<long double>(total.count[k]));
        sc.tensor[(i * m + j) * m + k] = mean;
        sc.residual = std::max({sc.residual, total.hi[c] - mean, mean - total.lo[c]});
      }
    }
  }
  return sc;
}

StructureConstants dense_structure_constants(const AlgebraBasis& algebra) {
  const std::size_t m = algebra.size();
  StructureConstants sc;
  sc.dim = m;
  sc.tensor.assign(m * m * m, Complex{});
  std::vector<Kernel> products;
  products.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) products.push_back(matmul(algebra.member(i), algebra.member(j)));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto proj = algebra.project(products[i * m + j]);
      for (std::size_t k = 0; k < m; ++k) sc.tensor[(i * m + j) * m + k] = proj.coefficients[k];
      sc.residual = std::max(sc.residual, proj.residual);
      if (j > i) sc.commutator = std::max(sc.commutator, sup_distance(products[i * m + j], products[j * m + i]));
    }
  }
  return sc;
}

}  // namespace

StructureConstants structure_constants(const AlgebraBasis& algebra) {
  if (const auto& cells = algebra.indicator_partition()) return indicator_structure_constants(algebra, *cells);
  return dense_structure_constants(algebra);
}

BmaReport verify_bma(const AlgebraBasis& algebra, std::span<const Kernel> identity_family,
                     std::span<const Kernel> probes, double tolerance) {
  const MeasureSpace& space = algebra.space();
  const double span_tol = std::max(tolerance, algebra.closure_tolerance());
  for (std::size_t i = 0; i < identity_family.size(); ++i) {
    require_same_space(identity_family[i], space);
    if (!algebra.in_span(identity_family[i], span_tol)) {
      throw Error("approximate identity member " + std::to_string(i) + " lies outside the algebra");
    }
  }

  BmaReport report;
  report.tolerance = tolerance;
  report.probe_policy = "caller probes: " + std::to_string(probes.size()) + " kernels";
  report.bma1a = check_approximate_identity(identity_family, probes, space, tolerance);

  for (const Kernel& a : algebra.members()) {
    const auto r = row_integrals(a);
    for (const Complex& v : r) report.bma1b_deviation = std::max(report.bma1b_deviation, std::abs(v - r.front()));
  }

  const auto sc = structure_constants(algebra);
  report.bma2_residual = sc.residual;
  report.commutative_residual = sc.commutator;
  report.commutative = sc.commutator <= tolerance;

  for (const Kernel& a : algebra.members()) {
    const Kernel t = transpose(a);
    report.bma3_residual = std::max(report.bma3_residual, algebra.project(t).residual);
    report.symmetric_residual = std::max(report.symmetric_residual, sup_distance(a, t));
  }
  report.bma3_ok = report.bma3_residual <= tolerance;
  report.symmetric_ok = report.symmetric_residual <= tolerance;
  return report;
}

Kernel build_approximate_identity(const Scheme& scheme, const LabelSet& neighborhood,
                                  std::span<const double> bump) {
  const std::size_t l = scheme.label_count();
  const auto i0 = scheme.labels().identity();
  if (!i0) throw Error("scheme has no identity label");
  if (bump.size() != l) throw Error("bump has " + std::to_string(bump.size()) + " entries for " + std::to_string(l) + " labels");
  if (neighborhood.universe() != l || !neighborhood.contains(*i0)) {
    throw Error("neighborhood must be a label set containing the identity label");
  }
  if (bump[*i0] != 1.0) throw Error("bump must equal 1 at the identity label");
  for (std::size_t i = 0; i < l; ++i) {
    if (!std::isfinite(bump[i]) || bump[i] < 0.0) throw Error("bump weight " + std::to_string(i) + " is negative or not finite");
    if (bump[i] > 0.0 && !neighborhood.contains(static_cast<Label>(i))) {
      throw Error("bump is nonzero at label " + std::to_string(i) + " outside the neighborhood");
    }
  }

  const MeasureSpace& space = scheme.space();
  const std::size_t n = scheme.node_count();
  Kernel pulled(space);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) pulled(x, y) = bump[scheme(x, y)];
  }
  const double normalizer = product_integrate(pulled.entries(), space).real();
  if (!(normalizer > 0.0)) throw Error("approximate identity normalizer vanishes");
  const double scale = space.total_mass() / (2.0 * normalizer);

  Kernel out(space);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) out(x, y) = scale * (pulled(x, y).real() + pulled(y, x).real());
  }
  const auto rows = row_integrals(out);
  for (std::size_t x = 0; x < n; ++x) {
    if (std::abs(rows[x] - 1.0) > 1e-10) {
      throw Error("approximate identity row " + std::to_string(x) + " integrates to " +
                  std::to_string(rows[x].real()) + " instead of 1");
    }
  }
  return out;
}

LabelSet bump_support(std::span<const double> bump) {
  LabelSet s(bump.size());
  for (std::size_t i = 0; i < bump.size(); ++i) {
    if (bump[i] > 0.0) s.insert(static_cast<Label>(i));
  }
  return s;
}

}  // namespace casmat
