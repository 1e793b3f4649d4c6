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

#include "span_projector.hpp"

#include <Eigen/Dense>
#include <string>

#include "casmat/error.hpp"

namespace casmat {

struct SpanProjector::Dense {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr;
};

namespace {

std::optional<std::vector<Label>> indicator_partition(std::span<const Kernel> basis) {
  const std::size_t pairs = basis.front().entries().size();
  std::vector<Label> cell(pairs, kNoLabel);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto e = basis[i].entries();
    bool nonempty = false;
    for (std::size_t p = 0; p < pairs; ++p) {
      const Complex v = e[p];
      if (v == Complex(0.0, 0.0)) continue;
      if (v != Complex(1.0, 0.0) || cell[p] != kNoLabel) return std::nullopt;
      cell[p] = static_cast<Label>(i);
      nonempty = true;
    }
    if (!nonempty) return std::nullopt;
  }
  return cell;
}

}  // namespace

SpanProjector::SpanProjector(std::span<const Kernel> basis) : members_(basis.size()) {
  if (basis.empty()) throw Error("basis is empty");
  partition_ = indicator_partition(basis);
  if (partition_) {
    cell_sizes_.assign(members_, 0);
    for (Label c : *partition_) {
      if (c != kNoLabel) ++cell_sizes_[c];
    }
    return;
  }
  const std::size_t pairs = basis.front().entries().size();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(pairs), static_cast<Eigen::Index>(members_));
  for (std::size_t i = 0; i < members_; ++i) {
    const auto e = basis[i].entries();
    for (std::size_t p = 0; p < pairs; ++p) m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i)) = e[p];
  }
  dense_ = std::make_unique<Dense>();
  dense_->qr.setThreshold(1e-10);
  dense_->qr.compute(m);
  const auto rank = static_cast<std::size_t>(dense_->qr.rank());
  if (rank < members_) {
    const auto& perm = dense_->qr.colsPermutation().indices();
    std::string names;
    for (std::size_t r = rank; r < members_; ++r) {
      if (!names.empty()) names += ", ";
      names += std::to_string(perm(static_cast<Eigen::Index>(r)));
    }
    throw Error("basis is rank deficient (rank " + std::to_string(rank) + " of " + std::to_string(members_) +
                "); dependent members: " + names);
  }
}

SpanProjector::~SpanProjector() = default;

std::vector<Complex> SpanProjector::coefficients(const Kernel& target) const {
  const auto e = target.entries();
  std::vector<Complex> coef(members_, Complex{});
  if (partition_) {
    std::vector<long double> re(members_, 0.0L), im(members_, 0.0L);
    for (std::size_t p = 0; p < e.size(); ++p) {
      const Label c = (*partition_)[p];
      if (c == kNoLabel) continue;
      re[c] += e[p].real();
      im[c] += e[p].imag();
    }
    for (std::size_t i = 0; i < members_; ++i) {
      const auto size = static_cast<long double>(cell_sizes_[i]);
      coef[i] = Complex(static_cast<double>(re[i] / size), static_cast<double>(im[i] / size));
    }
    return coef;
  }
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(e.size()));
  for (std::size_t p = 0; p < e.size(); ++p) rhs(static_cast<Eigen::Index>(p)) = e[p];
  const Eigen::VectorXcd sol = dense_->qr.solve(rhs);
  for (std::size_t i = 0; i < members_; ++i) coef[i] = sol(static_cast<Eigen::Index>(i));
  return coef;
}

}  // namespace casmat
