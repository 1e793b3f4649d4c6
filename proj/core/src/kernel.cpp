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

#include "casmat/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "casmat/error.hpp"
#include "casmat/parallel.hpp"

namespace casmat {

Kernel::Kernel(MeasureSpace space)
    : space_(std::move(space)), n_(space_.size()), entries_(n_ * n_, Complex{}) {}

Kernel::Kernel(MeasureSpace space, std::vector<Complex> entries)
    : space_(std::move(space)), n_(space_.size()), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw Error("kernel entries do not form a node_count square");
  for (const Complex& v : entries_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("kernel entry is not finite");
  }
}

Kernel Kernel::constant(const MeasureSpace& space, Complex value) {
  Kernel k(space);
  std::fill(k.entries_.begin(), k.entries_.end(), value);
  return k;
}

Kernel Kernel::diagonal(const MeasureSpace& space) {
  Kernel k(space);
  for (std::size_t x = 0; x < k.n_; ++x) k(x, x) = 1.0;
  return k;
}

Kernel Kernel::from_function(const MeasureSpace& space,
                             const std::function<Complex(std::size_t, std::size_t)>& fn) {
  Kernel k(space);
  for (std::size_t x = 0; x < k.n_; ++x) {
    for (std::size_t y = 0; y < k.n_; ++y) k(x, y) = fn(x, y);
  }
  return k;
}

Kernel& Kernel::operator+=(const Kernel& other) {
  require_same_space(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Kernel& Kernel::operator-=(const Kernel& other) {
  require_same_space(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Kernel& Kernel::operator*=(Complex scale) {
  for (Complex& v : entries_) v *= scale;
  return *this;
}

void require_same_space(const Kernel& a, const Kernel& b) {
  if (!same_space(a.space(), b.space())) throw Error("kernels live over different measure spaces");
}

void require_same_space(const Kernel& a, const MeasureSpace& space) {
  if (!same_space(a.space(), space)) throw Error("kernel does not live over the given measure space");
}

Kernel matmul(const Kernel& a, const Kernel& b) {
  require_same_space(a, b);
  const std::size_t n = a.size();
  const auto w = a.space().weights();
  Kernel out(a.space());
  const Complex* pa = a.entries().data();
  const Complex* pb = b.entries().data();
  Complex* po = out.entries().data();
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    std::vector<long double> re(n), im(n);
    for (std::size_t x = lo; x < hi; ++x) {
      std::fill(re.begin(), re.end(), 0.0L);
      std::fill(im.begin(), im.end(), 0.0L);
      for (std::size_t y = 0; y < n; ++y) {
        const double ar = pa[x * n + y].real();
        const double ai = pa[x * n + y].imag();
        if (ar == 0.0 && ai == 0.0) continue;
        const double wy = w[y];
        const Complex* brow = pb + y * n;
        for (std::size_t z = 0; z < n; ++z) {
          const double br = brow[z].real();
          const double bi = brow[z].imag();
          // w * (a * b) with the complex product written symmetrically in a
          // and b so that (A∘B)^⊤ and B^⊤∘A^⊤ round identically.
          re[z] += static_cast<long double>(wy * (ar * br - ai * bi));
          im[z] += static_cast<long double>(wy * (ar * bi + ai * br));
        }
      }
      for (std::size_t z = 0; z < n; ++z) {
        po[x * n + z] = Complex(static_cast<double>(re[z]), static_cast<double>(im[z]));
      }
    }
  });
  return out;
}

Kernel hadamard(const Kernel& a, const Kernel& b) {
  require_same_space(a, b);
  Kernel out(a.space());
  auto o = out.entries();
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = ea[i] * eb[i];
  return out;
}

Kernel transpose(const Kernel& a) {
  const std::size_t n = a.size();
  Kernel out(a.space());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) out(y, x) = a(x, y);
  }
  return out;
}

Kernel conjugate(const Kernel& a) {
  Kernel out(a.space());
  auto o = out.entries();
  const auto e = a.entries();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::conj(e[i]);
  return out;
}

double sup_norm(const Kernel& a) {
  double m = 0.0;
  for (const Complex& v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

double sup_distance(const Kernel& a, const Kernel& b) {
  require_same_space(a, b);
  const auto ea = a.entries();
  const auto eb = b.entries();
  double m = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

std::vector<Complex> row_integrals(const Kernel& a) {
  const std::size_t n = a.size();
  std::vector<Complex> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = integrate(a.row(x), a.space());
  return out;
}

bool IdentityReport::all_non_increasing() const {
  return std::all_of(non_increasing.begin(), non_increasing.end(), [](bool b) { return b; });
}

IdentityReport check_approximate_identity(std::span<const Kernel> family,
                                          std::span<const Kernel> probes,
                                          const MeasureSpace& space, double tolerance) {
  if (family.empty()) throw Error("approximate identity family is empty");
  for (const Kernel& k : family) require_same_space(k, space);
  for (const Kernel& k : probes) require_same_space(k, space);

  IdentityReport report;
  report.tolerance = tolerance;
  report.left.assign(family.size(), std::vector<double>(probes.size(), 0.0));
  report.right.assign(family.size(), std::vector<double>(probes.size(), 0.0));
  for (std::size_t m = 0; m < family.size(); ++m) {
    for (std::size_t p = 0; p < probes.size(); ++p) {
      report.left[m][p] = sup_distance(matmul(family[m], probes[p]), probes[p]);
      report.right[m][p] = sup_distance(matmul(probes[p], family[m]), probes[p]);
    }
  }
  report.non_increasing.assign(probes.size(), true);
  report.strictly_decreasing.assign(probes.size(), true);
  for (std::size_t p = 0; p < probes.size(); ++p) {
    for (std::size_t m = 1; m < family.size(); ++m) {
      const bool left_ok = report.left[m][p] <= report.left[m - 1][p];
      const bool right_ok = report.right[m][p] <= report.right[m - 1][p];
      if (!left_ok || !right_ok) report.non_increasing[p] = false;
      if (!(report.left[m][p] < report.left[m - 1][p]) || !(report.right[m][p] < report.right[m - 1][p])) {
        report.strictly_decreasing[p] = false;
      }
    }
    report.final_max_residual =
        std::max({report.final_max_residual, report.left.back()[p], report.right.back()[p]});
  }
  report.final_below_tolerance = report.final_max_residual <= tolerance;
  return report;
}

}  // namespace casmat
